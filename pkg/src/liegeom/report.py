"""Report documents: plain dicts rendered to text or JSON.

Every CLI subcommand builds one document here.  Documents contain only
strings, booleans, integers, lists, and dicts, with all exact scalars
already rendered through the canonical printer, so `render_json` output is
byte-identical across runs and `render_text` is a straight traversal.
Numeric evaluations format floats with %.17g, which round-trips doubles.

The full report concatenates every analysis section for one algebra and
carries the catalog's annotation notes when the algebra came from the
catalog.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import MetricLieAlgebra, vector_str
from .catalog import ReferenceNote
from .geometry import (
    GeodesicClassification,
    HarmonicityReport,
    KillingVerdict,
    SolitonVerdict,
    WalkerVerdict,
    component_str,
    einstein_check,
    energy_report,
    geodesic_classify,
    harmonicity_classify,
    killing_solve,
    ledger_check,
    ricci_soliton_solve,
    walker_check,
)
from .numeric import NumericModel, evaluate_numeric
from .scalars import fraction_str, scalar_str

SCHEMA = "1"


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return fraction_str(x)
    return str(x)


def _matrix(rows) -> list[list[str]]:
    return [[_fmt(x) for x in row] for row in rows]


def _float_str(x: float) -> str:
    return f"{x:.17g}"


def _vectors(vectors) -> list[str]:
    return [vector_str(v) for v in vectors]


# ---------------------------------------------------------------------------
# section builders


def algebra_section(alg: MetricLieAlgebra) -> dict:
    brackets = []
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            coords = [alg.brackets[i][j][k] for k in range(alg.dim)]
            if any(not c.is_zero for c in coords):
                brackets.append(f"[X{i+1},X{j+1}] = {vector_str(coords)}")
    violations = alg.validate()
    return {
        "name": alg.name,
        "dim": alg.dim,
        "brackets": brackets,
        "metric": _matrix(alg.metric),
        "metric_det": scalar_str(alg.metric_det),
        "singular_eps": [fraction_str(x) for x in alg.singular_parameters()],
        "validation": "ok" if not violations else [str(v) for v in violations],
    }


def connection_section(alg: MetricLieAlgebra) -> dict:
    K = alg.nabla_basis
    derivs = {}
    for i in range(alg.dim):
        for j in range(alg.dim):
            if any(not c.is_zero for c in K[i][j]):
                derivs[f"nabla_X{i+1} X{j+1}"] = vector_str(K[i][j])
    ops = {
        f"Lambda_{i+1}": _matrix(alg.connection_operators[i])
        for i in range(alg.dim)
    }
    return {"covariant_derivatives": derivs, "operators": ops}


def curvature_section(alg: MetricLieAlgebra) -> dict:
    n = alg.dim
    ops = {}
    for i in range(n):
        for j in range(i + 1, n):
            ops[f"R(X{i+1},X{j+1})"] = _matrix(alg.curvature_operator(i, j))
    comps = {}
    R4 = alg.curvature_tensor
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                for l in range(k + 1, n):
                    v = R4[i][j][k][l]
                    if not v.is_zero:
                        comps[f"R(X{i+1},X{j+1},X{k+1},X{l+1})"] = scalar_str(v)
    return {"operators": ops, "components": comps}


def ricci_section(alg: MetricLieAlgebra) -> dict:
    ein = einstein_check(alg)
    return {
        "matrix": _matrix(alg.ricci),
        "scalar_curvature": scalar_str(alg.scalar_curvature),
        "einstein": {
            "generic": ein.generic,
            "lam": scalar_str(ein.lam) if ein.lam is not None else None,
            "exceptional": [
                {"eps": fraction_str(e), "lam": fraction_str(l)}
                for e, l in ein.exceptional
            ],
        },
    }


def soliton_section(alg: MetricLieAlgebra, convention: str = "paper") -> dict:
    v: SolitonVerdict = ricci_soliton_solve(alg, convention)
    if v.generic_soliton:
        coords, lam = v.witness
        generic = {
            "exists": True,
            "X": vector_str(coords),
            "lam": scalar_str(lam),
            "type": v.soliton_type,
            "free_dimension": v.solution.generic.kernel_dim,
        }
    else:
        generic = {"exists": False, "statement": "no invariant Ricci soliton"}
    return {
        "convention": convention,
        "equation": "Lie_X g = lam*g - ric"
        if convention == "paper"
        else "Lie_X g = 2*(lam*g - ric)",
        "equations": [str(e) for e in v.equations],
        "generic": generic,
        "exceptional": [
            {
                "eps": fraction_str(b.eps),
                "kind": b.kind,
                "lam": fraction_str(b.lam) if b.lam is not None else None,
                "X": vector_str(b.witness) if b.witness is not None else None,
                "free_dimension": b.kernel_dim,
                "description": b.description,
            }
            for b in v.exceptional
        ],
    }


def killing_section(alg: MetricLieAlgebra) -> dict:
    v: KillingVerdict = killing_solve(alg)
    return {
        "generic_dimension": len(v.basis),
        "basis": _vectors(v.basis) or ["0"],
        "exceptional": [
            {
                "eps": fraction_str(b.eps),
                "dimension": b.result.kernel_dim if b.result else 0,
                "basis": _vectors(b.result.kernel) if b.result else [],
            }
            for b in v.exceptional
        ],
    }


def geodesic_section(alg: MetricLieAlgebra) -> dict:
    g: GeodesicClassification = geodesic_classify(alg)
    return {
        "coefficients": list(g.names),
        "equations": [str(e) for e in g.equations] or ["0"],
        "solution": g.describe_components(),
        "exceptional": [
            {
                "eps": fraction_str(b.eps),
                "solution": [component_str(c, g.names) for c in b.components],
            }
            for b in g.exceptional
        ],
    }


def walker_section(alg: MetricLieAlgebra) -> dict:
    w: WalkerVerdict = walker_check(alg)
    return {
        "admits_null_parallel_line_field": w.is_walker,
        "witness": vector_str(w.witness) if w.witness is not None else None,
        "exceptional": [
            {
                "eps": fraction_str(eps),
                "admits": admits,
                "witness": vector_str([Fraction(x) for x in coords]) if coords else None,
            }
            for eps, admits, coords in w.exceptional
        ],
        "numeric_cross_checks": [
            {"eps": fraction_str(eps), "agrees": ok} for eps, ok in w.numeric_checks
        ],
    }


def ledger_section(alg: MetricLieAlgebra) -> dict:
    rep = ledger_check(alg)
    out = {
        "degree3_holds": rep.l3_holds,
        "degree5_holds": rep.l5_holds,
    }
    if not rep.l3_holds:
        out["degree3_violations"] = [
            f"(X{i},X{j},X{k})" for i, j, k in rep.l3_violations
        ]
    if not rep.l5_holds:
        out["degree5_nonzero_terms"] = len(rep.l5_poly.terms)
        out["degree5_polynomial"] = str(rep.l5_poly)
    return out


def harmonic_section(alg: MetricLieAlgebra) -> dict:
    h: HarmonicityReport = harmonicity_classify(alg)
    fams = []
    for f in h.families:
        fams.append({
            "eigenvalue": scalar_str(f.eigenvalue),
            "multiplicity": f.multiplicity,
            "basis": _vectors(f.basis),
            "harmonic_section": f.section_harmonic,
            "curvature_trace_vanishes": f.trace_vanishes,
            "harmonic_map": f.map_harmonic,
            "harmonic_at_eps": [fraction_str(x) for x in f.harmonic_eps],
        })
    return {
        "laplacian": _matrix(h.laplacian),
        "critical_families": fams,
        "unresolved_factor_degree": max(h.decomposition.residual.degree, 0),
        "unresolved_factor": (
            str(h.decomposition.residual)
            if h.decomposition.residual.degree > 0
            else None
        ),
        "harmonic_sections": _vectors(h.section_kernel) or ["none"],
        "parallel_fields": _vectors(h.parallel_basis) or ["none"],
    }


def energy_section(alg: MetricLieAlgebra) -> dict:
    rep = energy_report(alg)
    fams = []
    for f in rep.families:
        fams.append({
            "eigenvalue": scalar_str(f.eigenvalue),
            "basis": _vectors(f.basis),
            "constant_term": fraction_str(f.constant),
            "rho2_coefficient": (
                scalar_str(f.rho2_coeff) if f.rho2_coeff is not None else None
            ),
            "energy": (
                f"{fraction_str(f.constant)} + ({scalar_str(f.rho2_coeff)})*rho^2"
                if f.rho2_coeff is not None
                else "not proportional to squared length"
            ),
        })
    return {
        "density_generic": str(rep.density_generic),
        "families": fams,
    }


def eval_section(alg: MetricLieAlgebra, eps0: Fraction) -> dict:
    m: NumericModel = evaluate_numeric(alg, eps0)
    doc = {
        "eps": fraction_str(m.eps),
        "signature": m.signature,
        "frame_signs": list(m.signs),
        "frame": [[_float_str(x) for x in row] for row in m.frame],
        "ricci": [[_float_str(x) for x in row] for row in m.ricci],
        "ricci_frame": [[_float_str(x) for x in row] for row in m.frame_ricci],
        "scalar_curvature": _float_str(m.scalar_curvature),
        "laplacian_eigenvalues": [
            _float_str(x) if isinstance(x, float) else str(x)
            for x in m.laplacian_eigenvalues
        ],
    }
    return doc


# ---------------------------------------------------------------------------
# whole documents


def _annotations(notes: tuple[ReferenceNote, ...]) -> list[dict]:
    return [
        {"id": n.note_id, "subject": n.subject, "text": n.text} for n in notes
    ]


def full_report(
    alg: MetricLieAlgebra,
    notes: tuple[ReferenceNote, ...] = (),
    soliton_convention: str = "paper",
) -> dict:
    return {
        "schema": SCHEMA,
        "report": "full",
        "algebra": algebra_section(alg),
        "annotations": _annotations(notes),
        "connection": connection_section(alg),
        "curvature": curvature_section(alg),
        "ricci": ricci_section(alg),
        "soliton": soliton_section(alg, soliton_convention),
        "killing": killing_section(alg),
        "geodesic": geodesic_section(alg),
        "walker": walker_section(alg),
        "ledger": ledger_section(alg),
        "harmonicity": harmonic_section(alg),
        "energy": energy_section(alg),
    }


def single_report(kind: str, alg: MetricLieAlgebra, **kwargs) -> dict:
    builders = {
        "soliton": lambda: soliton_section(alg, kwargs.get("convention", "paper")),
        "killing": lambda: killing_section(alg),
        "geodesic": lambda: geodesic_section(alg),
        "walker": lambda: walker_section(alg),
        "ledger": lambda: ledger_section(alg),
        "harmonic": lambda: harmonic_section(alg),
        "energy": lambda: energy_section(alg),
    }
    return {
        "schema": SCHEMA,
        "report": kind,
        "algebra": {"name": alg.name, "dim": alg.dim},
        kind: builders[kind](),
    }


def validate_report(alg: MetricLieAlgebra) -> dict:
    violations = alg.validate()
    return {
        "schema": SCHEMA,
        "report": "validate",
        "algebra": {"name": alg.name, "dim": alg.dim},
        "ok": not violations,
        "violations": [str(v) for v in violations],
    }


def eval_report(alg: MetricLieAlgebra, eps0: Fraction) -> dict:
    return {
        "schema": SCHEMA,
        "report": "eval",
        "algebra": {"name": alg.name, "dim": alg.dim},
        "eval": eval_section(alg, eps0),
    }


# ---------------------------------------------------------------------------
# renderers


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _render_value(key: str, val, indent: int, lines: list[str]) -> None:
    pad = "  " * indent
    if isinstance(val, dict):
        lines.append(f"{pad}{key}:")
        for k, v in val.items():
            _render_value(k, v, indent + 1, lines)
    elif isinstance(val, list):
        if val and all(isinstance(x, list) for x in val):
            lines.append(f"{pad}{key}:")
            for row in val:
                lines.append(f"{pad}  [" + ", ".join(str(x) for x in row) + "]")
        elif val and all(isinstance(x, dict) for x in val):
            lines.append(f"{pad}{key}:")
            for item in val:
                lines.append(f"{pad}  -")
                for k, v in item.items():
                    _render_value(k, v, indent + 2, lines)
        elif not val:
            lines.append(f"{pad}{key}: (none)")
        else:
            lines.append(f"{pad}{key}: " + ", ".join(str(x) for x in val))
    elif isinstance(val, bool):
        lines.append(f"{pad}{key}: {'yes' if val else 'no'}")
    elif val is None:
        lines.append(f"{pad}{key}: -")
    else:
        lines.append(f"{pad}{key}: {val}")


def render_text(doc: dict) -> str:
    lines: list[str] = []
    for key, val in doc.items():
        if key == "schema":
            continue
        if isinstance(val, dict):
            lines.append(f"== {key} ==")
            for k, v in val.items():
                _render_value(k, v, 1, lines)
            lines.append("")
        elif isinstance(val, list):
            lines.append(f"== {key} ==")
            if not val:
                lines.append("  (none)")
            elif all(isinstance(x, dict) for x in val):
                for item in val:
                    lines.append("  -")
                    for k, v in item.items():
                        _render_value(k, v, 2, lines)
            else:
                for x in val:
                    lines.append(f"  {x}")
            lines.append("")
        elif isinstance(val, bool):
            lines.append(f"{key}: {'yes' if val else 'no'}")
        else:
            lines.append(f"{key}: {val}")
    return "\n".join(lines).rstrip("\n") + "\n"
