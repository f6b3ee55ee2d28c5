"""Linear and spectral solvers over the parametric scalar field.

Two workhorses live here.  `solve_parametric` runs exact Gaussian
elimination on a linear system whose coefficients are rational functions
of the parameter, records every quantity whose vanishing could change the
answer (pivots, cleared denominators, consistency residues), re-solves the
system at each rational root of those quantities, and reports the values
where the outcome genuinely differs from the generic one.  That candidate
set is provably complete for rational exceptional values: away from the
recorded roots the specialized elimination performs the identical pivot
sequence, so rank, consistency, and kernel all specialize.

`eigen_analyze` finds the eigenvalues of an operator that are themselves
rational functions of the parameter.  The characteristic polynomial is
computed exactly; eigenvalue candidates are reconstructed from exact
eigenvalues at prime sample points by Cauchy rational interpolation, then
certified (or discarded) by exact polynomial division.  Whatever cannot be
certified is returned untouched as a residual factor, with a linear or
square-discriminant quadratic residual resolved exactly as a last step.
No floating point is involved anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .scalars import (
    MultiPoly,
    Poly,
    PoleAtEvaluationPoint,
    RatFunc,
    ONE,
    ZERO,
    poly_rational_roots,
    ratfunc,
    scalar_is_zero,
)


class NotLinearError(ValueError):
    """An equation handed to the linear-system builder has degree > 1."""


class InterpolationDegreeExceeded(ArithmeticError):
    """The spectral data needs higher degree than the interpolation bound.

    Raised when a characteristic polynomial coefficient already has
    numerator or denominator degree above the configured bound, so no
    eigenvalue reconstruction at that bound could be trusted.
    """


# ---------------------------------------------------------------------------
# exact reduced-row-echelon solving over any exact field


@dataclass
class SolveResult:
    """Outcome of exact elimination on A x = b.

    status is 'unique', 'underdetermined', or 'inconsistent'; `particular`
    (free variables set to zero) is None exactly when inconsistent; the
    kernel basis is in reduced echelon form, one vector per free column,
    ordered by free column index.
    """

    status: str
    rank: int
    pivot_cols: tuple[int, ...]
    particular: list | None
    kernel: list[list]

    @property
    def kernel_dim(self) -> int:
        return len(self.kernel)


def rref_solve(rows: Sequence[Sequence], rhs: Sequence, record: Callable | None = None) -> SolveResult:
    """Gauss-Jordan elimination over an exact field (Fraction or RatFunc).

    `record(kind, value)` is invoked with ('pivot', v) for each pivot used
    and ('consistency', v) for the right-hand side of each identically-zero
    row, letting a parametric caller collect the scalars whose vanishing
    could alter the outcome.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    A = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivot_cols: list[int] = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if not scalar_is_zero(A[i][c])), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        pivot = A[r][c]
        if record is not None:
            record("pivot", pivot)
        A[r] = [x / pivot for x in A[r]]
        for i in range(m):
            if i != r and not scalar_is_zero(A[i][c]):
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivot_cols.append(c)
        r += 1
        if r == m:
            break
    consistent = True
    for i in range(r, m):
        tail = A[i][n]
        if record is not None:
            record("consistency", tail)
        if not scalar_is_zero(tail):
            consistent = False
    if not consistent:
        return SolveResult("inconsistent", r, tuple(pivot_cols), None, [])
    zero = rows[0][0] * 0 if m else ZERO
    one = zero + 1
    particular = [zero for _ in range(n)]
    for i, c in enumerate(pivot_cols):
        particular[c] = A[i][n]
    free_cols = [c for c in range(n) if c not in pivot_cols]
    kernel = []
    for fc in free_cols:
        v = [zero for _ in range(n)]
        v[fc] = one
        for i, c in enumerate(pivot_cols):
            v[c] = zero - A[i][fc]
        kernel.append(v)
    status = "unique" if not free_cols else "underdetermined"
    return SolveResult(status, r, tuple(pivot_cols), particular, kernel)


def fraction_kernel(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Kernel basis of a rational matrix, reduced echelon form."""
    if not rows:
        return []
    res = rref_solve(rows, [Fraction(0)] * len(rows))
    return res.kernel


# ---------------------------------------------------------------------------
# parametric linear systems


@dataclass
class ExceptionalBranch:
    """The system re-solved at one special parameter value."""

    eps: Fraction
    status: str
    result: SolveResult | None

    def describe(self) -> str:
        if self.result is None:
            return f"eps={self.eps}: {self.status}"
        return (
            f"eps={self.eps}: {self.status}, rank {self.result.rank}, "
            f"kernel dim {self.result.kernel_dim}"
        )


@dataclass
class ParametricSolution:
    unknowns: tuple[str, ...]
    generic: SolveResult
    candidates: list[Fraction]
    branches: list[ExceptionalBranch]

    def branch_at(self, eps0) -> ExceptionalBranch | None:
        eps0 = Fraction(eps0)
        for b in self.branches:
            if b.eps == eps0:
                return b
        return None


def _rational_roots_of(f: RatFunc, into: set[Fraction]) -> None:
    if f.num.degree > 0:
        for r, _ in poly_rational_roots(f.num):
            into.add(r)
    if f.den.degree > 0:
        for r, _ in poly_rational_roots(f.den):
            into.add(r)


def solve_parametric(
    rows: Sequence[Sequence[RatFunc]],
    rhs: Sequence[RatFunc],
    unknowns: Sequence[str],
) -> ParametricSolution:
    """Solve A(eps) x = b(eps), reporting the generic outcome plus every
    rational parameter value where rank, consistency, or kernel dimension
    changes.  Branches where the system itself is undefined (an entry has
    a pole) are reported with status 'singular'.
    """
    rows = [[ratfunc(x) for x in r] for r in rows]
    rhs = [ratfunc(x) for x in rhs]
    candidates: set[Fraction] = set()
    for r, b in zip(rows, rhs):
        for x in list(r) + [b]:
            if x.den.degree > 0:
                for root, _ in poly_rational_roots(x.den):
                    candidates.add(root)

    logged: list[RatFunc] = []

    def record(kind, value):
        logged.append(value)

    generic = rref_solve(rows, rhs, record=record)
    for v in logged:
        _rational_roots_of(v, candidates)

    branches: list[ExceptionalBranch] = []
    for eps0 in sorted(candidates):
        try:
            srows = [[Fraction(x.eval(eps0)) for x in r] for r in rows]
            srhs = [Fraction(b.eval(eps0)) for b in rhs]
        except PoleAtEvaluationPoint:
            branches.append(ExceptionalBranch(eps0, "singular", None))
            continue
        res = rref_solve(srows, srhs)
        differs = (
            res.status != generic.status
            or res.rank != generic.rank
            or res.kernel_dim != generic.kernel_dim
        )
        if differs:
            branches.append(ExceptionalBranch(eps0, res.status, res))
    return ParametricSolution(tuple(unknowns), generic, sorted(candidates), branches)


def linear_system_from_equations(
    equations: Sequence[MultiPoly], unknowns: Sequence[str]
) -> tuple[list[list[RatFunc]], list[RatFunc]]:
    """Split affine equations (= 0) into coefficient rows and right sides.

    Each equation must have total degree <= 1 in the unknowns; the constant
    term moves to the right-hand side with its sign flipped.
    """
    unknowns = tuple(unknowns)
    rows, rhs = [], []
    for eq in equations:
        if eq.total_degree() > 1:
            raise NotLinearError(f"equation of degree {eq.total_degree()}: {eq}")
        if eq.names != unknowns:
            raise ValueError("equation indeterminates do not match the unknowns")
        row = []
        for name in unknowns:
            idx = unknowns.index(name)
            expo = tuple(1 if i == idx else 0 for i in range(len(unknowns)))
            row.append(eq.coefficient(expo))
        const = eq.coefficient(tuple(0 for _ in unknowns))
        rows.append(row)
        rhs.append(-const)
    return rows, rhs


def kernel_basis(matrix: Sequence[Sequence[RatFunc]]) -> list[list[RatFunc]]:
    """Generic kernel of a RatFunc matrix, reduced echelon form."""
    if not matrix:
        return []
    res = rref_solve(matrix, [ZERO] * len(matrix))
    return res.kernel


def rank_one_conditions(columns: Sequence[Sequence]) -> list:
    """All 2x2 minors of the matrix with the given columns.

    The minors vanish simultaneously exactly when the columns are linearly
    dependent, which is how distribution-parallelism conditions are posed.
    """
    ncols = len(columns)
    nrows = len(columns[0])
    out = []
    for c1 in range(ncols):
        for c2 in range(c1 + 1, ncols):
            for r1 in range(nrows):
                for r2 in range(r1 + 1, nrows):
                    minor = (
                        columns[c1][r1] * columns[c2][r2]
                        - columns[c1][r2] * columns[c2][r1]
                    )
                    if not scalar_is_zero(minor):
                        out.append(minor)
    return out


# ---------------------------------------------------------------------------
# univariate polynomials with RatFunc coefficients (spectral variable)


class FieldPoly:
    """Dense polynomial in one abstract variable over the RatFunc field.

    Used for characteristic polynomials: the variable is the spectral one,
    the coefficients are rational functions of the parameter.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [ratfunc(c) for c in coeffs]
        while cs and cs[-1].is_zero:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def variable(cls) -> "FieldPoly":
        return cls((ZERO, ONE))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __add__(self, other: "FieldPoly") -> "FieldPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return FieldPoly(out)

    def __neg__(self) -> "FieldPoly":
        return FieldPoly([-c for c in self.coeffs])

    def __sub__(self, other: "FieldPoly") -> "FieldPoly":
        return self + (-other)

    def __mul__(self, other: "FieldPoly") -> "FieldPoly":
        if self.is_zero or other.is_zero:
            return FieldPoly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return FieldPoly(out)

    def scale(self, s: RatFunc) -> "FieldPoly":
        return FieldPoly([c * s for c in self.coeffs])

    def divmod(self, other: "FieldPoly") -> tuple["FieldPoly", "FieldPoly"]:
        if other.is_zero:
            raise ZeroDivisionError("FieldPoly division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return FieldPoly(), self
        quo = [ZERO] * (dq + 1)
        lead = other.coeffs[-1]
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] / lead
            quo[k] = c
            if not c.is_zero:
                for j, d in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * d
        return FieldPoly(quo), FieldPoly(rem)

    def monic(self) -> "FieldPoly":
        if self.is_zero:
            return self
        lead = self.coeffs[-1]
        return FieldPoly([c / lead for c in self.coeffs])

    def specialize(self, eps0: Fraction) -> Poly:
        """Evaluate all coefficients at a parameter value; the result is an
        ordinary rational polynomial in the spectral variable."""
        return Poly([c.eval(eps0) for c in self.coeffs])

    def coeff_degree(self) -> int:
        d = 0
        for c in self.coeffs:
            d = max(d, c.num.degree, c.den.degree)
        return d

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c.is_zero:
                continue
            mono = "" if k == 0 else ("mu" if k == 1 else f"mu^{k}")
            cs = str(c)
            if mono and cs == "1":
                body = mono
            elif mono and cs == "-1":
                body = f"-{mono}"
            elif mono:
                wrapped = f"({cs})" if any(ch in cs for ch in "+/") or "-" in cs[1:] else cs
                body = f"{wrapped}*{mono}"
            else:
                body = f"({cs})" if any(ch in cs for ch in "+/") or "-" in cs[1:] else cs
            if parts and not body.startswith("-"):
                parts.append("+" + body)
            else:
                parts.append(body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"FieldPoly({str(self)!r})"


def charpoly(matrix: Sequence[Sequence[RatFunc]]) -> FieldPoly:
    """det(mu I - L), exactly, by Laplace expansion over FieldPoly."""
    n = len(matrix)
    mu = FieldPoly.variable()
    entries = [
        [
            (mu if i == j else FieldPoly()) - FieldPoly((matrix[i][j],))
            for j in range(n)
        ]
        for i in range(n)
    ]

    def det(rows):
        k = len(rows)
        if k == 1:
            return rows[0][0]
        acc = FieldPoly()
        for j in range(k):
            if rows[0][j].is_zero:
                continue
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            term = rows[0][j] * det(minor)
            acc = acc + (-term if j % 2 else term)
        return acc

    return det(entries)


# ---------------------------------------------------------------------------
# rational-function eigenvalues by sample-and-interpolate


@dataclass
class EigenPair:
    value: RatFunc
    multiplicity: int
    vectors: list[list[RatFunc]]


@dataclass
class EigenDecomposition:
    """Certified rational-function spectrum of a parametric operator.

    `pairs` carries eigenvalues certified by exact division of the
    characteristic polynomial; `residual` is the uncertified cofactor
    (constant 1 when the spectrum was fully resolved).  The degrees always
    satisfy sum(multiplicities) + residual.degree == dim.
    """

    charpoly: FieldPoly
    pairs: list[EigenPair]
    residual: FieldPoly
    samples: list[Fraction]


DEFAULT_DEGREE_BOUND = 8


def _primes(count: int, skip: Callable[[Fraction], bool]) -> list[Fraction]:
    out: list[Fraction] = []
    n = 2
    while len(out) < count:
        if all(n % p for p in range(2, int(math.isqrt(n)) + 1)):
            v = Fraction(n)
            if not skip(v):
                out.append(v)
        n += 1
    return out


def _fraction_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def poly_sqrt(p: Poly) -> Poly | None:
    """Exact square root of a rational polynomial, or None."""
    if p.is_zero:
        return Poly()
    if p.degree % 2:
        return None
    k = p.degree // 2
    top = _fraction_sqrt(p.coeffs[-1])
    if top is None:
        return None
    s = [Fraction(0)] * (k + 1)
    s[k] = top
    for j in range(k - 1, -1, -1):
        acc = Fraction(0)
        for i in range(j + 1, k):
            l = k + j - i
            if j + 1 <= l <= k:
                acc += s[i] * s[l]
        s[j] = (p.coeffs[k + j] - acc) / (2 * top)
    cand = Poly(s)
    return cand if cand * cand == p else None


def ratfunc_sqrt(f: RatFunc) -> RatFunc | None:
    """Exact square root in the field, or None if f is not a square."""
    if f.is_zero:
        return ZERO
    # canonical form: if f = s^2 then num and den are themselves squares
    sn = poly_sqrt(f.num)
    sd = poly_sqrt(f.den)
    if sn is None or sd is None:
        return None
    return RatFunc(sn, sd)


def _cauchy_interpolate(
    points: list[tuple[Fraction, Fraction]], bound: int
) -> RatFunc | None:
    """Rational function of num/den degree <= bound through the points.

    Sets up the homogeneous linear conditions N(x) - y D(x) = 0 and takes a
    kernel vector; the candidate is then re-checked against every point.
    """
    rows = []
    for x, y in points:
        row = [x**j for j in range(bound + 1)]
        row += [-y * x**j for j in range(bound + 1)]
        rows.append(row)
    ker = fraction_kernel(rows)
    if not ker:
        return None
    for vec in ker:
        num = Poly(vec[: bound + 1])
        den = Poly(vec[bound + 1:])
        if den.is_zero:
            continue
        f = RatFunc(num, den)
        try:
            if all(f.eval(x) == y for x, y in points):
                return f
        except PoleAtEvaluationPoint:
            continue
    return None


def eigen_analyze(
    matrix: Sequence[Sequence[RatFunc]],
    degree_bound: int = DEFAULT_DEGREE_BOUND,
) -> EigenDecomposition:
    """Find all eigenvalues of the operator that are rational functions of
    the parameter, with exact eigenvectors and multiplicities.

    Strategy: sample the characteristic polynomial at enough primes to pin
    any rational function within the degree bound, read off the exact
    rational eigenvalues per sample, track them across samples by sorted
    position, reconstruct each track by Cauchy interpolation, and certify
    by exact division.  Eigenvalues that are not rational functions stay in
    the residual factor; linear residuals and quadratic residuals with
    square discriminant are resolved exactly before giving up.
    """
    n = len(matrix)
    matrix = [[ratfunc(x) for x in row] for row in matrix]
    p = charpoly(matrix)
    if p.coeff_degree() > degree_bound:
        raise InterpolationDegreeExceeded(
            f"characteristic coefficients reach degree {p.coeff_degree()}, "
            f"bound is {degree_bound}"
        )

    def is_pole(x: Fraction) -> bool:
        return any(c.den.eval(x) == 0 for c in p.coeffs)

    samples = _primes(2 * degree_bound + 3, is_pole)

    per_sample: list[list[Fraction]] = []
    for x in samples:
        spec = p.specialize(x)
        roots: list[Fraction] = []
        for r, mult in poly_rational_roots(spec):
            roots.extend([r] * mult)
        per_sample.append(sorted(roots))

    track_count = min(len(r) for r in per_sample)
    candidates: list[RatFunc] = []
    for pos in range(track_count):
        pts = [(x, per_sample[i][pos]) for i, x in enumerate(samples)]
        f = _cauchy_interpolate(pts, degree_bound)
        if f is not None and f not in candidates:
            candidates.append(f)

    residual = p.monic()
    pairs: list[EigenPair] = []
    mu = FieldPoly.variable()
    for f in candidates:
        factor = mu - FieldPoly((f,))
        mult = 0
        while residual.degree >= 1:
            quo, rem = residual.divmod(factor)
            if not rem.is_zero:
                break
            residual = quo
            mult += 1
        if mult:
            vecs = kernel_basis(
                [
                    [matrix[i][j] - (f if i == j else ZERO) for j in range(n)]
                    for i in range(n)
                ]
            )
            pairs.append(EigenPair(f, mult, vecs))

    # a leftover linear or square-discriminant quadratic factor still has
    # exact rational-function roots; peel those before reporting a residual
    changed = True
    while changed and residual.degree >= 1:
        changed = False
        extracted: list[RatFunc] = []
        if residual.degree == 1:
            extracted = [-residual.coeffs[0] / residual.coeffs[1]]
        elif residual.degree == 2:
            a2, a1, a0 = residual.coeffs[2], residual.coeffs[1], residual.coeffs[0]
            disc = a1 * a1 - 4 * a2 * a0
            s = ratfunc_sqrt(disc)
            if s is not None:
                extracted = [(-a1 + s) / (2 * a2), (-a1 - s) / (2 * a2)]
        for f in extracted:
            factor = mu - FieldPoly((f,))
            mult = 0
            while residual.degree >= 1:
                quo, rem = residual.divmod(factor)
                if not rem.is_zero:
                    break
                residual = quo
                mult += 1
            if not mult:
                continue
            changed = True
            existing = next((pr for pr in pairs if pr.value == f), None)
            if existing is not None:
                existing.multiplicity += mult
            else:
                vecs = kernel_basis(
                    [
                        [matrix[i][j] - (f if i == j else ZERO) for j in range(n)]
                        for i in range(n)
                    ]
                )
                pairs.append(EigenPair(f, mult, vecs))

    assert sum(pr.multiplicity for pr in pairs) + max(residual.degree, 0) == n
    return EigenDecomposition(p, pairs, residual, samples)
