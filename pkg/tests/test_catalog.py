import textwrap

import pytest

from liegeom.catalog import (
    ParseError,
    ValidationFailed,
    abelian_control,
    berger,
    catalog,
    dumps,
    load,
    loads,
)


BERGER_TEXT = """\
name: berger-sphere
dim: 3
bracket: 1 2 -> 3 : 2
bracket: 1 3 -> 2 : -2
bracket: 2 3 -> 1 : 2
metric:
eps 0 0
0 1 0
0 0 1
"""


def test_catalog_entries():
    entries = catalog()
    assert set(entries) == {"berger", "abelian"}
    assert entries["berger"].algebra.name == "berger-sphere"
    assert entries["berger"].notes          # the documented discrepancies
    assert entries["abelian"].algebra.name == "abelian-lorentz"


def test_dumps_golden():
    assert dumps(berger()) == BERGER_TEXT


def test_round_trip_both_entries():
    for alg in (berger(), abelian_control()):
        again = loads(dumps(alg))
        assert again.name == alg.name
        assert again.brackets == alg.brackets
        assert again.metric == alg.metric


def test_load_from_file(tmp_path):
    p = tmp_path / "alg.txt"
    p.write_text(BERGER_TEXT, encoding="utf-8")
    alg = load(p)
    assert alg.name == "berger-sphere"
    assert alg.dim == 3


def test_loads_tolerates_comments_and_order():
    text = textwrap.dedent("""\
        # a reshuffled description of the same algebra
        dim: 3
        metric:
        # scaled direction first
        eps 0 0
        0 1 0
        0 0 1
        bracket: 2 3 -> 1 : 2
        bracket: 1 2 -> 3 : 2
        bracket: 1 3 -> 2 : -2
        name: berger-sphere
        """)
    alg = loads(text)
    assert alg.brackets == berger().brackets
    assert alg.metric == berger().metric


def test_loads_inline_metric_row():
    text = "dim: 2\nmetric: -1 0\n0 1\n"
    alg = loads(text)
    assert alg.dim == 2
    assert str(alg.metric[0][0]) == "-1"


def expect_parse_error(text, fragment):
    with pytest.raises(ParseError) as exc:
        loads(text)
    assert fragment in str(exc.value)
    assert isinstance(exc.value.line, int)


def test_parse_errors():
    expect_parse_error("dim: 3\nwhat: ever\n", "what")
    expect_parse_error("bracket: 1 2 -> 3 : 2\n", "dim")
    expect_parse_error("dim: 3\nbracket: 2 1 -> 3 : 2\n", "bracket")
    expect_parse_error("dim: 2\nbracket: 1 2 -> 5 : 1\n", "bracket")
    expect_parse_error("dim: 2\nmetric:\n1 0\n", "metric")
    expect_parse_error("dim: 2\nmetric:\n1 0 0\n0 1\n", "metric")
    expect_parse_error("dim: 2\nmetric:\n1 0\n0 bogus\n", "scalar")


def test_parse_error_reports_line_number():
    with pytest.raises(ParseError) as exc:
        loads("dim: 3\n# fine\nbad line here\n")
    assert exc.value.line == 3


def test_zero_denominator_coefficient_is_a_parse_error():
    with pytest.raises(ParseError):
        loads("dim: 2\nbracket: 1 2 -> 1 : 1/(eps-eps)\nmetric:\n1 0\n0 1\n")


def test_validation_failure_on_load():
    text = textwrap.dedent("""\
        dim: 3
        bracket: 1 2 -> 3 : 2
        bracket: 2 3 -> 1 : 2
        bracket: 1 3 -> 2 : -2
        bracket: 1 3 -> 3 : -1
        metric:
        1 0 0
        0 1 0
        0 0 1
        """)
    with pytest.raises(ValidationFailed) as exc:
        loads(text)
    assert any(v.law == "jacobi" for v in exc.value.violations)
    # the same text can still be inspected unvalidated
    alg = loads(text, validate=False)
    assert alg.validate()


def test_default_metric_requires_block():
    expect_parse_error("dim: 2\n", "metric")


def test_duplicate_bracket_rejected():
    expect_parse_error(
        "dim: 3\nbracket: 1 2 -> 3 : 2\nbracket: 1 2 -> 3 : 1\n"
        "metric:\n1 0 0\n0 1 0\n0 0 1\n",
        "bracket",
    )
