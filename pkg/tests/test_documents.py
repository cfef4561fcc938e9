from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from curvegerm.documents import dump_germ, germ_to_dict, parse_germ, parse_table, table_to_dict
from curvegerm.errors import DocumentError
from curvegerm.germ import Branch, CurveGerm

CUSP = """{
  "name": "cusp",
  "branches": [
    {"x": [[1, 1, 2]], "y": [[1, 1, 3]]}
  ]
}
"""


def test_parse_cusp():
    c = parse_germ(CUSP)
    assert c.name == "cusp" and c.r == 1
    assert dict(c.branches[0].x.coeffs) == {2: 1}
    assert c.branches[0].exact


def test_rational_coefficients_stay_exact():
    c = parse_germ('{"branches": [{"x": [[1, 3, 1]], "y": [[-2, 7, 2], [1, 2, 5]]}]}')
    assert c.branches[0].y.coeff(2) == Fraction(-2, 7)
    assert c.branches[0].y.coeff(5) == Fraction(1, 2)


def test_series_branch_precision():
    c = parse_germ('{"branches": [{"x": [[1, 1, 2]], "y": [[1, 1, 3]], "precision": 12}]}')
    b = c.branches[0]
    assert not b.exact and b.known_precision == 12


def test_syntax_error_reports_line():
    with pytest.raises(DocumentError, match=r"line 3"):
        parse_germ('{\n  "name": "x",\n  "branches": [,]\n}')


def test_bad_term_names_branch_and_line():
    text = '{\n  "branches": [\n    {"x": [[1, 1, 1]], "y": [[1, 1, 2]]},\n    {"x": [[1, 0, 1]], "y": [[1, 1, 2]]}\n  ]\n}'
    with pytest.raises(DocumentError) as info:
        parse_germ(text)
    msg = str(info.value)
    assert "branch 1" in msg and "line 4" in msg and "denominator must be positive" in msg


@pytest.mark.parametrize(
    "text, fragment",
    [
        ('{"branches": []}', "nonempty list"),
        ('{"branches": [{"x": [[1, 1, 1]]}]}', "missing component y"),
        ('{"branches": [{"x": [[1.5, 1, 1]], "y": []}]}', "integer entries"),
        ('{"branches": [{"x": [[1, 1, -1]], "y": []}]}', "non-negative"),
        ('{"branches": [{"x": [[1, 1, 1]], "y": [], "z": 1}]}', "unknown keys"),
        ('{"branches": [{"x": [[1, 1, 9]], "y": [], "precision": 5}]}', "not below the stated precision"),
        ('{"branches": [{"x": [[1, 1, 1]], "y": []}], "precision_hint": 0}', "precision_hint"),
        ("[1, 2]", "top level must be an object"),
    ],
)
def test_structural_errors(text, fragment):
    with pytest.raises(DocumentError, match=fragment):
        parse_germ(text)


def test_repeated_exponents_add_up():
    c = parse_germ('{"branches": [{"x": [[1, 2, 1], [1, 2, 1]], "y": [[1, 1, 3], [-1, 1, 3], [1, 1, 2]]}]}')
    assert dict(c.branches[0].x.coeffs) == {1: 1}
    assert dict(c.branches[0].y.coeffs) == {2: 1}


# --- round trip -----------------------------------------------------------------------

coef = st.fractions(min_value=-9, max_value=9, max_denominator=6).filter(bool)
terms = st.dictionaries(st.integers(1, 9), coef, max_size=3)


@st.composite
def germs(draw):
    branches = []
    for i in range(draw(st.integers(1, 3))):
        x, y = draw(terms), draw(terms)
        label = draw(st.sampled_from(["", f"b{i}", "arm"]))
        if draw(st.booleans()):
            branches.append(Branch.polynomial(x, y, label))
        else:
            prec = max([10, *x, *y]) + 1
            branches.append(Branch.truncated(x, y, prec, label))
    hint = draw(st.one_of(st.none(), st.integers(1, 64)))
    return CurveGerm(tuple(branches), draw(st.text(max_size=8)), hint)


@given(germs())
def test_serialize_then_parse_round_trips(c):
    text = dump_germ(c)
    back = parse_germ(text)
    assert back == c
    assert back.precision_hint == c.precision_hint
    assert dump_germ(back) == text
    assert germ_to_dict(back) == germ_to_dict(c)


# --- stratum tables ------------------------------------------------------------------------


def test_parse_cross_cap_table():
    t = parse_table('{"n": 2, "r": 1, "chi_Xk": {"2": 1}, "upstairs": [0], "isolated_flag": true, "s": 0}')
    assert t.isolated and dict(t.chi_Xk) == {2: 1} and t.upstairs == (0,)
    assert table_to_dict(t)["chi_Xk"] == {"2": 1}


@pytest.mark.parametrize(
    "text, fragment",
    [
        ('{"r": 1}', "n: required integer"),
        ('{"n": 2, "r": 1, "chi_Xk": {"two": 1}}', "key must be an integer"),
        ('{"n": 2, "r": 1, "chi_Xk": {"1": 1}}', "keys must be >= 2"),
        ('{"n": 2, "r": 1, "upstairs": [0.5]}', "list of integers"),
        ('{"n": 2, "r": 1, "isolated_flag": 1}', "true or false"),
        ('{"n": 2, "r": 2, "upstairs": [0]}', "upstairs has 1 entries"),
    ],
)
def test_table_errors(text, fragment):
    with pytest.raises(DocumentError, match=fragment):
        parse_table(text)
