"""The frozen corpus expectations, recomputed from scratch."""

from __future__ import annotations

import json

import pytest
import sympy as sp

from curvegerm.branches import analyze_germ, validate_germ
from curvegerm.corpus import DEFAULT_CORPUS, corpus_to_list, load_corpus
from curvegerm.oracle import implicitize_curve, milnor_implicit

from independent import X, Y, brieskorn_mu, semigroup_gaps, sympy_milnor_brute

# germs of the form (t^a, t^b) -> y^a - x^b
MONOMIAL = {"cusp": (2, 3), "A4": (2, 5), "A6": (2, 7), "E6": (3, 4), "E8": (3, 5)}

# implicit equations written down by hand
BY_HAND = {
    "smooth": Y - X**2,
    "node": X * Y,
    "tacnode": Y**2 - X**4,
    "triple": X * Y * (X - Y),
    "quadruple": X * Y * (X - Y) * (X + Y),
}


@pytest.mark.parametrize("entry", DEFAULT_CORPUS, ids=lambda e: e.name)
def test_entry_is_valid(entry):
    assert validate_germ(entry.germ).valid
    assert entry.germ.r == entry.r


@pytest.mark.parametrize("entry", DEFAULT_CORPUS, ids=lambda e: e.name)
def test_expected_mu_comes_from_the_oracle(entry):
    assert milnor_implicit(implicitize_curve(entry.germ).g) == entry.mu


@pytest.mark.parametrize("name", sorted(MONOMIAL))
def test_monomial_entries_match_brieskorn_and_semigroup(name):
    entry = next(e for e in DEFAULT_CORPUS if e.name == name)
    a, b = MONOMIAL[name]
    assert entry.mu == brieskorn_mu(a, b)
    assert entry.delta == len(semigroup_gaps(a, b))


@pytest.mark.parametrize("name", sorted(BY_HAND))
def test_other_entries_match_sympy_rank(name):
    entry = next(e for e in DEFAULT_CORPUS if e.name == name)
    g = BY_HAND[name]
    assert sympy_milnor_brute(g, 8) == entry.mu
    mine = implicitize_curve(entry.germ).g
    ref = sp.Poly(sp.expand(g), X, Y)
    mine_sp = sp.Poly(sum(sp.Rational(c.numerator, c.denominator) * X**p * Y**q for (p, q), c in mine.terms.items()), X, Y)
    assert mine_sp == ref or mine_sp == -ref


@pytest.mark.parametrize("entry", DEFAULT_CORPUS, ids=lambda e: e.name)
def test_both_channels_reproduce_the_entry(entry):
    rep = analyze_germ(entry.germ, oracle=True)
    assert (rep.r, rep.delta_total, rep.cokernel_delta) == (entry.r, entry.delta, entry.delta)
    assert rep.mu_parameterized == rep.oracle_mu == entry.mu
    assert all(s.semigroup.conductor == 2 * s.delta for s in rep.per_branch)


def test_ordinary_multiple_points_follow_the_square_rule():
    for name, m in (("node", 2), ("triple", 3), ("quadruple", 4)):
        entry = next(e for e in DEFAULT_CORPUS if e.name == name)
        assert entry.mu == (m - 1) ** 2 and entry.delta == m * (m - 1) // 2


def test_corpus_file_round_trip(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps(corpus_to_list(DEFAULT_CORPUS)))
    assert tuple(load_corpus(p)) == DEFAULT_CORPUS
