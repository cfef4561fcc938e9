from __future__ import annotations

import random

import pytest

from curvegerm.branches import validate_germ
from curvegerm.checks import (
    MAX_BRANCHES,
    MAX_EXPONENT,
    check_corpus_entry,
    check_random_germ,
    ordered_map,
    random_check,
    sample_germ,
    sample_valid_germs,
)
from curvegerm.corpus import DEFAULT_CORPUS, CorpusEntry
from curvegerm.documents import parse_germ


def test_sampler_respects_bounds():
    rng = random.Random(3)
    for _ in range(200):
        g = sample_germ(rng)
        assert 1 <= g.r <= MAX_BRANCHES
        for b in g.branches:
            for s in (b.x, b.y):
                assert all(1 <= e <= MAX_EXPONENT for e in s.coeffs)
                assert all(-3 <= c <= 3 and c != 0 for c in s.coeffs.values())


def test_sampled_germs_are_valid_and_reproducible():
    a, rej_a = sample_valid_germs(10, 11)
    b, rej_b = sample_valid_germs(10, 11)
    assert a == b and rej_a == rej_b
    assert all(validate_germ(g).valid for g in a)


def test_random_check_rejects_empty_batch():
    with pytest.raises(ValueError):
        random_check(0, 1)


def test_random_outcome_counts():
    summary = random_check(6, 5)
    assert summary.passed + summary.skipped + len(summary.failures) == 6
    assert not summary.failures


def test_failure_carries_a_replayable_germ():
    # a branch pair that validation would reject makes the analysis fail loudly
    g = parse_germ('{"name": "dup", "branches": [{"x": [[1, 1, 1]], "y": []}, {"x": [[2, 1, 1]], "y": []}]}')
    out = check_random_germ(g)
    assert out.status == "fail" and "repeated component" in out.detail
    assert parse_germ(out.germ_json) == g


def test_corpus_entry_with_wrong_delta_is_named():
    e = DEFAULT_CORPUS[2]
    row = check_corpus_entry(CorpusEntry(e.germ, e.r, e.delta + 1, e.mu))
    assert not row.passed
    assert any(m.startswith("delta: computed") for m in row.mismatches)


def test_ordered_map_keeps_order():
    assert ordered_map(abs, [-3, 1, -2], jobs=2) == [3, 1, 2]
