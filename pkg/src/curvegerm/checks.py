"""Drivers that run both channels over the corpus or over random germs."""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence, TypeVar

from .branches import START_PRECISION, analyze_germ, validate_germ
from .corpus import DEFAULT_CORPUS, CorpusEntry
from .documents import germ_to_dict
from .errors import GermError, UndeterminedError
from .germ import Branch, CurveGerm
from .ledger import (
    degree_range_check,
    isolated_profile,
    mu_isolated,
    nodes_only_table,
    unfolding_mu_plane_curve,
)
from .oracle import DEFAULT_DEGREE_CAP
from .series import PRECISION_CAP

T = TypeVar("T")
U = TypeVar("U")


def ordered_map(fn: Callable[[T], U], items: Sequence[T], jobs: int = 1) -> list[U]:
    """``map`` with optional worker processes; results keep input order."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# corpus


@dataclass
class CorpusRow:
    name: str
    r: int | None = None
    delta: int | None = None
    mu: int | None = None
    oracle_mu: int | None = None
    cokernel_delta: int | None = None
    mu_isolated: int | None = None
    mismatches: list[str] = field(default_factory=list)
    error: str | None = None

    @property
    def passed(self) -> bool:
        return not self.mismatches and self.error is None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "r": self.r,
            "delta": self.delta,
            "mu": self.mu,
            "oracle_mu": self.oracle_mu,
            "cokernel_delta": self.cokernel_delta,
            "mu_isolated": self.mu_isolated,
            "passed": self.passed,
            "mismatches": list(self.mismatches),
            "error": self.error,
        }


def _compare(out: list[str], what: str, a_name: str, a, b_name: str, b) -> None:
    if a != b:
        out.append(f"{what}: {a_name} {a} vs {b_name} {b}")


def check_corpus_entry(e: CorpusEntry, degree_cap: int = DEFAULT_DEGREE_CAP) -> CorpusRow:
    """Both channels plus the nodes-only ledger specialization for one entry."""
    row = CorpusRow(e.name)
    try:
        rep = analyze_germ(e.germ, oracle=True, degree_cap=degree_cap)
    except GermError as exc:
        row.error = str(exc)
        return row
    row.r, row.delta, row.mu = rep.r, rep.delta_total, rep.mu_parameterized
    row.oracle_mu, row.cokernel_delta = rep.oracle_mu, rep.cokernel_delta
    m = row.mismatches
    _compare(m, "r", "computed", rep.r, "expected", e.r)
    _compare(m, "delta", "semigroup/intersection route", rep.delta_total, "cokernel route", rep.cokernel_delta)
    _compare(m, "delta", "computed", rep.delta_total, "expected", e.delta)
    _compare(m, "mu", "2*delta - r + 1 =", rep.mu_parameterized, "oracle", rep.oracle_mu)
    _compare(m, "mu", "computed", rep.mu_parameterized, "expected", e.mu)
    for name, ok in rep.checks.items():
        if not ok and name not in ("delta_routes_agree", "oracle_mu_agrees"):
            m.append(f"check {name} failed")
    try:
        iso = mu_isolated(nodes_only_table(rep.r, rep.delta_total))
        unf = unfolding_mu_plane_curve(rep.r, rep.delta_total)
    except GermError as exc:
        m.append(f"ledger: {exc}")
    else:
        row.mu_isolated = iso
        _compare(m, "ledger", "mu_isolated + delta =", iso + rep.delta_total, "2*delta - r + 1 =", unf)
        _compare(m, "ledger", "mu_isolated", iso, "delta - r + 1 =", rep.complex_link_mu)
        if not degree_range_check(2, 0, isolated_profile(2, iso)):
            m.append("ledger: isolated profile outside the allowed degree range")
    return row


def verify_corpus(
    entries: Iterable[CorpusEntry] = DEFAULT_CORPUS,
    name_filter: str | None = None,
    jobs: int = 1,
) -> list[CorpusRow]:
    chosen = [e for e in entries if name_filter is None or e.name == name_filter]
    return ordered_map(check_corpus_entry, chosen, jobs)


# ---------------------------------------------------------------------------
# random germs

MAX_EXPONENT = 7
MAX_BRANCHES = 3
COEFFICIENTS = (-3, -2, -1, 1, 2, 3)


def _sample_component(rng: random.Random) -> dict[int, int]:
    k = rng.choice((1, 1, 2))
    exps = rng.sample(range(1, MAX_EXPONENT + 1), k)
    return {e: rng.choice(COEFFICIENTS) for e in exps}


def sample_germ(rng: random.Random) -> CurveGerm:
    """One random polynomial germ; it may still be invalid."""
    r = rng.randint(1, MAX_BRANCHES)
    return CurveGerm(tuple(Branch.polynomial(_sample_component(rng), _sample_component(rng)) for _ in range(r)))


def sample_valid_germs(count: int, seed: int, max_tries: int = 100_000) -> tuple[list[CurveGerm], int]:
    """``count`` valid germs by rejection sampling, plus the number rejected."""
    rng = random.Random(seed)
    out: list[CurveGerm] = []
    rejected = 0
    while len(out) < count:
        if rejected > max_tries:
            raise RuntimeError("random germ sampler rejected too many candidates")
        g = sample_germ(rng)
        try:
            ok = validate_germ(g).valid
        except UndeterminedError:
            ok = False
        if ok:
            out.append(CurveGerm(g.branches, f"random-{seed}-{len(out)}"))
        else:
            rejected += 1
    return out, rejected


@dataclass
class RandomOutcome:
    name: str
    status: str  # "pass", "skip" or "fail"
    delta: int | None = None
    cokernel_delta: int | None = None
    mu: int | None = None
    oracle_mu: int | None = None
    detail: str = ""
    germ_json: str = ""


def check_random_germ(g: CurveGerm) -> RandomOutcome:
    replay = json.dumps(germ_to_dict(g), separators=(",", ":"))
    try:
        rep = analyze_germ(g, oracle=True, precision=START_PRECISION, cap=PRECISION_CAP)
    except UndeterminedError as exc:
        return RandomOutcome(g.name, "skip", detail=str(exc), germ_json=replay)
    except GermError as exc:
        return RandomOutcome(g.name, "fail", detail=str(exc), germ_json=replay)
    out = RandomOutcome(g.name, "pass", rep.delta_total, rep.cokernel_delta, rep.mu_parameterized, rep.oracle_mu)
    bad = []
    _compare(bad, "delta", "semigroup/intersection route", rep.delta_total, "cokernel route", rep.cokernel_delta)
    _compare(bad, "mu", "2*delta - r + 1 =", rep.mu_parameterized, "oracle", rep.oracle_mu)
    bad += [f"check {k} failed" for k, ok in rep.checks.items() if not ok and k not in ("delta_routes_agree", "oracle_mu_agrees")]
    if bad:
        out.status, out.detail, out.germ_json = "fail", "; ".join(bad), replay
    return out


@dataclass
class RandomSummary:
    count: int
    seed: int
    rejected: int
    outcomes: list[RandomOutcome]

    @property
    def passed(self) -> int:
        return sum(o.status == "pass" for o in self.outcomes)

    @property
    def skipped(self) -> int:
        return sum(o.status == "skip" for o in self.outcomes)

    @property
    def failures(self) -> list[RandomOutcome]:
        return [o for o in self.outcomes if o.status == "fail"]


def random_check(count: int, seed: int, jobs: int = 1) -> RandomSummary:
    if count < 1:
        raise ValueError("count must be at least 1")
    germs, rejected = sample_valid_germs(count, seed)
    return RandomSummary(count, seed, rejected, ordered_map(check_random_germ, germs, jobs))
