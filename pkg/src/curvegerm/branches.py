"""Invariants of a parameterized plane curve germ.

Computes multiplicities, value semigroups, delta invariants, pairwise
intersection multiplicities and the Milnor number ``2*delta - r + 1``.
Delta is obtained two independent ways: from the semigroup gaps plus
intersection numbers, and as the codimension of the image of the local ring
inside the normalization.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import gcd
from typing import Sequence

from .errors import (
    InvalidGermError,
    OracleUnsupportedError,
    RepeatedComponentError,
    RouteMismatchError,
    UndeterminedError,
)
from .germ import Branch, CurveGerm, branch_violations
from .linalg import EchelonForm
from .oracle import DEFAULT_DEGREE_CAP, implicitize_branch, implicitize_curve, milnor_implicit
from .series import (
    PRECISION_CAP,
    AtLeast,
    TruncatedSeries,
    poly_eval_series,
    series_determinant,
    sylvester_matrix,
)

START_PRECISION = 16


@dataclass(frozen=True)
class SemigroupData:
    achieved_orders: frozenset[int]
    gaps: tuple[int, ...]
    conductor: int
    precision_used: int = field(default=0, compare=False)

    @property
    def delta(self) -> int:
        return len(self.gaps)

    def __contains__(self, v: int) -> bool:
        return v >= self.conductor or v in self.achieved_orders

    def generators(self) -> list[int]:
        """Minimal generators; none exceeds conductor + multiplicity."""
        m = next(v for v in range(1, self.conductor + 2) if v in self)
        elems = [v for v in range(1, self.conductor + m + 1) if v in self]
        return [v for v in elems if not any(g < v and (v - g) in self for g in elems)]

    def to_dict(self) -> dict:
        return {
            "gaps": list(self.gaps),
            "conductor": self.conductor,
            "generators": self.generators(),
        }


@dataclass(frozen=True)
class ValidationVerdict:
    valid: bool
    violations: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.valid


# ---------------------------------------------------------------------------
# precision schedule


def _schedule(branches: Sequence[Branch], precision: int, cap: int):
    """Working precisions to try: doubling from ``precision`` up to the cap.

    Truncated-series branches further limit how far the schedule can go.
    """
    limit = cap
    for b in branches:
        if b.known_precision is not None:
            limit = min(limit, b.known_precision)
    n = min(precision, limit)
    while True:
        yield n, n >= limit
        if n >= limit:
            return
        n = min(2 * n, limit)


def branch_multiplicity(b: Branch) -> int:
    ox, oy = b.x.order(), b.y.order()
    orders = [o for o in (ox, oy) if isinstance(o, int)]
    if not orders:
        raise UndeterminedError("branch_multiplicity", "both components vanish to known precision; raise precision")
    m = min(orders)
    for o in (ox, oy):
        if isinstance(o, AtLeast) and not b.exact and o.bound < m:
            raise UndeterminedError("branch_multiplicity", f"order undetermined below {o.bound}; raise precision")
    return m


# ---------------------------------------------------------------------------
# image of the local ring in the truncated normalization


def _mul_componentwise(row: dict, factors: Sequence[TruncatedSeries], N: int) -> dict:
    out: dict = {}
    for (e, i), c in row.items():
        for ef, cf in factors[i].coeffs.items():
            k = e + ef
            if k >= N:
                break
            key = (k, i)
            out[key] = out.get(key, 0) + c * cf
    return {k: v for k, v in out.items() if v}


def _image_echelon(branches: Sequence[Branch], N: int) -> EchelonForm:
    """Echelon basis of the image of ``C[x, y]`` in the product of ``C[t_i]/t_i^N``.

    The image is a subalgebra, so it is the closure of ``{1}`` under
    multiplication by ``x`` and ``y``; only independent vectors get multiplied
    further.  Keys are ``(exponent, branch)`` so pivots follow the t-adic order.
    """
    xs, ys = [], []
    for b in branches:
        sx, sy = b.at_precision(N)
        xs.append(sx)
        ys.append(sy)
    ech: EchelonForm = EchelonForm()
    queue = deque([{(0, i): 1 for i in range(len(branches))}])
    while queue:
        kept = ech.insert(queue.popleft())
        if kept is None:
            continue
        queue.append(_mul_componentwise(kept, xs, N))
        queue.append(_mul_componentwise(kept, ys, N))
    return ech


def _covered_from(pivots: frozenset, r: int, N: int) -> int:
    """Least k with every ``(e, i)``, ``k <= e < N``, a pivot."""
    k = N
    while k > 0 and all((k - 1, i) in pivots for i in range(r)):
        k -= 1
    return k


@lru_cache(maxsize=512)
def _value_semigroup(b: Branch, precision: int, cap: int) -> SemigroupData:
    m = branch_multiplicity(b)
    last = None
    for N, final in _schedule([b], precision, cap):
        piv = _image_echelon([b], N).pivots
        achieved = sorted(e for e, _ in piv)
        last = achieved
        k = _covered_from(piv, 1, N)
        # a run of m consecutive values forces every later value in
        if N - k >= m:
            gaps = tuple(v for v in range(k) if (v, 0) not in piv)
            conductor = gaps[-1] + 1 if gaps else 0
            return SemigroupData(frozenset(v for v in achieved if v < conductor), gaps, conductor, N)
    g = 0
    for v in last or []:
        g = gcd(g, v)
    detail = f"gap set not stable below precision {N}"
    if g > 1:
        detail += f"; all achieved orders divisible by {g} (not generically one-to-one?)"
    raise UndeterminedError("value_semigroup", detail)


def value_semigroup(b: Branch, precision: int = START_PRECISION, cap: int = PRECISION_CAP) -> SemigroupData:
    """Value semigroup ``{ord_t f(x(t), y(t))}`` read off the pivots of the image."""
    return _value_semigroup(b, precision, cap)


def delta_branch(b: Branch, precision: int = START_PRECISION, cap: int = PRECISION_CAP) -> int:
    return value_semigroup(b, precision, cap).delta


@lru_cache(maxsize=512)
def _cokernel(branches: tuple[Branch, ...], precision: int, cap: int) -> tuple[int, int]:
    r = len(branches)
    mmax = max(branch_multiplicity(b) for b in branches)
    for N, final in _schedule(branches, precision, cap):
        ech = _image_echelon(branches, N)
        k = _covered_from(ech.pivots, r, N)
        # t^k * normalization lies in the image once N - k >= max multiplicity
        if N - k >= mmax:
            return r * N - ech.rank, N
    raise UndeterminedError("cokernel_dimension", f"image not stable below precision {N}")


def cokernel_dimension(c: CurveGerm, precision: int = START_PRECISION, cap: int = PRECISION_CAP) -> int:
    """``dim(normalization / local ring)`` by exact row reduction."""
    return _cokernel(c.branches, precision, cap)[0]


# ---------------------------------------------------------------------------
# intersection multiplicities


def _implicit_route(g, bi: Branch) -> int:
    if bi.exact:
        dx, dy = bi.x.degree(), bi.y.degree()
        bound = max(a * max(dx, 0) + b * max(dy, 0) for a, b in g.terms)
        sx, sy = bi.at_precision(bound + 1)
        val = poly_eval_series(g, sx, sy).order()
        if isinstance(val, AtLeast):
            raise RepeatedComponentError()
        return val
    val = poly_eval_series(g, bi.x, bi.y).order()
    if isinstance(val, AtLeast):
        raise UndeterminedError("intersection_multiplicity", f"intersection undetermined at input precision {val.bound}")
    return val


def _resultant_order(bi: Branch, bj_x: TruncatedSeries, bj_y: TruncatedSeries, N: int):
    sx, sy = bi.at_precision(N)
    one = lambda c: TruncatedSeries.constant(c, PRECISION_CAP)  # noqa: E731
    p = [-sx] + [one(bj_x.coeffs.get(e, 0)) for e in range(1, bj_x.degree() + 1)]
    q = [-sy] + [one(bj_y.coeffs.get(e, 0)) for e in range(1, bj_y.degree() + 1)]
    M = sylvester_matrix(p, q, TruncatedSeries.zero(PRECISION_CAP))
    return series_determinant(M).order()


def _resultant_route(bi: Branch, bj: Branch, precision: int, cap: int) -> int:
    previous = None
    for N, final in _schedule([bi, bj], precision, cap):
        if bj.exact:
            jx, jy = bj.x, bj.y
        else:
            jx, jy = bj.at_precision(N)
        o = _resultant_order(bi, jx, jy, N)
        if isinstance(o, int):
            if bj.exact:
                return o
            if previous == o:
                return o
            previous = o
        else:
            previous = None
    if bi.known_precision is None and bj.known_precision is None:
        raise RepeatedComponentError()
    raise UndeterminedError("intersection_multiplicity", f"resultant order undetermined at precision {N}")


@lru_cache(maxsize=2048)
def _intersection(bi: Branch, bj: Branch, precision: int, cap: int) -> int:
    if bi.exact and not bj.exact:
        bi, bj = bj, bi
    implicit = None
    if bj.exact:
        implicit = _implicit_route(implicitize_branch(bj), bi)
    resultant = _resultant_route(bi, bj, precision, cap)
    if implicit is not None and implicit != resultant:
        raise RouteMismatchError(f"intersection multiplicity: implicit route {implicit} != resultant route {resultant}")
    return resultant


def intersection_multiplicity(
    bi: Branch, bj: Branch, precision: int = START_PRECISION, cap: int = PRECISION_CAP
) -> int:
    """``ord_t g_j(x_i(t), y_i(t))``, cross-checked against ``ord_t Res_s``."""
    return _intersection(bi, bj, precision, cap)


def clear_caches() -> None:
    """Forget memoized semigroups, cokernels and intersections (for timing runs)."""
    for f in (_value_semigroup, _cokernel, _intersection):
        f.cache_clear()


# ---------------------------------------------------------------------------
# germ-level invariants


def validate_germ(c: CurveGerm, precision: int = START_PRECISION, cap: int = PRECISION_CAP) -> ValidationVerdict:
    violations: list[str] = []
    for i, b in enumerate(c.branches):
        violations.extend(branch_violations(b, i))
    if violations:
        return ValidationVerdict(False, tuple(violations))
    labels = c.labels()
    for i, j in combinations(range(c.r), 2):
        try:
            intersection_multiplicity(c.branches[i], c.branches[j], precision, cap)
        except RepeatedComponentError:
            violations.append(f"branches {labels[i]} and {labels[j]}: repeated component")
    for i, b in enumerate(c.branches):
        if not b.exact:
            try:
                value_semigroup(b, precision, cap)
            except UndeterminedError as exc:
                violations.append(f"branch {i}: {exc}")
    return ValidationVerdict(not violations, tuple(violations))


def require_valid(c: CurveGerm, precision: int = START_PRECISION, cap: int = PRECISION_CAP) -> None:
    verdict = validate_germ(c, precision, cap)
    if not verdict.valid:
        raise InvalidGermError(list(verdict.violations))


def intersection_matrix(c: CurveGerm, precision: int = START_PRECISION, cap: int = PRECISION_CAP) -> list[list[int | None]]:
    r = c.r
    mat: list[list[int | None]] = [[None] * r for _ in range(r)]
    for i, j in combinations(range(r), 2):
        v = intersection_multiplicity(c.branches[i], c.branches[j], precision, cap)
        mat[i][j] = mat[j][i] = v
    return mat


def delta_total(c: CurveGerm, precision: int = START_PRECISION, cap: int = PRECISION_CAP) -> int:
    """Sum of branch deltas plus pairwise intersection multiplicities."""
    total = sum(delta_branch(b, precision, cap) for b in c.branches)
    for bi, bj in combinations(c.branches, 2):
        total += intersection_multiplicity(bi, bj, precision, cap)
    return total


def milnor_from_delta(c: CurveGerm, precision: int = START_PRECISION, cap: int = PRECISION_CAP) -> int:
    mu = 2 * delta_total(c, precision, cap) - c.r + 1
    assert mu >= 0, "2*delta - r + 1 must be non-negative on a valid germ"
    return mu


def complex_link_milnor(c: CurveGerm, precision: int = START_PRECISION, cap: int = PRECISION_CAP) -> int:
    """``delta - r + 1``: Milnor number of the unfolding parameter on the image surface."""
    return delta_total(c, precision, cap) - c.r + 1


@dataclass
class BranchSummary:
    label: str
    multiplicity: int
    delta: int
    semigroup: SemigroupData

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "multiplicity": self.multiplicity,
            "delta": self.delta,
            "semigroup": self.semigroup.to_dict(),
        }


@dataclass
class InvariantReport:
    name: str
    r: int
    per_branch: list[BranchSummary]
    intersection_matrix: list[list[int | None]]
    delta_total: int
    mu_parameterized: int
    complex_link_mu: int
    cokernel_delta: int
    oracle_mu: int | None = None
    implicit_equation: str | None = None
    oracle_note: str | None = None
    precision_used: int = 0
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "r": self.r,
            "per_branch": [b.to_dict() for b in self.per_branch],
            "intersection_matrix": self.intersection_matrix,
            "delta_total": self.delta_total,
            "cokernel_delta": self.cokernel_delta,
            "mu_parameterized": self.mu_parameterized,
            "complex_link_mu": self.complex_link_mu,
            "oracle_mu": self.oracle_mu,
            "implicit_equation": self.implicit_equation,
            "oracle_note": self.oracle_note,
            "checks": dict(self.checks),
            "consistent": self.consistent,
            "precision_used": self.precision_used,
        }


def analyze_germ(
    c: CurveGerm,
    oracle: bool = False,
    precision: int = START_PRECISION,
    cap: int = PRECISION_CAP,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> InvariantReport:
    """Full invariant report; delta is always computed by both routes."""
    require_valid(c, precision, cap)
    summaries = []
    used = 0
    for label, b in zip(c.labels(), c.branches):
        sg = value_semigroup(b, precision, cap)
        used = max(used, sg.precision_used)
        summaries.append(BranchSummary(label, branch_multiplicity(b), sg.delta, sg))
    mat = intersection_matrix(c, precision, cap)
    delta = sum(s.delta for s in summaries) + sum(
        mat[i][j] for i, j in combinations(range(c.r), 2)
    )
    coker, coker_prec = _cokernel(c.branches, precision, cap)
    used = max(used, coker_prec)
    mu = 2 * delta - c.r + 1
    report = InvariantReport(
        name=c.name,
        r=c.r,
        per_branch=summaries,
        intersection_matrix=mat,
        delta_total=delta,
        mu_parameterized=mu,
        complex_link_mu=delta - c.r + 1,
        cokernel_delta=coker,
        precision_used=used,
    )
    report.checks["delta_routes_agree"] = delta == coker
    report.checks["mu_nonnegative"] = mu >= 0
    report.checks["semigroup_symmetric"] = all(s.semigroup.conductor == 2 * s.delta for s in summaries)
    if oracle:
        try:
            curve = implicitize_curve(c)
        except OracleUnsupportedError as exc:
            report.oracle_note = f"oracle skipped: {exc}"
        else:
            report.implicit_equation = str(curve.g)
            report.oracle_mu = milnor_implicit(curve.g, cap=degree_cap)
            report.checks["oracle_mu_agrees"] = report.oracle_mu == mu
    return report
