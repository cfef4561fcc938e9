"""Integer bookkeeping for Milnor fibers of functions on parameterized hypersurfaces.

Given ``F: (W, S) -> (X, 0)`` finite and generically one-to-one onto a
hypersurface ``X`` in ``C^(n+1)``, ``r = |S|``, and ``h: (X, 0) -> (C, 0)``,
the reduced Euler characteristic of the Milnor fiber of ``h`` satisfies

    chi~(M_h) = (r - 1) + sum_i chi~(M_{h o F, p_i}) - sum_{k>=2} (k - 1) chi(X_k & M_h)

where ``X_k`` is the locus of points with exactly ``k`` preimages.  This
module evaluates that relation, its isolated-critical-point specialization,
and the rank profiles of the stalks of the pushed-forward constant sheaf and
of the multiple-point complex (its kernel).  Only ranks are modeled; torsion
and monodromy are not.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import InconsistentTableError, NotRealizableError


@dataclass(frozen=True)
class StratumTable:
    """Finite data consumed by the Euler relation.

    ``chi_Xk[k]`` is the Euler characteristic of ``X_k`` meeting the Milnor
    fiber of ``h``.  ``upstairs`` holds one entry per point of ``S``: the
    reduced Euler characteristic of the Milnor fiber of ``h o F`` there, or,
    when ``isolated`` is set, its Milnor number.
    """

    n: int
    r: int
    chi_Xk: Mapping[int, int] = field(default_factory=dict)
    upstairs: tuple[int, ...] = ()
    isolated: bool = False
    s: int | None = None
    # recorded, never checked: the long exact sequence is compatible with monodromy
    monodromy_compatible: bool = True

    def __post_init__(self):
        object.__setattr__(self, "chi_Xk", MappingProxyType(dict(self.chi_Xk)))
        object.__setattr__(self, "upstairs", tuple(self.upstairs))
        problems = self.violations()
        if problems:
            raise ValueError("; ".join(problems))

    def violations(self) -> list[str]:
        out = []
        if self.n < 1:
            out.append("n must be >= 1")
        if self.r < 1:
            out.append("r must be >= 1")
        if any(k < 2 for k in self.chi_Xk):
            out.append("chi_Xk keys must be >= 2")
        if self.upstairs and len(self.upstairs) != self.r:
            out.append(f"upstairs has {len(self.upstairs)} entries for r = {self.r}")
        if self.isolated:
            if any(mu < 0 for mu in self.upstairs):
                out.append("isolated table: upstairs Milnor numbers must be >= 0")
            if self.s not in (None, 0):
                out.append("isolated table requires s = 0")
        return out

    def __reduce__(self):
        args = (self.n, self.r, dict(self.chi_Xk), self.upstairs, self.isolated, self.s, self.monodromy_compatible)
        return (StratumTable, args)

    def upstairs_reduced_chi(self) -> list[int]:
        if not self.isolated:
            return list(self.upstairs)
        sign = (-1) ** (self.n - 1)
        return [sign * mu for mu in self.upstairs]


def multiple_point_chi(t: StratumTable) -> int:
    """``sum_{k>=2} (k - 1) chi(X_k & M_h)``: Euler characteristic of N on D & M_h."""
    return stratum_sum_chi({"chi": chi, "stalk_chi": k - 1} for k, chi in t.chi_Xk.items())


def euler_star(t: StratumTable) -> int:
    """Reduced Euler characteristic of the Milnor fiber of ``h`` at the origin."""
    return (t.r - 1) + sum(t.upstairs_reduced_chi()) - multiple_point_chi(t)


def mu_isolated(t: StratumTable) -> int:
    """Milnor number of ``h`` when the origin is an isolated critical point.

    Raises InconsistentTableError on a negative value: such a table cannot
    come from a function with an isolated critical point.
    """
    if not t.isolated:
        raise InconsistentTableError("mu_isolated needs a table flagged isolated with upstairs Milnor numbers")
    sign = (-1) ** (t.n - 1)
    mu = sign * ((t.r - 1) - multiple_point_chi(t)) + sum(t.upstairs)
    if mu < 0:
        raise InconsistentTableError(f"inconsistent table: Milnor number would be {mu} < 0")
    return mu


def unfolding_mu_plane_curve(r: int, delta: int) -> int:
    """``2*delta - r + 1``, the Milnor number of a plane curve with r branches."""
    if r < 1:
        raise ValueError("r must be >= 1")
    mu = 2 * delta - r + 1
    if mu < 0:
        raise NotRealizableError(f"not realizable: 2*{delta} - {r} + 1 = {mu} < 0")
    return mu


def reduced_hyper_euler(r: int, chi: int) -> int:
    """Euler characteristic after dropping ``r - 1`` from the degree-zero rank."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return chi - (r - 1)


def nodes_only_table(r: int, delta: int) -> StratumTable:
    """Table of a one-parameter unfolding whose generic fiber has only ``delta`` nodes."""
    return StratumTable(n=2, r=r, chi_Xk={2: delta} if delta else {}, upstairs=(0,) * r, isolated=True, s=0)


def stratum_sum_chi(strata: Iterable[Mapping[str, int]]) -> int:
    """``sum_S chi(S) * chi(stalk at S)`` over a finite stratification."""
    return sum(s["chi"] * s["stalk_chi"] for s in strata)


# ---------------------------------------------------------------------------
# rank profiles


class RankProfile(Mapping[int, int]):
    """Finite map ``degree -> rank`` of free cohomology; zero ranks are dropped."""

    __slots__ = ("_ranks",)

    def __init__(self, ranks: Mapping[int, int] | None = None):
        clean = {}
        for k, v in (ranks or {}).items():
            if v < 0:
                raise ValueError("ranks are non-negative")
            if v:
                clean[int(k)] = int(v)
        self._ranks = dict(sorted(clean.items()))

    def __getitem__(self, k: int) -> int:
        return self._ranks.get(k, 0)

    def __iter__(self):
        return iter(self._ranks)

    def __len__(self) -> int:
        return len(self._ranks)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Mapping):
            return self._ranks == {k: v for k, v in other.items() if v}
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self._ranks.items()))

    def __repr__(self) -> str:
        return f"RankProfile({self._ranks})"

    def euler(self) -> int:
        return sum((-1) ** (k % 2) * v for k, v in self._ranks.items())

    def mirrored(self) -> RankProfile:
        return RankProfile({-k: v for k, v in self._ranks.items()})


@dataclass(frozen=True)
class MultiplicityPoint:
    """A point of the image, recorded by its number of preimages."""

    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m(x) >= 1")


def _m(p: MultiplicityPoint | int) -> int:
    return p.m if isinstance(p, MultiplicityPoint) else MultiplicityPoint(p).m


def stalk_profile_I(p: MultiplicityPoint | int, n: int) -> RankProfile:
    """Stalk of the pushed-forward shifted constant sheaf: ``Z^m`` in degree ``-n``."""
    return RankProfile({-n: _m(p)})


def costalk_profile_I(p: MultiplicityPoint | int, n: int) -> RankProfile:
    return RankProfile({n: _m(p)})


def stalk_profile_N(p: MultiplicityPoint | int, n: int) -> RankProfile:
    """Stalk of the multiple-point complex: ``Z^(m-1)`` in degree ``1 - n``."""
    return RankProfile({1 - n: _m(p) - 1})


def constant_sheaf_stalk(n: int) -> RankProfile:
    """Stalk of ``Z_X[n]``."""
    return RankProfile({-n: 1})


def degree_range_check(n: int, s: int, profile: Mapping[int, int]) -> bool:
    """Whether all nonzero ranks sit in degrees ``n-1-s .. n-1``."""
    lo, hi = n - 1 - s, n - 1
    return all(lo <= k <= hi for k, v in profile.items() if v)


def isolated_profile(n: int, mu: int) -> RankProfile:
    """Reduced cohomology of a bouquet of ``mu`` spheres of dimension ``n - 1``."""
    return RankProfile({n - 1: mu})


def ledger_lines(t: StratumTable) -> list[tuple[str, int]]:
    """Named quantities printed by the ``euler`` command, in order."""
    chi_n = multiple_point_chi(t)
    lines = [
        ("reduced Euler characteristic of the Milnor fiber", euler_star(t)),
        ("Euler characteristic of the multiple-point complex", chi_n),
        ("  reduced by r - 1 in degree zero", reduced_hyper_euler(t.r, chi_n)),
    ]
    if t.isolated:
        mu = mu_isolated(t)
        lines.append(("Milnor number mu_0(h)", mu))
        if t.n == 2 and set(t.chi_Xk) <= {2} and not any(t.upstairs):
            delta = t.chi_Xk.get(2, 0)
            lines.append(("plane-curve companion mu(g_0) = mu_0(h) + delta", mu + delta))
    return lines
