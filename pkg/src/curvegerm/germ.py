"""Parameterized branches and multi-germs of plane curves."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

from .series import AtLeast, RatLike, TruncatedSeries, upoly_gcd


@dataclass(frozen=True)
class Branch:
    """One branch ``t -> (x(t), y(t))`` of a plane curve germ.

    With ``exact=True`` the stored terms are the whole polynomial
    parameterization and can be re-read at any precision.  Otherwise the
    components are genuine series known only modulo ``t**x.precision`` (and
    ``t**y.precision``).
    """

    x: TruncatedSeries
    y: TruncatedSeries
    label: str = ""
    exact: bool = True

    @classmethod
    def polynomial(
        cls,
        x: Mapping[int, RatLike],
        y: Mapping[int, RatLike],
        label: str = "",
    ) -> Branch:
        """Exact branch from ``{exponent: coefficient}`` maps."""
        px = TruncatedSeries(x, max(x, default=0) + 1)
        py = TruncatedSeries(y, max(y, default=0) + 1)
        return cls(px, py, label, True)

    @classmethod
    def truncated(
        cls,
        x: Mapping[int, RatLike],
        y: Mapping[int, RatLike],
        precision: int,
        label: str = "",
    ) -> Branch:
        """Series branch known modulo ``t**precision``."""
        return cls(TruncatedSeries(x, precision), TruncatedSeries(y, precision), label, False)

    @property
    def known_precision(self) -> int | None:
        """None for exact branches, else the precision of the data."""
        if self.exact:
            return None
        return min(self.x.precision, self.y.precision)

    def at_precision(self, n: int) -> tuple[TruncatedSeries, TruncatedSeries]:
        if self.exact:
            return self.x.with_precision(n), self.y.with_precision(n)
        return self.x.truncate(n), self.y.truncate(n)

    def coefficient_lists(self) -> tuple[list[Fraction], list[Fraction]]:
        """Dense coefficient lists (index = power) of the stored terms."""
        out = []
        for s in (self.x, self.y):
            dense = [Fraction(0)] * (s.degree() + 1)
            for e, c in s.coeffs.items():
                dense[e] = c
            out.append(dense)
        return out[0], out[1]

    def exponent_gcd(self) -> int:
        g = 0
        for e in list(self.x.coeffs) + list(self.y.coeffs):
            g = gcd(g, e)
        return g

    def with_label(self, label: str) -> Branch:
        return Branch(self.x, self.y, label, self.exact)

    def __str__(self) -> str:
        def show(s: TruncatedSeries) -> str:
            text = str(s)
            return text.rsplit(" + O(", 1)[0] if self.exact else text

        return f"({show(self.x)}, {show(self.y)})"


@dataclass(frozen=True)
class CurveGerm:
    branches: tuple[Branch, ...]
    name: str = ""
    precision_hint: int | None = field(default=None, compare=False)

    def __post_init__(self):
        if not self.branches:
            raise ValueError("a germ needs at least one branch")
        object.__setattr__(self, "branches", tuple(self.branches))

    @property
    def r(self) -> int:
        return len(self.branches)

    def labels(self) -> list[str]:
        return [b.label or f"b{i}" for i, b in enumerate(self.branches)]

    def is_polynomial(self) -> bool:
        return all(b.exact for b in self.branches)


def germ(*branches: Branch, name: str = "") -> CurveGerm:
    return CurveGerm(tuple(branches), name)


# ---------------------------------------------------------------------------
# per-branch hypothesis checks


def component_orders(b: Branch) -> tuple[object, object]:
    return b.x.order(), b.y.order()


def map_degree(b: Branch) -> int:
    """Degree of ``t -> (x(t), y(t))`` onto its image, for exact branches.

    Counts the common roots of ``x(t) - x(t0)`` and ``y(t) - y(t0)`` for
    sample points ``t0``.  A degree-one map has at most ``(D-1)(D-2) + D``
    parameters with a larger fiber (double points plus ramification), so trying
    one more sample than that is conclusive.
    """
    px, py = b.coefficient_lists()
    D = max(len(px), len(py)) - 1
    budget = max((D - 1) * (D - 2) + D + 1, 1)
    best = None
    for k in range(budget):
        t0 = Fraction(k + 2, 2 * k + 3)
        fx = list(px) or [Fraction(0)]
        fy = list(py) or [Fraction(0)]
        fx[0] -= sum(c * t0**e for e, c in enumerate(px))
        fy[0] -= sum(c * t0**e for e, c in enumerate(py))
        deg = len(upoly_gcd(fx, fy)) - 1
        best = deg if best is None else min(best, deg)
        if best <= 1:
            break
    return best


def returns_to_origin(b: Branch) -> bool:
    """True if an exact parameterization hits the origin at some ``t != 0``."""
    px, py = b.coefficient_lists()
    g = upoly_gcd(px, py)
    if not g:
        return False
    # g is monic; it must be a pure power of t
    return any(c != 0 for c in g[:-1])


def branch_violations(b: Branch, index: int) -> list[str]:
    """Hypothesis violations visible from a single branch."""
    tag = f"branch {index}"
    if b.label:
        tag += f" ({b.label})"
    out = []
    ox, oy = component_orders(b)
    if ox == 0 or oy == 0:
        out.append(f"{tag}: not a germ at origin (nonzero constant term)")
        return out
    if isinstance(ox, AtLeast) and isinstance(oy, AtLeast):
        out.append(f"{tag}: both components vanish to working precision")
        return out
    g = b.exponent_gcd()
    if g > 1:
        out.append(f"{tag}: not generically one-to-one (gcd of exponents is {g})")
        return out
    if b.exact:
        deg = map_degree(b)
        if deg > 1:
            out.append(f"{tag}: not generically one-to-one (parameterization has degree {deg})")
        elif returns_to_origin(b):
            out.append(f"{tag}: parameterization returns to the origin away from t = 0")
    return out
