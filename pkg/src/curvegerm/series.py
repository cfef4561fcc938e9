"""Exact rational arithmetic on truncated power series and bivariate polynomials.

Everything here is immutable and works over ``fractions.Fraction``; there is
no floating point anywhere.  A :class:`TruncatedSeries` is a univariate series
in ``t`` known modulo ``t**precision``.  Precision propagates conservatively:
sums take the smaller precision, products take the smaller of
``precision(a) + order(b)`` and ``precision(b) + order(a)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from types import MappingProxyType
from typing import Callable, Iterable, Mapping, Sequence, TypeVar, Union

from .errors import DegenerateResultantError, UndeterminedError

Rat = Fraction
RatLike = Union[int, Fraction]

#: Products never carry more precision than this (unless an operand already does).
PRECISION_CAP = 4096


@dataclass(frozen=True)
class AtLeast:
    """Valuation of a series that is zero to its known precision."""

    bound: int

    def __str__(self) -> str:
        return f">={self.bound}"


Order = Union[int, AtLeast]


def _lower(o: Order) -> int:
    return o.bound if isinstance(o, AtLeast) else o


class TruncatedSeries:
    """A power series in ``t`` over the rationals, known modulo ``t**precision``."""

    __slots__ = ("_coeffs", "precision")

    def __init__(self, coeffs: Mapping[int, RatLike] | None = None, precision: int = 0):
        if precision < 0:
            raise ValueError("precision must be non-negative")
        clean: dict[int, Fraction] = {}
        for e, c in (coeffs or {}).items():
            if e < 0:
                raise ValueError("negative exponent")
            if e < precision and c:
                clean[e] = Fraction(c)
        object.__setattr__(self, "_coeffs", MappingProxyType(dict(sorted(clean.items()))))
        object.__setattr__(self, "precision", precision)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    def __reduce__(self):
        return (TruncatedSeries, (dict(self._coeffs), self.precision))

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[RatLike, int]], precision: int) -> TruncatedSeries:
        """Build from ``(coefficient, exponent)`` pairs; repeated exponents add up."""
        acc: dict[int, Fraction] = {}
        for c, e in terms:
            acc[e] = acc.get(e, Fraction(0)) + Fraction(c)
        return cls(acc, precision)

    @classmethod
    def zero(cls, precision: int) -> TruncatedSeries:
        return cls({}, precision)

    @classmethod
    def constant(cls, c: RatLike, precision: int = PRECISION_CAP) -> TruncatedSeries:
        return cls({0: c}, precision)

    @classmethod
    def monomial(cls, c: RatLike, e: int, precision: int) -> TruncatedSeries:
        return cls({e: c}, precision)

    # -- inspection -----------------------------------------------------

    @property
    def coeffs(self) -> Mapping[int, Fraction]:
        return self._coeffs

    def coeff(self, e: int) -> Fraction:
        if e >= self.precision:
            raise UndeterminedError("coeff", f"t^{e} is beyond precision {self.precision}")
        return self._coeffs.get(e, Fraction(0))

    def order(self) -> Order:
        """Least exponent with nonzero coefficient, or ``AtLeast(precision)``."""
        if not self._coeffs:
            return AtLeast(self.precision)
        return next(iter(self._coeffs))

    def is_zero(self) -> bool:
        """True if the series vanishes to its known precision."""
        return not self._coeffs

    def degree(self) -> int:
        """Largest exponent carried; -1 for the zero series."""
        return max(self._coeffs, default=-1)

    def exponents(self) -> list[int]:
        return list(self._coeffs)

    def truncate(self, precision: int) -> TruncatedSeries:
        return TruncatedSeries(self._coeffs, min(precision, self.precision))

    def with_precision(self, precision: int) -> TruncatedSeries:
        """Reinterpret the stored terms at a new precision.

        Only meaningful when the stored terms are a complete polynomial, as for
        exact branch parameterizations.
        """
        return TruncatedSeries(self._coeffs, precision)

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: TruncatedSeries | RatLike) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(other, self.precision)
        prec = min(self.precision, other.precision)
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return TruncatedSeries(out, prec)

    __radd__ = __add__

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries({e: -c for e, c in self._coeffs.items()}, self.precision)

    def __sub__(self, other: TruncatedSeries | RatLike) -> TruncatedSeries:
        return self + (-other)

    def __rsub__(self, other: RatLike) -> TruncatedSeries:
        return (-self) + other

    def __mul__(self, other: TruncatedSeries | RatLike) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            c = Fraction(other)
            return TruncatedSeries({e: v * c for e, v in self._coeffs.items()}, self.precision)
        oa, ob = _lower(self.order()), _lower(other.order())
        prec = min(self.precision + ob, other.precision + oa)
        prec = min(prec, max(PRECISION_CAP, self.precision, other.precision))
        out: dict[int, Fraction] = {}
        b_items = list(other._coeffs.items())
        for ea, ca in self._coeffs.items():
            for eb, cb in b_items:
                e = ea + eb
                if e >= prec:
                    break
                out[e] = out.get(e, Fraction(0)) + ca * cb
        return TruncatedSeries(out, prec)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> TruncatedSeries:
        if k < 0:
            raise ValueError("negative power")
        result = TruncatedSeries.constant(1, max(PRECISION_CAP, self.precision))
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift_down(self, k: int) -> TruncatedSeries:
        """Divide by ``t**k``; the low coefficients must be known zeros."""
        if k > self.precision or any(e < k for e in self._coeffs):
            raise UndeterminedError("shift_down", f"series not divisible by t^{k}")
        return TruncatedSeries({e - k: c for e, c in self._coeffs.items()}, self.precision - k)

    def inverse(self, precision: int | None = None) -> TruncatedSeries:
        """Multiplicative inverse of a unit (nonzero constant term).

        ``precision`` optionally computes fewer coefficients than are known.
        """
        c0 = self._coeffs.get(0)
        if c0 is None or self.precision == 0:
            raise ZeroDivisionError("series is not a unit")
        prec = self.precision if precision is None else min(precision, self.precision)
        inv0 = 1 / c0
        terms = [(e, c) for e, c in self._coeffs.items() if e > 0]
        if not terms:
            return TruncatedSeries({0: inv0}, prec)
        out = [inv0]
        for k in range(1, prec):
            s = Fraction(0)
            for e, c in terms:
                if e > k:
                    break
                s += c * out[k - e]
            out.append(-s * inv0)
        return TruncatedSeries(dict(enumerate(out)), prec)

    def exact_div(self, other: TruncatedSeries) -> TruncatedSeries:
        """Quotient ``self / other`` in the power-series ring.

        Requires ``order(other)`` to be determined and no larger than the
        order of ``self``; precision drops by ``order(other)``.
        """
        k = other.order()
        if isinstance(k, AtLeast):
            raise UndeterminedError("exact_div", "divisor vanishes to its precision")
        num = self.shift_down(k) if self.precision >= k else TruncatedSeries.zero(0)
        return num * other.shift_down(k).inverse(max(num.precision, 1))

    # -- comparison / display -------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.precision == other.precision and dict(self._coeffs) == dict(other._coeffs)

    def __hash__(self) -> int:
        return hash((self.precision, tuple(self._coeffs.items())))

    def __repr__(self) -> str:
        return f"TruncatedSeries({dict(self._coeffs)!r}, precision={self.precision})"

    def __str__(self) -> str:
        body = _format_terms(((c, _mono_t(e)) for e, c in self._coeffs.items()))
        return f"{body} + O(t^{self.precision})"


def series_order(s: TruncatedSeries) -> Order:
    return s.order()


def series_arith(a: TruncatedSeries, b: TruncatedSeries, op: str) -> TruncatedSeries:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# bivariate polynomials


def _mono_t(e: int) -> str:
    return "" if e == 0 else ("t" if e == 1 else f"t^{e}")


def _mono_xy(a: int, b: int) -> str:
    parts = []
    if a:
        parts.append("x" if a == 1 else f"x^{a}")
    if b:
        parts.append("y" if b == 1 else f"y^{b}")
    return "*".join(parts)


def _format_terms(terms: Iterable[tuple[Fraction, str]]) -> str:
    out = ""
    for c, mono in terms:
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if mono:
            coef = "" if mag == 1 else f"{mag}*"
            piece = coef + mono
        else:
            piece = str(mag)
        if not out:
            out = piece if sign == "+" else "-" + piece
        else:
            out += f" {sign} {piece}"
    return out or "0"


def _local_key(m: tuple[int, int]) -> tuple[int, int]:
    # lowest total degree first; ties broken toward higher powers of x
    return (m[0] + m[1], -m[0])


class BivarPoly:
    """Polynomial in ``x, y`` with rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], RatLike] | None = None):
        clean = {}
        for (a, b), c in (terms or {}).items():
            if a < 0 or b < 0:
                raise ValueError("negative exponent")
            if c:
                clean[(a, b)] = Fraction(c)
        object.__setattr__(self, "_terms", MappingProxyType(clean))

    def __setattr__(self, name, value):
        raise AttributeError("BivarPoly is immutable")

    def __reduce__(self):
        return (BivarPoly, (dict(self._terms),))

    @classmethod
    def x(cls) -> BivarPoly:
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> BivarPoly:
        return cls({(0, 1): 1})

    @classmethod
    def const(cls, c: RatLike) -> BivarPoly:
        return cls({(0, 0): c})

    @property
    def terms(self) -> Mapping[tuple[int, int], Fraction]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, a: int, b: int) -> Fraction:
        return self._terms.get((a, b), Fraction(0))

    def degree_x(self) -> int:
        return max((a for a, _ in self._terms), default=-1)

    def degree_y(self) -> int:
        return max((b for _, b in self._terms), default=-1)

    def total_degree(self) -> int:
        return max((a + b for a, b in self._terms), default=-1)

    def order(self) -> int:
        """Lowest total degree of a term (the multiplicity at the origin)."""
        if not self._terms:
            raise ValueError("zero polynomial has no order")
        return min(a + b for a, b in self._terms)

    def local_leading_term(self) -> tuple[tuple[int, int], Fraction]:
        m = min(self._terms, key=_local_key)
        return m, self._terms[m]

    def __add__(self, other: BivarPoly | RatLike) -> BivarPoly:
        if not isinstance(other, BivarPoly):
            other = BivarPoly.const(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return BivarPoly(out)

    __radd__ = __add__

    def __neg__(self) -> BivarPoly:
        return BivarPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: BivarPoly | RatLike) -> BivarPoly:
        return self + (-other)

    def __rsub__(self, other: RatLike) -> BivarPoly:
        return (-self) + other

    def __mul__(self, other: BivarPoly | RatLike) -> BivarPoly:
        if not isinstance(other, BivarPoly):
            c = Fraction(other)
            return BivarPoly({m: v * c for m, v in self._terms.items()})
        out: dict[tuple[int, int], Fraction] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                m = (a1 + a2, b1 + b2)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return BivarPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> BivarPoly:
        result = BivarPoly.const(1)
        for _ in range(k):
            result = result * self
        return result

    def exact_div(self, other: BivarPoly) -> BivarPoly:
        """Quotient when ``other`` divides ``self`` exactly; raises otherwise."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lex = lambda m: m  # noqa: E731
        lead = max(other._terms, key=lex)
        lc = other._terms[lead]
        rem = dict(self._terms)
        quot: dict[tuple[int, int], Fraction] = {}
        while rem:
            m = max(rem, key=lex)
            da, db = m[0] - lead[0], m[1] - lead[1]
            if da < 0 or db < 0:
                raise ArithmeticError("inexact polynomial division")
            q = rem[m] / lc
            quot[(da, db)] = q
            for (a, b), c in other._terms.items():
                k = (a + da, b + db)
                v = rem.get(k, Fraction(0)) - q * c
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return BivarPoly(quot)

    def partial(self, var: str) -> BivarPoly:
        if var == "x":
            return BivarPoly({(a - 1, b): a * c for (a, b), c in self._terms.items() if a})
        if var == "y":
            return BivarPoly({(a, b - 1): b * c for (a, b), c in self._terms.items() if b})
        raise ValueError(f"unknown variable {var!r}")

    def primitive(self) -> BivarPoly:
        """Integer-coefficient primitive associate with positive local leading term.

        The local leading term is the one of lowest total degree, ties going to
        the higher power of ``x``.
        """
        if not self._terms:
            return self
        den = lcm(*(c.denominator for c in self._terms.values()))
        ints = {m: int(c * den) for m, c in self._terms.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        _, lc = min(ints.items(), key=lambda kv: _local_key(kv[0]))
        sign = 1 if lc > 0 else -1
        return BivarPoly({m: sign * v // g for m, v in ints.items()})

    def eval_series(self, sx: TruncatedSeries, sy: TruncatedSeries) -> TruncatedSeries:
        return poly_eval_series(self, sx, sy)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = BivarPoly.const(other)
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return dict(self._terms) == dict(other._terms)

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"BivarPoly({dict(self._terms)!r})"

    def __str__(self) -> str:
        ordered = sorted(self._terms.items(), key=lambda kv: _local_key(kv[0]))
        return _format_terms((c, _mono_xy(*m)) for m, c in ordered)


def poly_partial(p: BivarPoly, var: str) -> BivarPoly:
    return p.partial(var)


def poly_eval_series(p: BivarPoly, sx: TruncatedSeries, sy: TruncatedSeries) -> TruncatedSeries:
    """Substitute series for ``x`` and ``y``; precision propagates through the ring ops."""
    if p.is_zero():
        return TruncatedSeries.zero(max(PRECISION_CAP, sx.precision, sy.precision))
    xs = [TruncatedSeries.constant(1, max(PRECISION_CAP, sx.precision))]
    ys = [TruncatedSeries.constant(1, max(PRECISION_CAP, sy.precision))]
    for _ in range(p.degree_x()):
        xs.append(xs[-1] * sx)
    for _ in range(p.degree_y()):
        ys.append(ys[-1] * sy)
    total: TruncatedSeries | None = None
    for (a, b), c in p.terms.items():
        term = (xs[a] * ys[b]) * c
        total = term if total is None else total + term
    return total


# ---------------------------------------------------------------------------
# univariate polynomials over a coefficient ring, Sylvester resultants

R = TypeVar("R")


class UniPolyOverBivar:
    """Polynomial in an eliminated variable ``s`` whose coefficients are BivarPolys.

    ``coeffs[k]`` multiplies ``s**k``.  Trailing zero coefficients are dropped.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[BivarPoly | RatLike]):
        cs = [c if isinstance(c, BivarPoly) else BivarPoly.const(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        if not cs:
            raise ValueError("zero polynomial")
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPolyOverBivar is immutable")

    def __reduce__(self):
        return (UniPolyOverBivar, (list(self.coeffs),))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __repr__(self) -> str:
        return f"UniPolyOverBivar({[str(c) for c in self.coeffs]})"


def sylvester_matrix(p: Sequence[R], q: Sequence[R], zero: R) -> list[list[R]]:
    """Sylvester matrix of two coefficient lists (index = power, highest nonzero)."""
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    rows: list[list[R]] = []
    for i in range(n):
        row = [zero] * size
        for k, c in enumerate(reversed(p)):
            row[i + k] = c
        rows.append(row)
    for j in range(m):
        row = [zero] * size
        for k, c in enumerate(reversed(q)):
            row[j + k] = c
        rows.append(row)
    return rows


def bareiss_determinant(
    matrix: list[list[R]],
    one: R,
    is_zero: Callable[[R], bool],
    divide: Callable[[R, R], R],
) -> R:
    """Fraction-free determinant over an integral domain with exact division."""
    n = len(matrix)
    if n == 0:
        return one
    M = [row[:] for row in matrix]
    sign = 1
    prev = one
    for k in range(n - 1):
        if is_zero(M[k][k]):
            for i in range(k + 1, n):
                if not is_zero(M[i][k]):
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return one * 0
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = divide(M[i][j] * pivot - M[i][k] * M[k][j], prev)
        prev = pivot
    det = M[n - 1][n - 1]
    return det if sign > 0 else -det


def sylvester_resultant(p: UniPolyOverBivar, q: UniPolyOverBivar) -> BivarPoly:
    """Determinant of the Sylvester matrix of ``p`` and ``q`` in the eliminated variable.

    Swapping the arguments multiplies the result by ``(-1)**(deg p * deg q)``.
    """
    if p.degree == 0 and q.degree == 0:
        raise DegenerateResultantError("both polynomials are constant in the eliminated variable")
    M = sylvester_matrix(list(p.coeffs), list(q.coeffs), BivarPoly())
    return bareiss_determinant(M, BivarPoly.const(1), BivarPoly.is_zero, BivarPoly.exact_div)


def series_determinant(matrix: list[list[TruncatedSeries]]) -> TruncatedSeries:
    """Determinant over the truncated series ring, pivoting on least valuation.

    Every pivot has the smallest order in the remaining block, so all
    eliminations divide exactly in the power-series ring.  When the remaining
    block vanishes to its precision the result is a zero series carrying the
    guaranteed lower bound on the order as its precision.
    """
    n = len(matrix)
    M = [row[:] for row in matrix]
    sign = 1
    det = TruncatedSeries.constant(1, PRECISION_CAP)
    for step in range(n):
        best = None
        floor = None
        for i in range(step, n):
            for j in range(step, n):
                o = M[i][j].order()
                lo = _lower(o)
                floor = lo if floor is None else min(floor, lo)
                if isinstance(o, int) and (best is None or o < best[0]):
                    best = (o, i, j)
        if best is None or best[0] > floor:
            shift = _lower(det.order())
            return TruncatedSeries.zero(shift + (n - step) * floor)
        _, i, j = best
        if i != step:
            M[step], M[i] = M[i], M[step]
            sign = -sign
        if j != step:
            for row in M:
                row[step], row[j] = row[j], row[step]
            sign = -sign
        pivot = M[step][step]
        for r in range(step + 1, n):
            # zero-to-precision entries still cost precision in their row
            f = M[r][step].exact_div(pivot)
            for c in range(step + 1, n):
                M[r][c] = M[r][c] - f * M[step][c]
        det = det * pivot
    return det if sign > 0 else -det


# ---------------------------------------------------------------------------
# univariate polynomial gcd over Q (coefficient lists, index = power)


def _strip(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def upoly_gcd(a: Sequence[RatLike], b: Sequence[RatLike]) -> list[Fraction]:
    """Monic gcd of two univariate rational polynomials; [] when both are zero."""
    a = _strip([Fraction(c) for c in a])
    b = _strip([Fraction(c) for c in b])
    while b:
        r = a[:]
        while len(r) >= len(b) and r:
            q = r[-1] / b[-1]
            shift = len(r) - len(b)
            for k, c in enumerate(b):
                r[shift + k] -= q * c
            _strip(r)
        a, b = b, r
    if not a:
        return []
    lc = a[-1]
    return [c / lc for c in a]
