"""Incremental sparse row echelon forms.

Rows are dicts ``key -> coefficient``.  The pivot of a row is its smallest key
under a caller-supplied sort key, so the same kernel serves the t-adic
filtrations (pivot = lowest exponent) and the local degree order on monomials.

Over the rationals rows are kept as primitive integer vectors, which is much
cheaper than carrying ``Fraction`` entries.  A prime modulus can be given
instead; modular forms are only ever used to guess where to look, never to
produce an answer.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Generic, Hashable, Mapping, TypeVar

K = TypeVar("K", bound=Hashable)

SCREENING_PRIME = 2**61 - 1


def _as_int_row(row: Mapping[K, int | Fraction]) -> dict[K, int]:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction) and v.denominator != 1:
            den = lcm(den, v.denominator)
    out = {}
    for k, v in row.items():
        iv = int(v * den)
        if iv:
            out[k] = iv
    return out


def _primitive(row: dict[K, int]) -> dict[K, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


class EchelonForm(Generic[K]):
    """Row space under construction; rows are added one at a time."""

    def __init__(self, key: Callable[[K], object] | None = None, modulus: int | None = None):
        self._key = key or (lambda k: k)
        self._mod = modulus
        self._rows: dict[K, dict[K, int]] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> frozenset[K]:
        return frozenset(self._rows)

    def row(self, pivot: K) -> dict[K, int]:
        return dict(self._rows[pivot])

    def insert(self, row: Mapping[K, int | Fraction]) -> dict[K, int] | None:
        """Reduce ``row`` against the basis; keep and return it if independent."""
        if self._mod is None:
            reduced = self._reduce_exact(_primitive(_as_int_row(row)))
        else:
            reduced = self._reduce_mod(row)
        if reduced is None:
            return None
        p = min(reduced, key=self._key)
        self._rows[p] = reduced
        return dict(reduced)

    def _reduce_exact(self, row: dict[K, int]) -> dict[K, int] | None:
        key, rows = self._key, self._rows
        while row:
            p = min(row, key=key)
            b = rows.get(p)
            if b is None:
                if row[p] < 0:
                    row = {k: -v for k, v in row.items()}
                return row
            a, c = row[p], b[p]
            g = gcd(a, c)
            a, c = a // g, c // g
            new = {k: v * c for k, v in row.items()} if c != 1 else dict(row)
            for k, v in b.items():
                nv = new.get(k, 0) - a * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            row = _primitive(new)
        return None

    def _reduce_mod(self, row: Mapping[K, int | Fraction]) -> dict[K, int] | None:
        m = self._mod
        work: dict[K, int] = {}
        for k, v in row.items():
            v = Fraction(v)
            iv = v.numerator * pow(v.denominator, -1, m) % m
            if iv:
                work[k] = iv
        key, rows = self._key, self._rows
        while work:
            p = min(work, key=key)
            b = rows.get(p)
            if b is None:
                inv = pow(work[p], -1, m)
                return {k: v * inv % m for k, v in work.items()}
            a = work[p]
            for k, v in b.items():
                nv = (work.get(k, 0) - a * v) % m
                if nv:
                    work[k] = nv
                else:
                    work.pop(k, None)
        return None
