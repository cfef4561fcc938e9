"""Implicit-equation channel: resultant implicitization and Milnor numbers.

This channel never looks at the semigroup or intersection combinatorics of
:mod:`curvegerm.branches`; it eliminates the parameter to get ``g(x, y)`` and
measures ``dim O/(g_x, g_y)`` with truncated linear algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NonIsolatedError, OracleUnsupportedError
from .germ import Branch, CurveGerm, branch_violations
from .linalg import SCREENING_PRIME, EchelonForm
from .series import BivarPoly, UniPolyOverBivar, sylvester_resultant

DEFAULT_DEGREE_CAP = 64
MAX_DEGREE_CAP = 512
START_DEGREE = 8


@dataclass(frozen=True)
class ImplicitCurve:
    g: BivarPoly
    provenance: tuple[tuple[str, BivarPoly], ...]


def implicitize_branch(b: Branch) -> BivarPoly:
    """Primitive generator of the image curve, from ``Res_t(x - x(t), y - y(t))``.

    Normalized to integer coefficients with a positive local leading term.
    """
    if not b.exact:
        raise OracleUnsupportedError("implicitization needs a polynomial parameterization, not a truncated series")
    problems = branch_violations(b, 0)
    if problems:
        raise OracleUnsupportedError("; ".join(problems))
    px, py = b.coefficient_lists()
    X, Y = BivarPoly.x(), BivarPoly.y()
    p = [X - px[0] if px else X] + [BivarPoly.const(-c) for c in px[1:]]
    q = [Y - py[0] if py else Y] + [BivarPoly.const(-c) for c in py[1:]]
    res = sylvester_resultant(UniPolyOverBivar(p), UniPolyOverBivar(q))
    return res.primitive()


def implicitize_curve(c: CurveGerm) -> ImplicitCurve:
    """Reduced equation of the whole germ: the product of the branch equations."""
    factors = []
    g = BivarPoly.const(1)
    seen: set[BivarPoly] = set()
    for label, b in zip(c.labels(), c.branches):
        f = implicitize_branch(b)
        if f in seen:
            raise OracleUnsupportedError(f"branch {label} repeats an earlier component")
        seen.add(f)
        factors.append((label, f))
        g = g * f
    return ImplicitCurve(g.primitive(), tuple(factors))


# ---------------------------------------------------------------------------
# local algebra dimension


def _local_key(m: tuple[int, int]) -> tuple[int, int]:
    return (m[0] + m[1], m[0])


def truncated_staircase(
    gens: Sequence[BivarPoly], N: int, modulus: int | None = None
) -> EchelonForm:
    """Echelon form of all monomial multiples of ``gens`` modulo ``(x, y)**N``.

    Pivots are taken in the local degree order, so the non-pivot monomials
    form a basis of ``C[x, y] / (I + m**N)``.
    """
    ech: EchelonForm = EchelonForm(key=_local_key, modulus=modulus)
    for g in gens:
        if g.is_zero():
            continue
        o = g.order()
        terms = list(g.terms.items())
        for d in range(N - o):
            for a in range(d + 1):
                b = d - a
                row = {(a + i, b + j): c for (i, j), c in terms if a + i + b + j < N}
                ech.insert(row)
    return ech


def colength_at(gens: Sequence[BivarPoly], N: int) -> int:
    """``dim C[x, y] / (I + m**N)``, computed exactly."""
    return N * (N + 1) // 2 - truncated_staircase(gens, N).rank


def _certificate_degree(ech: EchelonForm, N: int) -> int | None:
    # least k < N with every degree-k monomial a pivot: then m^k lies in
    # I + m^(k+1), hence in I by Nakayama
    piv = ech.pivots
    for k in range(N):
        if all((a, k - a) in piv for a in range(k + 1)):
            return k
    return None


def local_algebra_dimension(
    gens: Sequence[BivarPoly],
    cap: int = DEFAULT_DEGREE_CAP,
    start: int = START_DEGREE,
) -> int:
    """Colength of the ideal generated by ``gens`` in the local ring at the origin.

    Truncation degrees rise until some ``m**k`` is shown to lie in the ideal;
    the colength is then final.  A modular run locates that ``k`` cheaply and
    an exact run at degree ``k + 1`` confirms it.
    """
    cap = min(cap, MAX_DEGREE_CAP)
    gens = [g for g in gens if not g.is_zero()]
    if any(g.coeff(0, 0) for g in gens):
        return 0
    guess = None
    N = min(start, cap)
    while True:
        k = _certificate_degree(truncated_staircase(gens, N, SCREENING_PRIME), N)
        if k is not None:
            guess = k + 1
            break
        if N >= cap:
            break
        # dense modular rows make each step cost roughly N**4, so creep up
        N = min(N + max(4, N // 4), cap)
    N = guess if guess is not None else cap
    while True:
        ech = truncated_staircase(gens, N)
        if _certificate_degree(ech, N) is not None:
            return N * (N + 1) // 2 - ech.rank
        if N >= cap:
            raise NonIsolatedError(
                "local_algebra_dimension",
                f"colength still growing at truncation degree {cap} (non-isolated or cap exceeded)",
            )
        N = min(N + max(1, N // 4), cap)


def milnor_implicit(g: BivarPoly, cap: int = DEFAULT_DEGREE_CAP) -> int:
    """Milnor number ``dim O / (g_x, g_y)`` at the origin."""
    if g.coeff(0, 0) != 0:
        raise OracleUnsupportedError("g does not vanish at the origin")
    return local_algebra_dimension([g.partial("x"), g.partial("y")], cap=cap)


def oracle_milnor(c: CurveGerm, cap: int = DEFAULT_DEGREE_CAP) -> tuple[ImplicitCurve, int]:
    curve = implicitize_curve(c)
    return curve, milnor_implicit(curve.g, cap=cap)
