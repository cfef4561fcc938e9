"""Reference computations that share no code with curvegerm.

Everything here goes through sympy or plain enumeration, so agreement with
the package is evidence rather than tautology.
"""

from __future__ import annotations

from math import gcd

import sympy as sp

t, s, X, Y = sp.symbols("t s x y")


def semigroup_gaps(a: int, b: int) -> list[int]:
    """Gaps of the numerical semigroup generated by coprime ``a`` and ``b``."""
    assert gcd(a, b) == 1
    bound = (a - 1) * (b - 1)
    reach = {i * a + j * b for i in range(b + 1) for j in range(a + 1)}
    return [v for v in range(bound) if v not in reach]


def brieskorn_mu(a: int, b: int) -> int:
    """Milnor number of ``y**a - x**b``."""
    return (a - 1) * (b - 1)


def as_sympy(terms: dict[int, int], var=t):
    return sum(sp.Rational(c) * var**e for e, c in terms.items())


def sympy_implicit(x_terms: dict[int, int], y_terms: dict[int, int]):
    """Primitive ``Res_t(x - x(t), y - y(t))`` as a sympy polynomial in x, y."""
    res = sp.resultant(X - as_sympy(x_terms), Y - as_sympy(y_terms), t)
    poly = sp.Poly(sp.expand(res), X, Y)
    _, prim = poly.primitive()
    return prim


def t_order(expr, var=t) -> int | None:
    """Exponent of the lowest nonzero power of ``var``; None for zero."""
    expr = sp.expand(expr)
    if expr == 0:
        return None
    poly = sp.Poly(expr, var)
    return min(m[0] for m in poly.monoms())


def sympy_intersection(bi: tuple[dict, dict], bj: tuple[dict, dict]) -> int:
    """``ord_t Res_s(x_j(s) - x_i(t), y_j(s) - y_i(t))``."""
    xi, yi = as_sympy(bi[0]), as_sympy(bi[1])
    xj, yj = as_sympy(bj[0], s), as_sympy(bj[1], s)
    res = sp.resultant(xj - xi, yj - yi, s)
    return t_order(res)


def sympy_value_semigroup(x_terms: dict[int, int], y_terms: dict[int, int], degree: int, precision: int) -> set[int]:
    """Orders of ``t`` reached by combinations of ``x**a * y**b`` (a + b <= degree).

    Plain row reduction of the coefficient matrix with columns sorted by
    exponent; pivot columns are the achieved orders below ``precision``.
    """
    xs, ys = as_sympy(x_terms), as_sympy(y_terms)
    rows = []
    for d in range(degree + 1):
        for a in range(d + 1):
            p = sp.Poly(sp.expand(xs**a * ys ** (d - a)), t)
            coeffs = [0] * precision
            for (e,), c in zip(p.monoms(), p.coeffs()):
                if e < precision:
                    coeffs[e] = c
            rows.append(coeffs)
    _, pivots = sp.Matrix(rows).rref()
    return set(pivots)


def sympy_milnor_brute(g, degree: int) -> int:
    """``dim Q[x, y] / ((g_x, g_y) + m**degree)`` via a sympy rank computation."""
    gx, gy = sp.diff(g, X), sp.diff(g, Y)
    cols = [(a, d - a) for d in range(degree) for a in range(d + 1)]
    index = {m: i for i, m in enumerate(cols)}
    rows = []
    for h in (gx, gy):
        for d in range(degree):
            for a in range(d + 1):
                mult = sp.Poly(sp.expand(h * X**a * Y ** (d - a)), X, Y)
                row = [0] * len(cols)
                for m, c in zip(mult.monoms(), mult.coeffs()):
                    if m in index:
                        row[index[m]] = c
                rows.append(row)
    return len(cols) - sp.Matrix(rows).rank()
