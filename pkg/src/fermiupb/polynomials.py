"""Exact polynomial bookkeeping behind the Vandermonde generalized FUPB.

For an increasing N-subset ``p`` of ``1..M``, the Plücker coordinate of the
Vandermonde member labelled ``t`` is

    Delta_p(t) = det[(t + r - 1)^(p_s - 1)]_{r,s=1..N},

an integer polynomial in ``t``.  Dividing the generalized Vandermonde
determinant by the ordinary one gives a Schur polynomial, which is why the
quotient has non-negative coefficients.
"""

from __future__ import annotations

import math

import sympy as sp

from .exterior import NVector, combinations

__all__ = [
    "T",
    "delta_polynomial",
    "delta_degree",
    "vandermonde_constant",
    "vandermonde_quotient",
    "generalized_vandermonde_quotient",
    "g_polynomial",
]

T = sp.Symbol("t")


def _check_subset(n: int, m: int, p) -> tuple[int, ...]:
    p = tuple(int(x) for x in p)
    if len(p) != n or any(a >= b for a, b in zip(p, p[1:])) or p[0] < 1 or p[-1] > m:
        raise ValueError(f"{p} is not an increasing {n}-subset of 1..{m}")
    return p


def delta_degree(n: int, p) -> int:
    """Exact degree sum(p) - N - C(N, 2)."""
    return sum(p) - n - math.comb(n, 2)


def delta_polynomial(n: int, m: int, p) -> sp.Poly:
    p = _check_subset(n, m, p)
    mat = sp.Matrix(n, n, lambda r, s: (T + r) ** (p[s] - 1))
    return sp.Poly(sp.expand(mat.det(method="berkowitz")), T, domain=sp.ZZ)


def vandermonde_constant(n: int) -> int:
    """V_N(t, t+1, ..., t+N-1) = prod_{i<j} (j - i), independent of t."""
    out = 1
    for j in range(n):
        for i in range(j):
            out *= j - i
    return out


def vandermonde_quotient(n: int, m: int, p) -> sp.Poly:
    """Delta_p(t) divided by the constant Vandermonde value."""
    q = delta_polynomial(n, m, p)
    return sp.Poly(q.as_expr() / vandermonde_constant(n), T, domain=sp.QQ)


def generalized_vandermonde_quotient(p) -> sp.Poly:
    """f_p(y_1..y_N) / V_N(y_1..y_N) as an exact polynomial in the y's."""
    n = len(p)
    ys = sp.symbols(f"y1:{n + 1}")
    f = sp.Matrix(n, n, lambda r, s: ys[r] ** (p[s] - 1)).det(method="berkowitz")
    v = sp.prod([ys[j] - ys[i] for i in range(n) for j in range(i + 1, n)])
    q, r = sp.div(sp.Poly(sp.expand(f), *ys), sp.Poly(sp.expand(v), *ys))
    if not r.is_zero:
        raise ArithmeticError("generalized Vandermonde not divisible by V_N")
    return q


def g_polynomial(plucker: NVector) -> sp.Poly:
    """sum_p P_p Delta_p(t) for exact Plücker coordinates ``P``."""
    if not plucker.exact:
        raise TypeError("g(t) is evaluated on exact coordinates only")
    n, m = plucker.n, plucker.m
    expr = sp.Integer(0)
    for p in combinations(m, n):
        c = plucker[p]
        if not c:
            continue
        coef = sp.Rational(c.re.numerator, c.re.denominator) + sp.I * sp.Rational(
            c.im.numerator, c.im.denominator
        )
        expr += coef * delta_polynomial(n, m, p).as_expr()
    return sp.Poly(sp.expand(expr), T, domain=sp.QQ_I)
