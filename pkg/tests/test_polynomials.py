import sympy as sp
import pytest

from fermiupb.constructions import vandermonde_gfupb
from fermiupb.exterior import combinations
from fermiupb.polynomials import (
    T,
    delta_degree,
    delta_polynomial,
    g_polynomial,
    generalized_vandermonde_quotient,
    vandermonde_constant,
    vandermonde_quotient,
)
from fermiupb.subspace import complement


def test_delta_examples():
    assert delta_polynomial(2, 4, (1, 2)).as_expr() == 1
    assert delta_polynomial(2, 4, (3, 4)).degree() == 4
    p =delta_polynomial(2, 4, (3, 4)).as_expr()
    assert sp.expand(p - (T**2 * (T + 1) ** 3 - T**3 * (T + 1) ** 2)) == 0


def test_vandermonde_constant():
    assert [vandermonde_constant(n) for n in (1, 2, 3, 4)] == [1, 1, 2, 12]


@pytest.mark.parametrize("n,m", [(2, 4), (2, 5), (3, 5)])
def test_degree_equality_and_nonnegative_quotient(n, m):
    for p in combinations(m, n):
        poly = delta_polynomial(n, m, p)
        assert poly.degree() == delta_degree(n, p)
        q = vandermonde_quotient(n, m, p)
        assert all(c >= 0 for c in q.all_coeffs())
        assert q.LC() > 0


def test_schur_quotient_has_nonnegative_coefficients():
    for p in [(1, 3), (2, 4), (1, 2, 4), (1, 3, 5)]:
        q = generalized_vandermonde_quotient(p)
        assert all(c >= 0 for c in q.coeffs())


@pytest.mark.parametrize("n,m", [(2, 4), (2, 5)])
def test_g_polynomial_vanishes_on_complement(n, m):
    comp = complement(vandermonde_gfupb(n, m).span())
    assert comp.dim > 0
    for v in comp.vectors():
        assert g_polynomial(v).is_zero


def test_g_polynomial_nonzero_off_complement():
    from fermiupb.exterior import basis_nvector

    assert not g_polynomial(basis_nvector(4, 1, 2)).is_zero


def test_invalid_subset():
    for bad in [(2, 1), (1, 1), (0, 2), (1, 5), (1, 2, 3)]:
        with pytest.raises(ValueError):
            delta_polynomial(2, 4, bad)
