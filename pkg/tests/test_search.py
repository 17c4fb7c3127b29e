import numpy as np
import pytest

from fermiupb.constructions import pentagon_upb
from fermiupb.exterior import basis_nvector, plucker_residual, wedge_expand
from fermiupb.linalg import complete_rows, row_space
from fermiupb.search import (
    SearchConfig,
    product_objective,
    search_decomposable,
    search_in_perp,
    search_objective,
    search_product_vector,
)
from fermiupb.subspace import span
from helpers import crandn


def fd_check(fun, x, grad, rng, h=1e-6):
    """Largest relative error of directional derivatives along random directions."""
    worst = 0.0
    for _ in range(3):
        d = crandn(rng, *x.shape)
        num = (fun(x + h * d) - fun(x - h * d)) / (2 * h)
        ana = np.vdot(grad, d).real
        worst = max(worst, abs(num - ana) / max(abs(ana), abs(num), 1e-12))
    return worst


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(tol_found=1e-6, tol_clear=1e-6)
    with pytest.raises(ValueError):
        SearchConfig(restarts=0)
    with pytest.raises(ValueError):
        SearchConfig(chunk=0)
    assert SearchConfig().restarts == 200


def test_decomposable_line_is_found():
    res = search_decomposable(span([basis_nvector(4, 1, 2).to_float()]))
    assert res.found and res.best_residual <= 1e-10
    w = wedge_expand(res.witness)
    assert plucker_residual(w) <= 1e-10
    assert abs(abs(w.dense()[0]) / w.norm() - 1) <= 1e-10


def test_entangled_line_is_not_found():
    t = span([(basis_nvector(4, 1, 2) + basis_nvector(4, 3, 4)).to_float()])
    res = search_decomposable(t, SearchConfig(restarts=200))
    assert not res.found
    assert res.restarts_used == 200
    assert res.best_residual >= 1e-2


@pytest.mark.parametrize("n,m,k", [(2, 4, 3), (2, 5, 4), (3, 6, 6)])
def test_gradient_matches_finite_differences(n, m, k):
    rng = np.random.default_rng(n * 100 + m)
    width = {4: 6, 5: 10, 6: 20}[m]
    for _ in range(20):
        perp = row_space(crandn(rng, k, width))
        x = crandn(rng, n, m)
        _, g = search_objective(x, perp)
        assert fd_check(lambda y: search_objective(y, perp)[0], x, g, rng) <= 1e-5


def test_gradient_vanishes_at_witness():
    t = span([basis_nvector(4, 1, 2).to_float()])
    x = np.eye(4, dtype=complex)[:2]
    f, g = search_objective(x, t.perp_orthonormal())
    assert f <= 1e-30 and np.abs(g).max() <= 1e-14


def test_search_is_deterministic():
    rng = np.random.default_rng(3)
    perp = complete_rows(row_space(crandn(rng, 3, 10)))
    cfg = SearchConfig(restarts=20, max_iters=300, seed=11)
    a = search_in_perp(perp, 2, 5, cfg)
    b = search_in_perp(perp, 2, 5, cfg)
    assert a.best_residual == b.best_residual
    assert np.array_equal(a.residuals, b.residuals)
    assert a.best_restart == b.best_restart
    c = search_in_perp(perp, 2, 5, SearchConfig(restarts=20, max_iters=300, seed=12))
    assert not np.array_equal(a.residuals, c.residuals)


def test_chunked_early_stop():
    # every restart succeeds immediately, so only the first chunk runs
    perp = np.zeros((0, 6), dtype=complex)
    res = search_in_perp(perp, 2, 4, SearchConfig(restarts=200, chunk=50))
    assert res.found and res.restarts_used == 50 and res.best_restart == 0


def test_search_rejects_bad_input():
    with pytest.raises(ValueError):
        search_in_perp(np.eye(6, dtype=complex), 2, 4)
    with pytest.raises(ValueError):
        search_in_perp(np.eye(6, dtype=complex)[:2, :5], 2, 4)
    with pytest.raises(ValueError):
        search_decomposable(span([], m=4, n=2))


def test_product_gradient():
    rng = np.random.default_rng(5)
    rows = row_space(crandn(rng, 4, 9))
    for _ in range(20):
        xs = [crandn(rng, 3), crandn(rng, 3)]
        _, gs = product_objective(xs, rows)
        for j in range(2):
            def fun(y, j=j):
                ys = list(xs)
                ys[j] = y
                return product_objective(ys, rows)[0]

            assert fd_check(fun, xs[j], gs[j], rng) <= 1e-5


def pentagon_rows(members):
    return row_space(np.array([np.kron(a, b) for a, b in members]))


def test_pentagon_has_no_orthogonal_product_vector():
    res = search_product_vector(pentagon_rows(pentagon_upb()), (3, 3), SearchConfig(restarts=200))
    assert not res.found
    assert res.best_residual >= 1e-6


def test_four_pentagon_states_are_extendible():
    res = search_product_vector(pentagon_rows(pentagon_upb()[:4]), (3, 3), SearchConfig(restarts=50))
    assert res.found
    v = np.kron(*res.factors)
    for a, b in pentagon_upb()[:4]:
        assert abs(np.vdot(np.kron(a, b), v)) <= 1e-9
