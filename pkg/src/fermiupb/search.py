"""Multi-start search for a decomposable vector inside a subspace.

The objective, for an N x M complex factor matrix ``X`` with Plücker vector
``w = w(X)``, is

    f(X) = ||P_perp w||^2 / ||w||^2

where ``P_perp`` projects onto the orthogonal complement of the target
subspace ``T``.  ``f`` vanishes exactly on factor matrices whose wedge lies
in ``T``.  It is invariant under ``X -> A X`` for invertible ``A``, so the
search lives on the Grassmannian: rows are re-orthonormalised after every
step and the Euclidean gradient is automatically horizontal.

Steps use Barzilai-Borwein lengths computed from the frame-independent
tangent representation ``X^H g + g^H X``, guarded by Armijo backtracking.
All restarts advance together as one numpy batch; restart ``r`` draws its
start from ``default_rng([seed, r])`` so results do not depend on batching.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize

from .exterior import Factorization, _column_index_array
from .scalars import FLOAT
from .subspace import Subspace

__all__ = [
    "SearchConfig",
    "SearchResult",
    "search_decomposable",
    "search_objective",
    "search_in_perp",
    "product_objective",
    "search_product_vector",
]


@dataclass(frozen=True)
class SearchConfig:
    restarts: int = 200
    max_iters: int = 2000
    tol_found: float = 1e-10
    tol_clear: float = 1e-6
    seed: int = 0
    # step controller
    step0: float = 0.5
    step_min: float = 1e-10
    step_max: float = 1e3
    armijo: float = 1e-4
    max_backtracks: int = 40
    grad_tol: float = 1e-14
    stall_window: int = 100
    stall_rtol: float = 1e-10
    chunk: int = 50

    def __post_init__(self):
        if self.restarts < 1 or self.max_iters < 1:
            raise ValueError("restarts and max_iters must be positive")
        if not self.tol_found < self.tol_clear:
            raise ValueError("tol_found must be smaller than tol_clear")
        if self.chunk < 1:
            raise ValueError("chunk must be positive")


@dataclass
class SearchResult:
    found: bool
    best_residual: float
    restarts_used: int
    witness: Factorization | None = None
    best_restart: int = -1
    iterations: int = 0
    residuals: np.ndarray = field(default_factory=lambda: np.zeros(0), repr=False)
    factors: list | None = None  # product-vector witness (tensor search only)


# ---------------------------------------------------------------------------
# objective and gradient


@lru_cache(maxsize=None)
def _tables(m: int, n: int):
    cols = _column_index_array(m, n)  # (C, n)
    c = cols.shape[0]
    keep = np.array([[k for k in range(n) if k != a] for a in range(n)], dtype=np.intp).reshape(n, n - 1)
    sign = np.array([[(-1) ** (a + s) for s in range(n)] for a in range(n)], dtype=float)
    scatter = np.zeros((c * n, m))
    for i in range(c):
        for s in range(n):
            scatter[i * n + s, cols[i, s]] = 1.0
    return cols, keep, sign, scatter


def _det(a: np.ndarray) -> np.ndarray:
    """Batched determinant with closed forms for the tiny sizes used here."""
    k = a.shape[-1]
    if k == 1:
        return a[..., 0, 0]
    if k == 2:
        return a[..., 0, 0] * a[..., 1, 1] - a[..., 0, 1] * a[..., 1, 0]
    if k == 3:
        return (
            a[..., 0, 0] * (a[..., 1, 1] * a[..., 2, 2] - a[..., 1, 2] * a[..., 2, 1])
            - a[..., 0, 1] * (a[..., 1, 0] * a[..., 2, 2] - a[..., 1, 2] * a[..., 2, 0])
            + a[..., 0, 2] * (a[..., 1, 0] * a[..., 2, 1] - a[..., 1, 1] * a[..., 2, 0])
        )
    return np.linalg.det(a)


def _submatrices(x: np.ndarray) -> np.ndarray:
    _, n, m = x.shape
    cols = _tables(m, n)[0]
    return np.moveaxis(x[:, :, cols], 1, 2)  # (R, C, N, N): rows a, cols s


def _minors_and_cofactors(x: np.ndarray):
    """Maximal minors (R, C) and cofactors (R, C, N, N) of a batch (R, N, M)."""
    n = x.shape[1]
    _, keep, sign, _ = _tables(x.shape[2], n)
    sub = _submatrices(x)
    if n == 1:
        cof = np.ones(sub.shape, dtype=x.dtype)
    else:
        minor = sub[:, :, keep[:, None, :, None], keep[None, :, None, :]]  # (R,C,N,N,N-1,N-1)
        cof = _det(minor) * sign
    w = np.einsum("rcs,rcs->rc", sub[:, :, 0, :], cof[:, :, 0, :])
    return w, cof


def _objective_batch(x: np.ndarray, perp: np.ndarray, with_grad: bool = True):
    """f and its real gradient (as d/dRe + i d/dIm) for each row of the batch."""
    r, n, m = x.shape
    if not with_grad:
        w = _det(_submatrices(x))
        coef = w @ perp.conj().T
        nw2 = np.einsum("rc,rc->r", w.conj(), w).real
        return np.einsum("rk,rk->r", coef.conj(), coef).real / nw2, None
    w, cof = _minors_and_cofactors(x)
    coef = w @ perp.conj().T  # (R, K)
    pw = coef @ perp  # (R, C)
    nw2 = np.einsum("rc,rc->r", w.conj(), w).real
    f = np.einsum("rk,rk->r", coef.conj(), coef).real / nw2
    z = (pw - f[:, None] * w).conj()  # (R, C)
    _, _, _, scatter = _tables(m, n)
    contrib = cof * z[:, :, None, None]  # (R, C, a, s)
    contrib = np.moveaxis(contrib, 2, 1).reshape(r, n, -1)  # (R, a, C*s)
    g = contrib @ scatter  # (R, N, M)
    grad = 2 * g.conj() / nw2[:, None, None]
    return f, grad


def search_objective(x: np.ndarray, perp: np.ndarray):
    """(f, gradient) for a single factor matrix; exposed for testing."""
    f, g = _objective_batch(np.asarray(x, dtype=complex)[None], np.asarray(perp, dtype=complex))
    return float(f[0]), g[0]


def _orthonormalize(x: np.ndarray) -> np.ndarray:
    q, _ = np.linalg.qr(np.swapaxes(x, -1, -2))
    return np.swapaxes(q, -1, -2)


def _tangent(x, g):
    h = np.swapaxes(x.conj(), -1, -2) @ g
    return h + np.swapaxes(h.conj(), -1, -2)


def _real_dot(a, b):
    r = a.shape[0]
    return np.einsum("ri,ri->r", a.reshape(r, -1).conj(), b.reshape(r, -1)).real


def _initial(cfg: SearchConfig, restart: int, n: int, m: int) -> np.ndarray:
    rng = np.random.default_rng([cfg.seed, restart])
    x = (rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))) / math.sqrt(2)
    return _orthonormalize(x)


def _descend(x: np.ndarray, perp: np.ndarray, cfg: SearchConfig):
    """Run the batch to completion; returns final X, f and iteration counts."""
    r = x.shape[0]
    f, g = _objective_batch(x, perp)
    step = np.full(r, cfg.step0)
    active = np.ones(r, dtype=bool)
    iters = np.zeros(r, dtype=int)
    history = [f.copy()]
    thr = cfg.tol_found**2
    active &= f > thr
    for _ in range(cfg.max_iters):
        if not active.any():
            break
        idx = np.flatnonzero(active)
        xa, fa, ga, sa = x[idx], f[idx], g[idx], step[idx]
        gn2 = _real_dot(ga, ga)
        done_grad = gn2 <= cfg.grad_tol**2
        trial_x = np.empty_like(xa)
        trial_f = np.full(len(idx), np.inf)
        pending = ~done_grad
        for _ in range(cfg.max_backtracks):
            if not pending.any():
                break
            p = np.flatnonzero(pending)
            cand = _orthonormalize(xa[p] - sa[p, None, None] * ga[p])
            fc, _ = _objective_batch(cand, perp, with_grad=False)
            ok = fc <= fa[p] - cfg.armijo * sa[p] * gn2[p]
            # accept tiny-f improvements that Armijo cannot resolve in floating point
            ok |= (fc < fa[p]) & (sa[p] <= cfg.step_min)
            trial_x[p[ok]] = cand[ok]
            trial_f[p[ok]] = fc[ok]
            pending[p[ok]] = False
            sa[p[~ok]] = np.maximum(sa[p[~ok]] * 0.5, cfg.step_min * 0.5)
            failed = sa[p[~ok]] < cfg.step_min
            pending[p[~ok][failed]] = False
        moved = np.isfinite(trial_f)
        stop = done_grad | ~moved
        if moved.any():
            mi = np.flatnonzero(moved)
            fn, gnew = _objective_batch(trial_x[mi], perp)
            t_old = _tangent(xa[mi], ga[mi])
            t_new = _tangent(trial_x[mi], gnew)
            sdir = -sa[mi, None, None] * t_old
            yv = t_new - t_old
            sy = _real_dot(sdir, yv)
            ss = _real_dot(sdir, sdir)
            bb = np.where(sy > 0, ss / np.where(sy > 0, sy, 1.0), 2 * sa[mi])
            sa[mi] = np.clip(bb, cfg.step_min, cfg.step_max)
            gi = idx[mi]
            x[gi] = trial_x[mi]
            f[gi] = fn
            g[gi] = gnew
        step[idx] = sa
        iters[idx] += 1
        active[idx[stop]] = False
        active &= f > thr
        history.append(f.copy())
        if len(history) > cfg.stall_window:
            old = history[-cfg.stall_window - 1]
            stalled = (old - f) <= cfg.stall_rtol * old
            active &= ~stalled
            history.pop(0)
    return x, f, iters


def search_in_perp(perp: np.ndarray, n: int, m: int, cfg: SearchConfig | None = None) -> SearchResult:
    """Search for a decomposable N-vector orthogonal to the rows of ``perp``.

    ``perp`` holds orthonormal rows spanning the complement of the target.
    """
    cfg = cfg or SearchConfig()
    perp = np.asarray(perp, dtype=complex)
    width = math.comb(m, n)
    if perp.shape[1:] != (width,):
        raise ValueError(f"perp rows must have length {width}")
    if perp.shape[0] >= width:
        raise ValueError("target subspace is zero-dimensional")
    residuals = np.full(cfg.restarts, np.inf)
    finals: dict[int, np.ndarray] = {}
    total_iters = 0
    used = 0
    for start in range(0, cfg.restarts, cfg.chunk):
        ids = list(range(start, min(start + cfg.chunk, cfg.restarts)))
        x0 = np.array([_initial(cfg, i, n, m) for i in ids])
        if perp.shape[0] == 0:
            xf, ff, it = x0, np.zeros(len(ids)), np.zeros(len(ids), dtype=int)
        else:
            xf, ff, it = _descend(x0, perp, cfg)
        for k, i in enumerate(ids):
            residuals[i] = math.sqrt(max(float(ff[k]), 0.0))
            finals[i] = xf[k]
        total_iters += int(it.sum())
        used = ids[-1] + 1
        if np.any(residuals[: used] <= cfg.tol_found):
            break
    done = residuals[:used]
    best = int(np.argmin(done))  # argmin keeps the lowest index on ties
    found = bool(done[best] <= cfg.tol_found)
    witness = None
    if found:
        witness = Factorization(m, tuple(map(tuple, finals[best])), FLOAT)
    return SearchResult(
        found=found,
        best_residual=float(done[best]),
        restarts_used=used,
        witness=witness,
        best_restart=best,
        iterations=total_iters,
        residuals=done.copy(),
    )


def search_decomposable(t: Subspace, cfg: SearchConfig | None = None) -> SearchResult:
    """Look for a decomposable vector in ``t`` (deterministic given cfg.seed)."""
    if t.dim == 0:
        raise ValueError("cannot search a zero-dimensional subspace")
    return search_in_perp(t.perp_orthonormal(), t.n, t.m, cfg)


# ---------------------------------------------------------------------------
# product vectors of a tensor product space


def product_objective(xs, span_rows: np.ndarray):
    """f = ||P v||^2 / prod ||x_j||^2 for v = x_1 (x) ... (x) x_k.

    ``P`` projects onto the span of the orthonormal ``span_rows``.  Returns f
    and the real gradients d/dRe + i d/dIm of every factor.
    """
    xs = [np.asarray(x, dtype=complex) for x in xs]
    dims = [x.size for x in xs]
    v = xs[0]
    for x in xs[1:]:
        v = np.kron(v, x)
    coef = span_rows.conj() @ v
    pv = (span_rows.T @ coef).reshape(dims)
    norms = np.array([np.vdot(x, x).real for x in xs])
    big = float(np.prod(norms))
    f = float(np.vdot(coef, coef).real) / big
    grads = []
    axes = list(range(len(xs)))
    for j in axes:
        ops = [pv, axes]
        for k in axes:
            if k != j:
                ops += [xs[k].conj(), [k]]
        g = np.einsum(*ops, [j])
        grads.append(2 * (g - f * (big / norms[j]) * xs[j]) / big)
    return f, grads


def _pack(xs):
    return np.concatenate([np.concatenate([x.real, x.imag]) for x in xs])


def _unpack(z, dims):
    out, pos = [], 0
    for d in dims:
        out.append(z[pos : pos + d] + 1j * z[pos + d : pos + 2 * d])
        pos += 2 * d
    return out


def search_product_vector(span_rows: np.ndarray, dims, cfg: SearchConfig | None = None) -> SearchResult:
    """Search a product vector orthogonal to the orthonormal ``span_rows``.

    Residual is ||P_span v|| / ||v||; found iff it drops below tol_found.
    Each restart runs L-BFGS from ``default_rng([seed, restart])`` factors.
    """
    cfg = cfg or SearchConfig()
    dims = [int(d) for d in dims]
    span_rows = np.atleast_2d(np.asarray(span_rows, dtype=complex))
    if span_rows.shape[1] != math.prod(dims):
        raise ValueError("span rows do not match the tensor dimension")
    if span_rows.shape[0] >= math.prod(dims):
        raise ValueError("the complement is zero-dimensional")

    def fun(z):
        f, gs = product_objective(_unpack(z, dims), span_rows)
        return f, _pack(gs)

    residuals = np.full(cfg.restarts, np.inf)
    best_x = {}
    used, iters = 0, 0
    for r in range(cfg.restarts):
        rng = np.random.default_rng([cfg.seed, r])
        x0 = [(rng.standard_normal(d) + 1j * rng.standard_normal(d)) / math.sqrt(2) for d in dims]
        x0 = [x / np.linalg.norm(x) for x in x0]
        res = minimize(fun, _pack(x0), jac=True, method="L-BFGS-B",
                       options={"maxiter": cfg.max_iters, "gtol": 1e-14, "ftol": 1e-30})
        xs = _unpack(res.x, dims)
        f, _ = product_objective(xs, span_rows)
        residuals[r] = math.sqrt(max(f, 0.0))
        best_x[r] = [x / np.linalg.norm(x) for x in xs]
        used, iters = r + 1, iters + int(res.nit)
        if residuals[r] <= cfg.tol_found:
            break
    done = residuals[:used]
    best = int(np.argmin(done))
    found = bool(done[best] <= cfg.tol_found)
    return SearchResult(
        found=found,
        best_residual=float(done[best]),
        restarts_used=used,
        best_restart=best,
        iterations=iters,
        residuals=done.copy(),
        factors=best_x[best] if found else None,
    )
