r"""N-vectors in :math:`\wedge^N \mathbb{C}^M` and the operations on them.

Indices follow the usual mathematical labelling: single-particle modes are
numbered ``1..M`` and a basis N-vector :math:`e_{i_1,\dots,i_N}` is keyed by
the strictly increasing tuple ``(i_1, ..., i_N)``.  The Slater basis
``{e_I}`` is declared orthonormal, so the inner product of two decomposable
vectors is exactly the Gram determinant of their factors (no ``N!``).

Every function works on both backends (see :mod:`fermiupb.scalars`); the
heavier floating paths are vectorised with numpy.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from .linalg import complete_rows, det_exact, exact_rref, row_space
from .scalars import (
    EXACT,
    FLOAT,
    ExactComplex,
    abs2,
    as_exact,
    as_float,
    backend_of,
)

DEFAULT_TOL = 1e-10

__all__ = [
    "DEFAULT_TOL",
    "NVector",
    "Factorization",
    "combinations",
    "index_rank",
    "perm_sign",
    "ket",
    "basis_nvector",
    "wedge_expand",
    "inner_product",
    "gram_inner_product",
    "factor_norm",
    "minors",
    "nvectors_matrix",
    "wedge_product",
    "interior_product",
    "hodge_dual",
    "plucker_relations",
    "plucker_residual",
    "is_decomposable",
    "support",
    "factorize",
    "to_antisymmetric_matrix",
    "from_antisymmetric_matrix",
    "slater_decomposition",
    "compound_matrix",
    "apply_unitary",
]


# ---------------------------------------------------------------------------
# multi-indices


@lru_cache(maxsize=None)
def combinations(m: int, k: int) -> tuple[tuple[int, ...], ...]:
    """All increasing k-tuples from ``1..m`` in lexicographic order."""
    return tuple(itertools.combinations(range(1, m + 1), k))


@lru_cache(maxsize=None)
def _rank_table(m: int, k: int) -> dict[tuple[int, ...], int]:
    return {idx: r for r, idx in enumerate(combinations(m, k))}


def index_rank(idx: Sequence[int], m: int) -> int:
    """Lexicographic rank of an increasing multi-index among ``C(m, len(idx))``."""
    try:
        return _rank_table(m, len(idx))[tuple(idx)]
    except KeyError:
        raise ValueError(f"{tuple(idx)} is not an increasing multi-index in 1..{m}")


def perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq``; 0 if it has repeats."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def _check_index(idx, m, n):
    idx = tuple(int(i) for i in idx)
    if len(idx) != n:
        raise ValueError(f"index {idx} has grade {len(idx)}, expected {n}")
    if any(a >= b for a, b in zip(idx, idx[1:])):
        raise ValueError(f"index {idx} is not strictly increasing")
    if idx and (idx[0] < 1 or idx[-1] > m):
        raise ValueError(f"index {idx} out of range 1..{m}")
    return idx


# ---------------------------------------------------------------------------
# data types


def _normalise_scalar(value, backend):
    if backend == EXACT:
        if isinstance(value, (float, complex)):
            raise TypeError("floating coefficient in an exact NVector")
        return as_exact(value)
    if isinstance(value, ExactComplex):
        raise TypeError("exact coefficient in a floating NVector; use as_float")
    return as_float(value)


@dataclass(frozen=True, eq=False)
class NVector:
    """Sparse element of the exterior power, keyed by increasing index tuples."""

    m: int
    n: int
    coeffs: Mapping[tuple[int, ...], object] = field(default_factory=dict)
    backend: str = EXACT

    def __post_init__(self):
        if self.m < 1 or not 0 <= self.n <= self.m:
            raise ValueError(f"invalid grade/dimension n={self.n}, m={self.m}")
        if self.backend not in (EXACT, FLOAT):
            raise ValueError(f"unknown backend {self.backend!r}")
        clean = {}
        for idx, val in self.coeffs.items():
            idx = _check_index(idx, self.m, self.n)
            val = _normalise_scalar(val, self.backend)
            if val != 0:
                clean[idx] = val
        object.__setattr__(self, "coeffs", clean)

    # construction helpers
    @classmethod
    def zero(cls, m, n, backend=EXACT):
        return cls(m, n, {}, backend)

    @classmethod
    def from_dense(cls, m, n, values, backend=None):
        values = list(values) if not isinstance(values, np.ndarray) else values
        if backend is None:
            backend = FLOAT if isinstance(values, np.ndarray) else backend_of(values[0])
        keys = combinations(m, n)
        if len(values) != len(keys):
            raise ValueError(f"expected {len(keys)} coefficients, got {len(values)}")
        return cls(m, n, dict(zip(keys, values)), backend)

    def dense(self):
        """Coefficients in lexicographic order (numpy for float, list for exact)."""
        keys = combinations(self.m, self.n)
        if self.backend == FLOAT:
            out = np.zeros(len(keys), dtype=complex)
            table = _rank_table(self.m, self.n)
            for idx, val in self.coeffs.items():
                out[table[idx]] = val
            return out
        zero = ExactComplex(0)
        return [self.coeffs.get(k, zero) for k in keys]

    def to_float(self) -> "NVector":
        if self.backend == FLOAT:
            return self
        return NVector(self.m, self.n, {k: complex(v) for k, v in self.coeffs.items()}, FLOAT)

    @property
    def exact(self) -> bool:
        return self.backend == EXACT

    def norm2(self):
        return sum((abs2(v) for v in self.coeffs.values()), 0)

    def norm(self) -> float:
        return math.sqrt(self.norm2())

    def is_zero(self, tol: float = 0.0) -> bool:
        if self.exact:
            return not self.coeffs
        return self.norm() <= tol

    def __getitem__(self, idx):
        idx = tuple(idx) if not isinstance(idx, int) else (idx,)
        return self.coeffs.get(idx, ExactComplex(0) if self.exact else 0j)

    def _same_space(self, other):
        if not isinstance(other, NVector):
            raise TypeError(f"expected NVector, got {type(other).__name__}")
        if (self.m, self.n) != (other.m, other.n):
            raise ValueError(
                f"grade/dimension mismatch: ({self.n},{self.m}) vs ({other.n},{other.m})"
            )
        if self.backend != other.backend:
            raise TypeError("mixed exact/floating NVectors; convert explicitly")

    def __add__(self, other):
        self._same_space(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return NVector(self.m, self.n, out, self.backend)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __mul__(self, scalar):
        if isinstance(scalar, NVector):
            return NotImplemented
        if self.exact and isinstance(scalar, (float, complex)):
            raise TypeError("mixed exact/floating arithmetic; convert explicitly")
        if not self.exact and isinstance(scalar, ExactComplex):
            scalar = complex(scalar)
        return NVector(self.m, self.n, {k: scalar * v for k, v in self.coeffs.items()}, self.backend)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if self.exact:
            return self * (ExactComplex(1) / as_exact(scalar))
        return self * (1.0 / complex(scalar))

    def __eq__(self, other):
        if not isinstance(other, NVector):
            return NotImplemented
        return (
            (self.m, self.n, self.backend) == (other.m, other.n, other.backend)
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.m, self.n, self.backend, frozenset(self.coeffs.items())))

    def __repr__(self):
        terms = ", ".join(f"{k}: {v}" for k, v in sorted(self.coeffs.items()))
        return f"NVector(m={self.m}, n={self.n}, {{{terms}}}, backend={self.backend!r})"


def ket(i: int, m: int, exact: bool = True):
    """Standard basis vector ``|i>`` of C^m (1-based)."""
    if not 1 <= i <= m:
        raise ValueError(f"ket index {i} out of range 1..{m}")
    if exact:
        return tuple(ExactComplex(int(j == i)) for j in range(1, m + 1))
    v = np.zeros(m, dtype=complex)
    v[i - 1] = 1
    return v


def basis_nvector(m: int, *idx: int, backend: str = EXACT) -> NVector:
    """The Slater determinant e_{idx} (indices are sorted, with sign)."""
    sign = perm_sign(idx)
    if sign == 0:
        return NVector.zero(m, len(idx), backend)
    one = ExactComplex(sign) if backend == EXACT else complex(sign)
    return NVector(m, len(idx), {tuple(sorted(idx)): one}, backend)


@dataclass(frozen=True, eq=False)
class Factorization:
    """Ordered factors v_1, ..., v_N in C^m of a decomposable N-vector."""

    m: int
    factors: tuple
    backend: str = EXACT

    def __post_init__(self):
        rows = []
        for f in self.factors:
            f = list(f)
            if len(f) != self.m:
                raise ValueError(f"factor of length {len(f)} in dimension {self.m}")
            rows.append(tuple(_normalise_scalar(x, self.backend) for x in f))
        if len(rows) > self.m:
            raise ValueError(f"{len(rows)} factors exceed dimension {self.m}")
        object.__setattr__(self, "factors", tuple(rows))

    @classmethod
    def from_vectors(cls, vectors, backend=None):
        vectors = [list(v) for v in vectors]
        if not vectors:
            raise ValueError("use Factorization(m, ()) for the grade-0 factorization")
        if backend is None:
            backend = EXACT if all(backend_of(x) == EXACT for v in vectors for x in v) else FLOAT
        return cls(len(vectors[0]), tuple(vectors), backend)

    @property
    def n(self) -> int:
        return len(self.factors)

    @property
    def exact(self) -> bool:
        return self.backend == EXACT

    def matrix(self):
        """N x M factor matrix (numpy for float, list of rows for exact)."""
        if self.exact:
            return [list(r) for r in self.factors]
        return np.array(self.factors, dtype=complex).reshape(self.n, self.m)

    def to_float(self) -> "Factorization":
        if not self.exact:
            return self
        return Factorization(self.m, tuple(tuple(complex(x) for x in r) for r in self.factors), FLOAT)

    def embed(self, m_new: int, offset: int = 0) -> "Factorization":
        """Zero-pad every factor into C^{m_new}, shifted by ``offset`` modes."""
        if offset + self.m > m_new:
            raise ValueError("embedding does not fit")
        zero = ExactComplex(0) if self.exact else 0j
        rows = tuple(
            (zero,) * offset + r + (zero,) * (m_new - offset - self.m) for r in self.factors
        )
        return Factorization(m_new, rows, self.backend)

    def __repr__(self):
        return f"Factorization(m={self.m}, n={self.n}, backend={self.backend!r})"


# ---------------------------------------------------------------------------
# expansion and inner products


@lru_cache(maxsize=None)
def _column_index_array(m: int, n: int) -> np.ndarray:
    return np.array(combinations(m, n), dtype=np.intp).reshape(-1, n) - 1


def minors(x: np.ndarray) -> np.ndarray:
    """All maximal minors of (..., N, M) factor matrices, lexicographic in columns."""
    x = np.asarray(x)
    n, m = x.shape[-2:]
    if n == 0:
        return np.ones(x.shape[:-2] + (1,), dtype=x.dtype)
    cols = _column_index_array(m, n)
    sub = x[..., :, cols]  # (..., N, C, N)
    sub = np.moveaxis(sub, -2, -3)  # (..., C, N, N)
    return np.linalg.det(sub)


def wedge_expand(f: Factorization) -> NVector:
    """Expand v_1 ^ ... ^ v_N in the Slater basis (coefficients are minors)."""
    if not isinstance(f, Factorization):
        raise TypeError(f"expected Factorization, got {type(f).__name__}")
    n, m = f.n, f.m
    if f.exact:
        rows = f.factors
        coeffs = {}
        for idx in combinations(m, n):
            sub = [[row[i - 1] for i in idx] for row in rows]
            d = det_exact(sub)
            if d:
                coeffs[idx] = d
        return NVector(m, n, coeffs, EXACT)
    vals = minors(f.matrix())
    return NVector.from_dense(m, n, vals, FLOAT)


def inner_product(u: NVector, v: NVector):
    """<u|v>, conjugate-linear in ``u``."""
    u._same_space(v)
    small, big = (u, v) if len(u.coeffs) <= len(v.coeffs) else (v, u)
    acc = ExactComplex(0) if u.exact else 0j
    for k in small.coeffs:
        if k in big.coeffs:
            acc = acc + u.coeffs[k].conjugate() * v.coeffs[k]
    return acc


def gram_inner_product(u: Factorization, w: Factorization):
    """det[<u_i|w_j>]: the inner product of two decomposable vectors."""
    if (u.m, u.n) != (w.m, w.n):
        raise ValueError("factorizations live in different spaces")
    if u.backend != w.backend:
        raise TypeError("mixed exact/floating factorizations")
    if u.exact:
        gram = [
            [sum((a.conjugate() * b for a, b in zip(ui, wj)), ExactComplex(0)) for wj in w.factors]
            for ui in u.factors
        ]
        return det_exact(gram)
    gram = u.matrix().conj() @ w.matrix().T
    return complex(np.linalg.det(gram)) if u.n else 1 + 0j


def factor_norm(f: Factorization) -> float:
    return math.sqrt(abs(complex(gram_inner_product(f, f))))


# ---------------------------------------------------------------------------
# wedge / interior / Hodge


def wedge_product(u: NVector, v: NVector) -> NVector:
    if u.m != v.m:
        raise ValueError("wedge of vectors over different dimensions")
    if u.backend != v.backend:
        raise TypeError("mixed exact/floating NVectors")
    if u.n + v.n > u.m:
        raise ValueError(f"grade overflow: {u.n}+{v.n} > {u.m}")
    out: dict = {}
    for i, a in u.coeffs.items():
        si = set(i)
        for j, b in v.coeffs.items():
            if si.intersection(j):
                continue
            s = perm_sign(i + j)
            key = tuple(sorted(i + j))
            term = a * b if s > 0 else -(a * b)
            out[key] = out[key] + term if key in out else term
    return NVector(u.m, u.n + v.n, out, u.backend)


def interior_product(psi: NVector, phi: NVector) -> NVector:
    """Contraction adjoint to wedging: <i(psi,phi)|xi> = <psi|xi ^ phi>."""
    if psi.m != phi.m:
        raise ValueError("interior product over different dimensions")
    if psi.backend != phi.backend:
        raise TypeError("mixed exact/floating NVectors")
    if phi.n > psi.n:
        raise ValueError(f"cannot contract grade {psi.n} by grade {phi.n}")
    out: dict = {}
    for k, a in psi.coeffs.items():
        ks = set(k)
        for j, b in phi.coeffs.items():
            if not ks.issuperset(j):
                continue
            i = tuple(x for x in k if x not in j)
            s = perm_sign(i + j)
            term = a * b.conjugate()
            term = term if s > 0 else -term
            out[i] = out[i] + term if i in out else term
    return NVector(psi.m, psi.n - phi.n, out, psi.backend)


def hodge_dual(psi: NVector) -> NVector:
    """Conjugate-linear Hodge star: e_I -> sgn(I, I^c) e_{I^c}, coefficients conjugated."""
    m = psi.m
    out = {}
    for idx, a in psi.coeffs.items():
        comp = tuple(x for x in range(1, m + 1) if x not in idx)
        s = perm_sign(idx + comp)
        c = a.conjugate()
        out[comp] = c if s > 0 else -c
    return NVector(m, m - psi.n, out, psi.backend)


# ---------------------------------------------------------------------------
# Plücker relations


@lru_cache(maxsize=None)
def _plucker_table(m: int, n: int):
    """Relations as (coef, A, B) arrays of shape (R, n+1) over dense ranks.

    Invalid (repeated-index) terms get coefficient 0 and point at rank 0.
    """
    if n < 2 or n > m - 2:
        return (np.zeros((0, 1)), np.zeros((0, 1), dtype=np.intp), np.zeros((0, 1), dtype=np.intp))
    table = _rank_table(m, n)
    coefs, aidx, bidx = [], [], []
    for jj in combinations(m, n - 1):
        for jp in combinations(m, n + 1):
            c_row, a_row, b_row = [], [], []
            for t in range(n + 1):
                sgn_t = -1 if (t + 1) % 2 else 1
                a = jj + (jp[t],)
                sa = perm_sign(a)
                b = jp[:t] + jp[t + 1 :]
                if sa == 0:
                    c_row.append(0)
                    a_row.append(0)
                else:
                    c_row.append(sgn_t * sa)
                    a_row.append(table[tuple(sorted(a))])
                b_row.append(table[b])
            if any(c_row):
                coefs.append(c_row)
                aidx.append(a_row)
                bidx.append(b_row)
    return (np.array(coefs, dtype=float), np.array(aidx, dtype=np.intp), np.array(bidx, dtype=np.intp))


def plucker_relations(psi: NVector):
    """Values of every quadratic Plücker relation at the coefficients of ``psi``."""
    coef, a, b = _plucker_table(psi.m, psi.n)
    if psi.exact:
        vals = psi.dense()
        out = []
        for c_row, a_row, b_row in zip(coef, a, b):
            acc = ExactComplex(0)
            for c, i, j in zip(c_row, a_row, b_row):
                if c:
                    term = vals[i] * vals[j]
                    acc = acc + term if c > 0 else acc - term
            out.append(acc)
        return out
    w = psi.dense()
    return np.sum(coef * w[a] * w[b], axis=1)


def plucker_residual_dense(w: np.ndarray, m: int, n: int) -> float:
    coef, a, b = _plucker_table(m, n)
    nrm2 = float(np.vdot(w, w).real)
    if nrm2 == 0:
        raise ValueError("Plücker residual of the zero vector")
    if coef.size == 0:
        return 0.0
    rel = np.sum(coef * w[a] * w[b], axis=1)
    return float(np.sqrt(np.sum(np.abs(rel) ** 2)) / nrm2)


def plucker_residual(psi: NVector) -> float:
    """sqrt(sum |relation|^2) / ||psi||^2; zero exactly when psi is decomposable."""
    if psi.is_zero():
        raise ValueError("Plücker residual of the zero vector")
    if psi.exact:
        rel = plucker_relations(psi)
        s = sum((r.abs2() for r in rel), 0)
        return math.sqrt(s) / float(psi.norm2())
    return plucker_residual_dense(psi.dense(), psi.m, psi.n)


def is_decomposable(psi: NVector, tol: float = DEFAULT_TOL) -> bool:
    """Exact on the exact backend, ``residual <= tol`` otherwise."""
    if psi.exact:
        if psi.is_zero():
            raise ValueError("decomposability of the zero vector")
        return all(not r for r in plucker_relations(psi))
    return plucker_residual(psi) <= tol


# ---------------------------------------------------------------------------
# support and factorization


def _support_matrix(psi: NVector):
    """M x C(m, n-1) matrix whose column space is the support of psi."""
    m, n = psi.m, psi.n
    lower = combinations(m, n - 1)
    col = _rank_table(m, n - 1)
    zero = ExactComplex(0) if psi.exact else 0j
    mat = [[zero] * len(lower) for _ in range(m)]
    for idx, val in psi.coeffs.items():
        for pos, a in enumerate(idx):
            rest = idx[:pos] + idx[pos + 1 :]
            s = -1 if pos % 2 else 1
            mat[a - 1][col[rest]] = val if s > 0 else -val
    return mat


def support(psi: NVector, tol: float = DEFAULT_TOL):
    """Basis of the smallest W with psi in the N-th exterior power of W.

    Floating input gives orthonormal rows (numpy, k x M); exact input gives
    row-reduced exact vectors.
    """
    if psi.is_zero():
        raise ValueError("support of the zero vector")
    if psi.n == 0:
        return np.zeros((0, psi.m), dtype=complex) if not psi.exact else []
    mat = _support_matrix(psi)
    if psi.exact:
        cols = [list(c) for c in zip(*mat)]
        return exact_rref(cols)
    a = np.array(mat, dtype=complex)
    return row_space(a.T, rtol=tol)


def factorize(psi: NVector, tol: float = DEFAULT_TOL) -> Factorization:
    """Factors of a decomposable vector; raises if psi is not decomposable."""
    if psi.is_zero():
        raise ValueError("cannot factorize the zero vector")
    if psi.n == 0:
        raise ValueError("grade-0 vectors have no factors")
    if psi.exact:
        if not is_decomposable(psi):
            raise ValueError("vector is not decomposable")
        basis = support(psi)
        f = Factorization(psi.m, tuple(tuple(r) for r in basis), EXACT)
        w = wedge_expand(f)
        lam = inner_product(w, psi) / w.norm2()
        rows = (tuple(lam * x for x in basis[0]),) + tuple(tuple(r) for r in basis[1:])
        return Factorization(psi.m, rows, EXACT)
    res = plucker_residual(psi)
    if res > tol:
        raise ValueError(f"vector is not decomposable (Plücker residual {res:.3e})")
    q = support(psi, tol=max(tol, 1e-8))
    if q.shape[0] != psi.n:
        raise ValueError(f"support has dimension {q.shape[0]}, expected {psi.n}")
    w = minors(q)
    lam = np.vdot(w, psi.dense())
    q = q.copy()
    q[0] *= lam
    return Factorization(psi.m, tuple(map(tuple, q)), FLOAT)


# ---------------------------------------------------------------------------
# grade 2: antisymmetric matrices and the Slater canonical form


def to_antisymmetric_matrix(psi: NVector):
    if psi.n != 2:
        raise ValueError(f"expected a 2-vector, got grade {psi.n}")
    m = psi.m
    if psi.exact:
        zero = ExactComplex(0)
        k = [[zero] * m for _ in range(m)]
        for (i, j), v in psi.coeffs.items():
            k[i - 1][j - 1] = v
            k[j - 1][i - 1] = -v
        return k
    k = np.zeros((m, m), dtype=complex)
    for (i, j), v in psi.coeffs.items():
        k[i - 1, j - 1] = v
        k[j - 1, i - 1] = -v
    return k


def from_antisymmetric_matrix(k, tol: float = 1e-12) -> NVector:
    if isinstance(k, np.ndarray):
        k = np.asarray(k, dtype=complex)
        m = k.shape[0]
        if k.shape != (m, m):
            raise ValueError("matrix must be square")
        scale = max(1.0, float(np.abs(k).max(initial=0)))
        if np.abs(k + k.T).max(initial=0) > tol * scale:
            raise ValueError("matrix is not antisymmetric")
        return NVector(m, 2, {(i, j): k[i - 1, j - 1] for i, j in combinations(m, 2)}, FLOAT)
    m = len(k)
    for i in range(m):
        for j in range(m):
            if k[i][j] != -k[j][i]:
                raise ValueError("matrix is not antisymmetric")
    return NVector(m, 2, {(i, j): k[i - 1][j - 1] for i, j in combinations(m, 2)}, EXACT)


def slater_decomposition(psi: NVector, tol: float = 1e-12):
    """Unitary canonical form of a 2-vector.

    Returns ``(coeffs, u)`` with ``coeffs`` descending positive and ``u``
    unitary such that ``apply_unitary(psi, u)`` equals
    ``sum_i coeffs[i] * e_{2i-1, 2i}``.

    The coefficients are the square roots of the (doubly degenerate)
    eigenvalues of ``K K^dagger``; pairs ``(w, -K conj(w)/c)`` are peeled off
    greedily from the top eigenvector of the deflated operator.
    """
    if psi.n != 2:
        raise ValueError(f"Slater decomposition needs grade 2, got {psi.n}")
    psi = psi.to_float()
    m = psi.m
    k = to_antisymmetric_matrix(psi)
    h = k @ k.conj().T
    scale = float(np.linalg.norm(k))
    cols: list[np.ndarray] = []
    coeffs: list[float] = []
    while len(cols) + 1 < m:
        proj = np.eye(m, dtype=complex)
        for w in cols:
            proj -= np.outer(w, w.conj())
        evals, evecs = np.linalg.eigh(proj @ h @ proj)
        c2 = evals[-1]
        if scale == 0 or c2 <= (tol * scale) ** 2:
            break
        c = math.sqrt(c2)
        w1 = evecs[:, -1]
        w2 = -(k @ w1.conj()) / c
        w2 -= sum((np.vdot(w, w2) * w for w in cols + [w1]), np.zeros(m, dtype=complex))
        w2 /= np.linalg.norm(w2)
        cols.extend([w1, w2])
        coeffs.append(c)
    # complete with an orthonormal basis of what is left
    if len(cols) < m:
        used = np.array(cols) if cols else np.zeros((0, m), dtype=complex)
        rest = complete_rows(used)
        cols.extend(list(rest))
    w_mat = np.array(cols).T
    u = w_mat.conj().T
    return np.array(coeffs), u


def compound_matrix(u: np.ndarray, n: int) -> np.ndarray:
    """Matrix of the n-th exterior power of ``u`` in the lexicographic Slater basis."""
    u = np.asarray(u, dtype=complex)
    m = u.shape[0]
    idx = _column_index_array(m, n)
    if n == 0:
        return np.ones((1, 1), dtype=complex)
    sub = u[idx[:, None, :, None], idx[None, :, None, :]]  # (C, C, n, n)
    return np.linalg.det(sub)


def apply_unitary(psi: NVector, u) -> NVector:
    """Diagonal action: (u v_1) ^ ... ^ (u v_N), extended linearly."""
    psi = psi.to_float()
    c = compound_matrix(np.asarray(u), psi.n)
    return NVector.from_dense(psi.m, psi.n, c @ psi.dense(), FLOAT)


def nvectors_matrix(vectors: Iterable[NVector]):
    """Stack NVectors as dense rows (numpy for float, lists for exact)."""
    vectors = list(vectors)
    if not vectors:
        raise ValueError("no vectors")
    if all(v.exact for v in vectors):
        return [v.dense() for v in vectors]
    return np.array([v.to_float().dense() for v in vectors])
