"""Subspaces of an exterior power, spanned by finitely many N-vectors.

All derived data (rank, orthonormal basis, complement) is computed once at
construction, so a :class:`Subspace` is safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .exterior import NVector, combinations
from .linalg import (
    RANK_RTOL,
    complete_rows,
    exact_nullspace,
    exact_rref,
    exact_solve,
    row_space,
)
from .scalars import EXACT, FLOAT, ExactComplex

__all__ = ["Subspace", "span", "project", "complement", "dim"]


@dataclass(frozen=True, eq=False)
class Subspace:
    m: int
    n: int
    basis: tuple[NVector, ...]
    backend: str = FLOAT
    rtol: float = RANK_RTOL
    _reduced: object = field(init=False, repr=False)

    def __post_init__(self):
        basis = tuple(self.basis)
        for v in basis:
            if (v.m, v.n) != (self.m, self.n):
                raise ValueError(
                    f"vector of grade {v.n} in C^{v.m} does not belong to grade {self.n}, C^{self.m}"
                )
            if v.backend != self.backend:
                raise TypeError("mixed exact/floating vectors in one subspace")
        object.__setattr__(self, "basis", basis)
        width = math.comb(self.m, self.n)
        if self.backend == EXACT:
            rows = [v.dense() for v in basis]
            reduced = exact_rref(rows) if rows else []
        else:
            rows = np.array([v.dense() for v in basis]).reshape(len(basis), width)
            reduced = row_space(rows, self.rtol)
        object.__setattr__(self, "_reduced", reduced)

    @property
    def ambient_dim(self) -> int:
        return math.comb(self.m, self.n)

    @property
    def dim(self) -> int:
        return len(self._reduced)

    @property
    def exact(self) -> bool:
        return self.backend == EXACT

    @property
    def reduced_basis(self):
        """Orthonormal rows (float) or row-reduced exact rows."""
        return self._reduced

    def vectors(self) -> list[NVector]:
        """Independent spanning vectors (the reduced basis as NVectors)."""
        return [NVector.from_dense(self.m, self.n, r, self.backend) for r in self._reduced]

    def orthonormal(self) -> np.ndarray:
        """Floating orthonormal rows spanning the subspace."""
        if not self.exact:
            return self._reduced
        if not self._reduced:
            return np.zeros((0, self.ambient_dim), dtype=complex)
        return row_space(np.array([[complex(z) for z in r] for r in self._reduced]), self.rtol)

    def perp_orthonormal(self) -> np.ndarray:
        """Floating orthonormal rows spanning the orthogonal complement."""
        return complete_rows(self.orthonormal())

    def projector(self) -> np.ndarray:
        q = self.orthonormal()
        return q.T @ q.conj()

    def contains(self, psi: NVector, tol: float = 1e-10) -> bool:
        r = psi - project(self, psi)
        if self.exact and psi.exact:
            return r.is_zero()
        return r.norm() <= tol * max(psi.norm(), 1e-300)

    def __repr__(self):
        return f"<Subspace dim {self.dim} of grade {self.n} in C^{self.m} ({self.backend})>"


def span(vectors, m: int | None = None, n: int | None = None, backend: str | None = None) -> Subspace:
    vectors = tuple(vectors)
    if not vectors:
        if m is None or n is None:
            raise ValueError("an empty span needs m and n")
        return Subspace(m, n, (), backend or FLOAT)
    v0 = vectors[0]
    return Subspace(v0.m, v0.n, vectors, backend or v0.backend)


def dim(s: Subspace) -> int:
    return s.dim


def project(s: Subspace, psi: NVector) -> NVector:
    """Orthogonal projection of ``psi`` onto ``s``."""
    if (psi.m, psi.n) != (s.m, s.n):
        raise ValueError("projecting a vector from a different exterior power")
    if s.exact and psi.exact:
        rows = s.reduced_basis
        if not rows:
            return NVector.zero(s.m, s.n, EXACT)
        vec = psi.dense()
        zero = ExactComplex(0)
        conj_rows = [[z.conjugate() for z in r] for r in rows]
        gram = [[sum((a * b for a, b in zip(ci, rj)), zero) for rj in rows] for ci in conj_rows]
        rhs = [sum((a * b for a, b in zip(ci, vec)), zero) for ci in conj_rows]
        coef = exact_solve(gram, rhs)
        out = [zero] * len(vec)
        for c, r in zip(coef, rows):
            out = [o + c * x for o, x in zip(out, r)]
        return NVector.from_dense(s.m, s.n, out, EXACT)
    if psi.exact != s.exact and psi.exact:
        raise TypeError("exact vector projected onto a floating subspace; convert explicitly")
    q = s.orthonormal()
    w = psi.to_float().dense()
    return NVector.from_dense(s.m, s.n, q.T @ (q.conj() @ w), FLOAT)


def complement(s: Subspace) -> Subspace:
    """Orthogonal complement inside the full exterior power."""
    width = s.ambient_dim
    if s.exact:
        conj_rows = [[z.conjugate() for z in r] for r in s.reduced_basis]
        ns = exact_nullspace(conj_rows, ncols=width)
        vecs = tuple(NVector.from_dense(s.m, s.n, r, EXACT) for r in ns)
        return Subspace(s.m, s.n, vecs, EXACT, s.rtol)
    perp = complete_rows(s.orthonormal())
    vecs = tuple(NVector.from_dense(s.m, s.n, r, FLOAT) for r in perp)
    return Subspace(s.m, s.n, vecs, FLOAT, s.rtol)
