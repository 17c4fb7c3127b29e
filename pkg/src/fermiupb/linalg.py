"""Dense linear algebra on both backends.

Exact matrices are lists of rows of :class:`ExactComplex`; rank and nullspace
go through sympy's ``DomainMatrix`` over the Gaussian rationals.  Floating
matrices are complex numpy arrays and use SVD with a relative threshold.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

from .scalars import ExactComplex

RANK_RTOL = 1e-10

_QQ = QQ_I.dom


def _to_qqi(z: ExactComplex):
    return QQ_I(_QQ(z.re.numerator, z.re.denominator), _QQ(z.im.numerator, z.im.denominator))


def _from_qqi(g) -> ExactComplex:
    x, y = g.x, g.y
    return ExactComplex(
        Fraction(int(x.numerator), int(x.denominator)),
        Fraction(int(y.numerator), int(y.denominator)),
    )


def _domain_matrix(rows):
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    data = [[_to_qqi(z) for z in row] for row in rows]
    return DomainMatrix(data, (nrows, ncols), QQ_I)


def exact_rank(rows) -> int:
    if not rows or not rows[0]:
        return 0
    return _domain_matrix(rows).rank()


def exact_nullspace(rows, ncols: int | None = None):
    """Basis (list of exact vectors) of ``{x : A x = 0}``."""
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [
            [ExactComplex(int(i == j)) for j in range(ncols)] for i in range(ncols)
        ]
    ns = _domain_matrix(rows).nullspace()
    return [[_from_qqi(g) for g in row] for row in ns.to_list()]


def exact_rref(rows):
    """Nonzero rows of the reduced row echelon form."""
    if not rows:
        return []
    rref, pivots = _domain_matrix(rows).rref()
    out = rref.to_list()[: len(pivots)]
    return [[_from_qqi(g) for g in row] for row in out]


def det_exact(mat) -> ExactComplex:
    """Determinant by fraction-exact Gaussian elimination."""
    n = len(mat)
    if n == 0:
        return ExactComplex(1)
    a = [list(row) for row in mat]
    sign = 1
    det = ExactComplex(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return ExactComplex(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        p = a[col][col]
        det = det * p
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] / p
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det if sign > 0 else -det


def float_rank(a: np.ndarray, rtol: float = RANK_RTOL) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > rtol * s[0]))


def row_space(a: np.ndarray, rtol: float = RANK_RTOL) -> np.ndarray:
    """Orthonormal rows spanning the row space of ``a``."""
    a = np.atleast_2d(np.asarray(a, dtype=complex))
    if a.size == 0:
        return np.zeros((0, a.shape[1]), dtype=complex)
    _, s, vh = np.linalg.svd(a, full_matrices=False)
    r = int(np.sum(s > rtol * s[0])) if s.size and s[0] > 0 else 0
    return vh[:r].copy()


def complete_rows(q: np.ndarray) -> np.ndarray:
    """Orthonormal rows spanning the orthogonal complement of orthonormal ``q``.

    "Orthogonal" is with respect to the Hermitian product: every returned
    row ``r`` satisfies ``q.conj() @ r == 0``.
    """
    k, d = q.shape
    if k == 0:
        return np.eye(d, dtype=complex)
    # trailing columns of a full QR of q^T are Hermitian-orthogonal to every row
    full, _ = np.linalg.qr(q.T, mode="complete")
    return full[:, k:].T.copy()


def exact_solve(a_rows, b):
    """Solve the square exact system ``A x = b``."""
    n = len(a_rows)
    a = _domain_matrix(a_rows)
    rhs = DomainMatrix([[_to_qqi(z)] for z in b], (n, 1), QQ_I)
    x = a.lu_solve(rhs)
    return [_from_qqi(row[0]) for row in x.to_list()]
