"""Random objects shared by the test modules."""

import numpy as np

from fermiupb.exterior import Factorization, NVector
from fermiupb.scalars import FLOAT


def crandn(rng, *shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def rand_fact(rng, n, m):
    return Factorization(m, tuple(map(tuple, crandn(rng, n, m))), FLOAT)


def rand_nvec(rng, n, m):
    from math import comb

    return NVector.from_dense(m, n, crandn(rng, comb(m, n)), FLOAT)


def haar(rng, d):
    q, r = np.linalg.qr(crandn(rng, d, d))
    return q * (np.diag(r) / np.abs(np.diag(r)))
