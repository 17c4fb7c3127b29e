"""Concrete (generalized) fermionic UPBs and related counterexample subspaces.

Constructors return :class:`CandidateSet` objects: plain lists of
factorizations plus what the construction *claims* (orthogonality, linear
independence).  Nothing here decides unextendibility; that is the job of
:mod:`fermiupb.verifier`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Sequence

import numpy as np
import sympy as sp
from scipy.stats import unitary_group
from sympy.polys.matrices import DomainMatrix

from .exterior import (
    Factorization,
    NVector,
    basis_nvector,
    combinations,
    gram_inner_product,
    hodge_dual,
    inner_product,
    ket,
    minors,
    wedge_expand,
    wedge_product,
)
from .linalg import complete_rows, exact_nullspace, row_space
from .scalars import EXACT, FLOAT, ExactComplex
from .subspace import Subspace, span

__all__ = [
    "CandidateSet",
    "C4FupbParams",
    "RealCanonicalParams",
    "slater_basis",
    "vandermonde_gfupb",
    "solve_c4_double_root",
    "c4_quadratic",
    "fupb_c4",
    "PUBLISHED_C4_PARAMS",
    "real_canonical_members",
    "real_extension_witness",
    "pad_fupb",
    "pentagon_upb",
    "compose_bipartite_fupb",
    "block_unitary_upb",
    "block_unitary_blocks",
    "columns_distinct",
    "hyperplane_fupb",
    "hyperplane_gfupb_spanning",
    "spanning_certificate",
    "codim3_not_spanned",
    "dual_fupb",
]

KINDS = ("trivial", "gfupb", "fupb", "upb-embedded")


@dataclass(frozen=True, eq=False)
class CandidateSet:
    """Decomposable vectors claimed to form a (generalized) FUPB."""

    m: int
    n: int
    members: tuple[Factorization, ...]
    kind: str = "fupb"
    orthogonal: bool = True
    independent: bool = True
    metadata: Mapping = field(default_factory=dict)

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise ValueError("a candidate set needs at least one member")
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        backends = {f.backend for f in members}
        if len(backends) > 1:
            raise TypeError("members mix exact and floating backends")
        for f in members:
            if (f.m, f.n) != (self.m, self.n):
                raise ValueError(
                    f"member in grade {f.n} of C^{f.m}, expected grade {self.n} of C^{self.m}"
                )
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "metadata", dict(self.metadata))

    @property
    def backend(self) -> str:
        return self.members[0].backend

    @property
    def claims(self) -> dict:
        return {"orthogonal": self.orthogonal, "independent": self.independent, "kind": self.kind}

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def expansions(self) -> list[NVector]:
        return [wedge_expand(f) for f in self.members]

    def span(self) -> Subspace:
        return span(self.expansions())

    def to_float(self) -> "CandidateSet":
        return self.replace(members=tuple(f.to_float() for f in self.members))

    def replace(self, **changes) -> "CandidateSet":
        fields = dict(
            m=self.m, n=self.n, members=self.members, kind=self.kind,
            orthogonal=self.orthogonal, independent=self.independent, metadata=self.metadata,
        )
        fields.update(changes)
        return CandidateSet(**fields)

    def __repr__(self):
        return (
            f"<CandidateSet {self.kind}: {len(self)} members of grade {self.n} in C^{self.m} "
            f"({self.backend})>"
        )


def _vec(values, backend):
    if backend == EXACT:
        return tuple(v if isinstance(v, ExactComplex) else ExactComplex(v) for v in values)
    return tuple(complex(v) for v in values)


def _fact(vectors, backend=FLOAT) -> Factorization:
    vectors = [_vec(v, backend) for v in vectors]
    return Factorization(len(vectors[0]), tuple(vectors), backend)


# ---------------------------------------------------------------------------
# trivial and Vandermonde sets


def slater_basis(n: int, m: int) -> CandidateSet:
    if not 1 <= n <= m:
        raise ValueError(f"need 1 <= N <= M, got N={n}, M={m}")
    members = tuple(
        Factorization(m, tuple(ket(i, m) for i in idx), EXACT) for idx in combinations(m, n)
    )
    return CandidateSet(m, n, members, kind="trivial")


def vandermonde_gfupb(n: int, m: int) -> CandidateSet:
    """N(M-N)+1 Vandermonde Slater determinants with exact integer entries.

    Member ``t`` (t = 1..N(M-N)+1) has factors
    ``sum_p (t+j-1)^(p-1) |p>`` for j = 1..N.
    """
    if not (n >= 2 and m >= 4 and n < m):
        raise ValueError(f"need N >= 2, M >= 4, N < M; got N={n}, M={m}")
    count = n * (m - n) + 1
    members = []
    for t in range(1, count + 1):
        rows = tuple(
            tuple(ExactComplex((t + j) ** (p - 1)) for p in range(1, m + 1)) for j in range(n)
        )
        members.append(Factorization(m, rows, EXACT))
    return CandidateSet(m, n, tuple(members), kind="gfupb", orthogonal=False, independent=True)


# ---------------------------------------------------------------------------
# the complex FUPB of C^4


def _x_coef(z: complex, b: float) -> complex:
    return -z / (1 + z) - b * b


def c4_quadratic(b: float, d: complex):
    """Coefficients (a2, a1, a0) of (1+c) <psi5|psi4> as a polynomial in c."""
    xb5 = _x_coef(d, b).conjugate()
    db = complex(d).conjugate()
    alpha = (b * b + 1) - b * b * xb5
    beta = (1 + b * b) * (1 - xb5)
    return beta * db, beta + alpha * db - 1, alpha - 1


def _discriminant(b: float, d: complex) -> complex:
    a2, a1, a0 = c4_quadratic(b, d)
    return a1 * a1 - 4 * a2 * a0


def _discriminant_and_derivative(b: float, u: complex):
    """Discriminant and its derivative, as a holomorphic function of u = conj(d)."""
    b2 = b * b
    xb = -u / (1 + u) - b2
    dxb = -1 / (1 + u) ** 2
    alpha, dalpha = (b2 + 1) - b2 * xb, -b2 * dxb
    beta, dbeta = (1 + b2) * (1 - xb), -(1 + b2) * dxb
    a2, da2 = beta * u, dbeta * u + beta
    a1, da1 = beta + alpha * u - 1, dbeta + dalpha * u + alpha
    a0, da0 = alpha - 1, dalpha
    disc = a1 * a1 - 4 * a2 * a0
    ddisc = 2 * a1 * da1 - 4 * (da2 * a0 + a2 * da0)
    return disc, ddisc


class C4FupbParams(NamedTuple):
    """(b, c, d) for the five-member complex FUPB of the 2-fermion, 4-mode space."""

    b: float
    c: complex
    d: complex

    def discriminant(self) -> complex:
        return _discriminant(self.b, self.d)

    def overlap45(self) -> complex:
        m = fupb_c4(self, tol=None).members
        return gram_inner_product(m[3], m[4])

    def check(self, tol: float = 1e-8) -> None:
        if not self.b > 0:
            raise ValueError("b must be positive")
        if self.c == 0 or self.d == 0 or self.c == -1 or self.d == -1:
            raise ValueError("c and d must be nonzero and different from -1")
        ov = abs(self.overlap45())
        if ov > tol:
            raise ValueError(f"<psi4|psi5> = {ov:.3e} exceeds {tol:.1e}")


PUBLISHED_C4_PARAMS = C4FupbParams(2.0, -0.829747 + 0.0716405j, 1.13631 - 0.197693j)


def solve_c4_double_root(
    b: float = 2.0,
    d0: complex = PUBLISHED_C4_PARAMS.d,
    *,
    tol: float = 1e-13,
    max_iter: int = 100,
) -> C4FupbParams:
    """Damped Newton on the discriminant so that <psi4|psi5> = 0 has a double root in c.

    The discriminant depends on ``d`` only through ``conj(d)``, so Newton
    runs on ``u = conj(d)`` where the function is holomorphic.
    """
    if not b > 0:
        raise ValueError("b must be positive")
    u = complex(d0).conjugate()
    disc, ddisc = _discriminant_and_derivative(b, u)
    for _ in range(max_iter):
        if abs(disc) <= tol:
            break
        if ddisc == 0:
            raise ArithmeticError("Newton hit a stationary point of the discriminant")
        step = disc / ddisc
        lam = 1.0
        while lam > 1e-8:
            cand = u - lam * step
            new_disc, new_ddisc = _discriminant_and_derivative(b, cand)
            if abs(new_disc) < abs(disc):
                break
            lam *= 0.5
        else:
            raise ArithmeticError("damped Newton failed to decrease the discriminant")
        u, disc, ddisc = cand, new_disc, new_ddisc
    else:
        if abs(disc) > tol:
            raise ArithmeticError(f"Newton did not converge: |disc| = {abs(disc):.3e}")
    d = u.conjugate()
    a2, a1, _ = c4_quadratic(b, d)
    c = -a1 / (2 * a2)
    return C4FupbParams(float(b), complex(c), complex(d))


def fupb_c4(params: C4FupbParams | None = None, tol: float | None = 1e-8) -> CandidateSet:
    """The five orthogonal decomposable 2-vectors of the complex C^4 example.

    With ``params=None`` the parameters are re-solved from b = 2 and the
    published seed.  ``tol`` bounds |<psi4|psi5>| (None skips the check).
    """
    if params is None:
        params = solve_c4_double_root()
    b, c, d = params
    if tol is not None:
        params.check(tol)
    members = (
        _fact([[1, 0, 0, 0], [0, 1, 0, 0]]),
        _fact([[0, 1, -b, 0], [0, 0, 0, 1]]),
        _fact([[1, b, 1, 0], [0, 0, 1, 1]]),
        _fact([[_x_coef(c, b), b, 1, 0], [0, 0, 1, c]]),
        _fact([[_x_coef(d, b), b, 1, 0], [0, 0, 1, d]]),
    )
    meta = {"b": b, "c": [c.real, c.imag], "d": [d.real, d.imag]}
    return CandidateSet(4, 2, members, kind="fupb", metadata=meta)


# ---------------------------------------------------------------------------
# real canonical form and its extension witness


class RealCanonicalParams(NamedTuple):
    b: float
    c1: float
    d1: float
    e1: float
    c6: float
    d6: float
    e6: float

    def residuals(self) -> tuple[float, float, float]:
        b2 = self.b * self.b
        r = lambda x, y: 1 / (1 + x * y) - b2 - 1  # noqa: E731
        return (
            self.c1 * self.d1 - r(self.c6, self.d6),
            self.c1 * self.e1 - r(self.c6, self.e6),
            self.d1 * self.e1 - r(self.d6, self.e6),
        )

    def check(self, tol: float = 1e-10) -> None:
        if any(x == 0 for x in self):
            raise ValueError("all canonical parameters must be nonzero")
        for x in (self.c6 * self.d6, self.c6 * self.e6, self.d6 * self.e6):
            if 1 + x == 0:
                raise ValueError("singular orthogonality equation (1 + x y = 0)")
        worst = max(abs(r) for r in self.residuals())
        scale = 1 + self.b * self.b
        if worst > tol * scale:
            raise ValueError(f"orthogonality equations violated by {worst:.3e}")

    @classmethod
    def sample(cls, rng: np.random.Generator, scale: float = 1.5) -> "RealCanonicalParams":
        """Random real solution of the three orthogonality equations."""
        while True:
            b, c6, d6, e6 = rng.normal(size=4) * scale
            if min(abs(b), abs(c6), abs(d6), abs(e6)) < 1e-3:
                continue
            dens = (1 + c6 * d6, 1 + c6 * e6, 1 + d6 * e6)
            if min(abs(x) for x in dens) < 1e-3:
                continue
            rcd, rce, rde = (1 / x - b * b - 1 for x in dens)
            q = rcd * rce / rde
            if not q > 0:
                continue
            c1 = math.copysign(math.sqrt(q), rng.choice([-1.0, 1.0]))
            return cls(float(b), c1, rcd / c1, rce / c1, float(c6), float(d6), float(e6))


def real_canonical_members(params: RealCanonicalParams) -> CandidateSet:
    """The five real orthogonal states of the canonical form (psi2 with +b)."""
    b = params.b
    members = (
        _fact([[1, 0, 0, 0], [0, 1, 0, 0]]),
        _fact([[0, 1, b, 0], [0, 0, 0, 1]]),
        _fact([[params.c1, -b, 1, 0], [0, 0, 1, params.c6]]),
        _fact([[params.d1, -b, 1, 0], [0, 0, 1, params.d6]]),
        _fact([[params.e1, -b, 1, 0], [0, 0, 1, params.e6]]),
    )
    return CandidateSet(4, 2, members, kind="fupb", metadata={"real_canonical": list(params)})


def real_extension_witness(params: RealCanonicalParams, tol: float = 1e-10) -> Factorization:
    """Decomposable state orthogonal to all five real canonical states."""
    params.check(tol)
    b, c1, d1, e1, c6, d6, e6 = params
    f1 = (b**4 + b**2) / (c1 * d1 * e1)
    f6 = b**2 / (c6 * d6 * e6 * (1 + b**2))
    return _fact([[f1, -b, 1, 0], [0, 0, 1, f6]])


# ---------------------------------------------------------------------------
# higher-dimensional constructions


def pad_fupb(s: CandidateSet) -> CandidateSet:
    """Embed a grade-2 set into C^{M+1} and add |M+1> ^ |i> for i = 1..M."""
    if s.n != 2:
        raise ValueError(f"padding is defined for grade 2, got {s.n}")
    m1 = s.m + 1
    backend = s.backend
    new = [f.embed(m1) for f in s.members]
    for i in range(1, s.m + 1):
        new.append(_fact([ket(m1, m1, exact=True), ket(i, m1, exact=True)], backend))
    meta = dict(s.metadata)
    meta["padded_from"] = s.m
    return s.replace(m=m1, members=tuple(new), metadata=meta)


def pentagon_upb() -> list[tuple[np.ndarray, np.ndarray]]:
    """The five-state pentagon UPB of two qutrits, pairs (v_j, v_{2j mod 5}).

    ``v_j`` is proportional to (cos 2pi j/5, sin 2pi j/5, h) with h chosen so
    that v_j is orthogonal to v_{j+2}: h^2 = -cos(4pi/5) = cos(pi/5).
    """
    h = math.sqrt(math.cos(math.pi / 5))
    vs = []
    for j in range(5):
        v = np.array([math.cos(2 * math.pi * j / 5), math.sin(2 * math.pi * j / 5), h])
        vs.append(v / np.linalg.norm(v))
    return [(vs[j].astype(complex), vs[(2 * j) % 5].astype(complex)) for j in range(5)]


def compose_bipartite_fupb(
    dims: Sequence[int],
    blocks: Sequence[CandidateSet | None],
    upbs: Mapping[tuple[int, int], Sequence[tuple]] | None = None,
) -> CandidateSet:
    """Union of block FUPBs and wedge-embedded bipartite UPBs.

    Block ``i`` (0-based) occupies modes ``offset_i + 1 .. offset_i + dims[i]``
    with offsets given by prefix sums.  ``blocks[i]`` may be None for blocks
    of dimension 1 (nothing to add) or 2-3 (the trivial FUPB is the only
    one).  ``upbs[(j, k)]`` lists product pairs (x_j, x_k) spanning a UPB of
    C^{d_j} x C^{d_k}; a missing pair defaults to the computational basis.
    """
    dims = [int(d) for d in dims]
    if any(d < 1 for d in dims):
        raise ValueError("block dimensions must be positive")
    if len(blocks) != len(dims):
        raise ValueError("one block entry per dimension is required")
    upbs = dict(upbs or {})
    m = sum(dims)
    offsets = [sum(dims[:i]) for i in range(len(dims))]
    members: list[Factorization] = []
    for i, (d, x) in enumerate(zip(dims, blocks)):
        if x is None:
            if d == 1:
                continue
            if d in (2, 3):
                x = slater_basis(2, d)
            else:
                raise ValueError(f"block {i} of dimension {d} needs an FUPB")
        if (x.m, x.n) != (d, 2):
            raise ValueError(f"block {i}: expected grade-2 set in C^{d}, got grade {x.n} in C^{x.m}")
        members.extend(f.to_float().embed(m, offsets[i]) for f in x.members)
    for key in upbs:
        j, k = key
        if not 0 <= j < k < len(dims):
            raise ValueError(f"bad block pair {key}")
    for j in range(len(dims)):
        for k in range(j + 1, len(dims)):
            pairs = upbs.get((j, k))
            if pairs is None:
                pairs = [
                    (np.eye(dims[j])[a], np.eye(dims[k])[b])
                    for a in range(dims[j])
                    for b in range(dims[k])
                ]
            for xj, xk in pairs:
                xj = np.asarray(xj, dtype=complex)
                xk = np.asarray(xk, dtype=complex)
                if xj.shape != (dims[j],) or xk.shape != (dims[k],):
                    raise ValueError(f"UPB pair for blocks ({j},{k}) has the wrong dimensions")
                u = np.zeros(m, dtype=complex)
                v = np.zeros(m, dtype=complex)
                u[offsets[j] : offsets[j] + dims[j]] = xj
                v[offsets[k] : offsets[k] + dims[k]] = xk
                members.append(_fact([u, v]))
    meta = {"dims": dims, "offsets": [o + 1 for o in offsets]}
    return CandidateSet(m, 2, tuple(members), kind="fupb", metadata=meta)


def _haar(d: int, rng: np.random.Generator) -> np.ndarray:
    if d == 1:
        return np.ones((1, 1), dtype=complex)
    return unitary_group.rvs(d, random_state=rng)


def block_unitary_blocks(dims: Sequence[int], seed: int = 0) -> list[list[np.ndarray]]:
    """Random unitary blocks: party k gets d_1 ... d_{k-1} blocks of size d_k."""
    rng = np.random.default_rng(seed)
    out = []
    for k, d in enumerate(dims):
        nblocks = math.prod(dims[:k])
        out.append([_haar(d, rng) for _ in range(nblocks)])
    return out


def block_unitary_upb(dims: Sequence[int], seed: int = 0) -> list[tuple[np.ndarray, ...]]:
    """Full orthonormal product basis built from consecutive unitary blocks."""
    dims = [int(d) for d in dims]
    if any(d < 1 for d in dims):
        raise ValueError("dimensions must be positive")
    blocks = block_unitary_blocks(dims, seed)
    out = []
    for multi in np.ndindex(*dims):
        vecs = []
        for k in range(len(dims)):
            block_id = int(np.ravel_multi_index(multi[:k], dims[:k])) if k else 0
            vecs.append(blocks[k][block_id][:, multi[k]].copy())
        out.append(tuple(vecs))
    return out


def columns_distinct(blocks: Sequence[Sequence[np.ndarray]], tol: float = 1e-8) -> bool:
    """True if no two columns within one party's blocks agree up to a phase."""
    for party in blocks:
        d = party[0].shape[0]
        if d < 2:
            continue
        cols = [blk[:, i] for blk in party for i in range(d)]
        for a in range(len(cols)):
            for b in range(a + 1, len(cols)):
                if abs(abs(np.vdot(cols[a], cols[b])) - 1) < tol:
                    return False
    return True


def hyperplane_fupb(n: int, m: int, params: C4FupbParams | None = None) -> CandidateSet:
    """FUPB of cardinality C(M,N) - 1 spanning a hyperplane.

    All Slater determinants except e_{ij} ^ e_{5..N+2} (i < j <= 4), plus the
    five C^4 members wedged with the tail e_{5..N+2}.
    """
    if n < 2 or m < n + 2:
        raise ValueError(f"need N >= 2 and M >= N+2, got N={n}, M={m}")
    tail = tuple(range(5, n + 3))
    skipped = {tuple(sorted(pair + tail)) for pair in combinations(4, 2)}
    members = []
    for idx in combinations(m, n):
        if idx in skipped:
            continue
        members.append(_fact([ket(i, m, exact=False) for i in idx]))
    for f in fupb_c4(params).members:
        rows = [np.concatenate([np.array(r), np.zeros(m - 4)]) for r in f.factors]
        rows += [ket(i, m, exact=False) for i in tail]
        members.append(_fact(rows))
    return CandidateSet(m, n, tuple(members), kind="fupb", metadata={"tail": list(tail)})


def _root_of_unity(k: int, power: int):
    """omega^power for omega = exp(2 pi i / k); exact when it is Gaussian."""
    r = power % k
    if k in (1, 2, 4):
        table = {0: (1, 0), 1: (0, 1), 2: (-1, 0), 3: (0, -1)}
        quarter = r * (4 // k)
        return ExactComplex(*table[quarter])
    return cmath.exp(2j * math.pi * r / k)


def hyperplane_gfupb_spanning(m: int, k: int) -> list[Factorization]:
    """Decomposable 2-vectors spanning the hyperplane orthogonal to sum_l e_{2l-1,2l}.

    Exact when omega = exp(2 pi i/k) is a Gaussian rational (k in 1, 2, 4).
    """
    if not 1 <= k <= m // 2:
        raise ValueError(f"need 1 <= k <= M/2, got k={k}, M={m}")
    exact = k in (1, 2, 4)
    backend = EXACT if exact else FLOAT
    pairs = {(2 * l - 1, 2 * l) for l in range(1, k + 1)}
    out = []
    for i, j in combinations(m, 2):
        if (i, j) in pairs:
            continue
        out.append(_fact([ket(i, m), ket(j, m)], backend))
    for jj in range(1, k):
        zero = ExactComplex(0) if exact else 0j
        one = ExactComplex(1) if exact else 1 + 0j
        u = [zero] * m
        v = [zero] * m
        for l in range(1, k + 1):
            w = _root_of_unity(k, jj * (l - 1))
            u[2 * l - 2] = w if exact else complex(w)
            v[2 * l - 1] = one
        out.append(_fact([u, v], backend))
    return out


def spanning_certificate(m: int, k: int) -> tuple[int, bool]:
    """Exact (rank, all-orthogonal) of the spanning family over Q(omega).

    Works in the cyclotomic field so the check is exact for every k.
    """
    if not 1 <= k <= m // 2:
        raise ValueError(f"need 1 <= k <= M/2, got k={k}, M={m}")
    omega = sp.exp(2 * sp.pi * sp.I / k)
    field = sp.QQ.algebraic_field(omega) if k > 2 else sp.QQ
    pairs = {(2 * l - 1, 2 * l) for l in range(1, k + 1)}
    keys = combinations(m, 2)
    rows = []
    for i, j in keys:
        if (i, j) in pairs:
            continue
        rows.append([sp.Integer(int(key == (i, j))) for key in keys])
    for jj in range(1, k):
        u = [sp.Integer(0)] * m
        v = [sp.Integer(0)] * m
        for l in range(1, k + 1):
            u[2 * l - 2] = omega ** (jj * (l - 1))
            v[2 * l - 1] = sp.Integer(1)
        rows.append([u[a - 1] * v[b - 1] - u[b - 1] * v[a - 1] for a, b in keys])
    dm = DomainMatrix([[field.from_sympy(sp.expand(x)) for x in r] for r in rows], (len(rows), len(keys)), field)
    rank = dm.rank()
    psi = [field.one if key in pairs else field.zero for key in keys]
    # psi has real coefficients, so <psi|row> needs no conjugation
    orth = all(sum((a * b for a, b in zip(psi, r)), field.zero) == field.zero for r in dm.to_list())
    return rank, orth


class Codim3Example(NamedTuple):
    L: Subspace
    L0: Subspace
    psi: NVector
    phi: NVector


def codim3_not_spanned(n: int, m: int) -> Codim3Example:
    """A codimension-3 subspace that no family of decomposables spans."""
    if n < 2 or m < n + 2:
        raise ValueError(f"need M >= N+2 >= 4, got N={n}, M={m}")
    tail = tuple(range(5, n + 3))
    phi = basis_nvector(m, *tail) if tail else NVector(m, 0, {(): 1}, EXACT)
    removed = {tuple(sorted(p + tail)) for p in [(1, 2), (2, 3), (2, 4), (3, 4)]}
    l0_vecs = [basis_nvector(m, *idx) for idx in combinations(m, n) if idx not in removed]
    psi = wedge_product(basis_nvector(m, 1, 2) + basis_nvector(m, 3, 4), phi)
    l0 = span(l0_vecs)
    big = span(l0_vecs + [psi])
    return Codim3Example(big, l0, psi, phi)


# ---------------------------------------------------------------------------
# Hodge duality


def _dual_factorization(f: Factorization) -> Factorization:
    m, n = f.m, f.n
    if not 0 < n < m:
        raise ValueError("duals are taken for 0 < N < M")
    star = hodge_dual(wedge_expand(f))
    if f.exact:
        conj_rows = [[z.conjugate() for z in r] for r in f.factors]
        comp = exact_nullspace(conj_rows, ncols=m)
        g = Factorization(m, tuple(tuple(r) for r in comp), EXACT)
        w = wedge_expand(g)
        lam = inner_product(w, star) / w.norm2()
        rows = (tuple(lam * x for x in comp[0]),) + tuple(tuple(r) for r in comp[1:])
        out = Factorization(m, rows, EXACT)
        if wedge_expand(out) != star:
            raise ArithmeticError("exact dual refactorization failed")
        return out
    q = row_space(f.matrix())
    if q.shape[0] != n:
        raise ValueError("member has linearly dependent factors")
    y = complete_rows(q)
    w = minors(y)
    lam = np.vdot(w, star.dense())
    y[0] *= lam
    return Factorization(m, tuple(map(tuple, y)), FLOAT)


def dual_fupb(s: CandidateSet) -> CandidateSet:
    """Hodge duals of every member, refactored in grade M - N."""
    members = tuple(_dual_factorization(f) for f in s.members)
    meta = dict(s.metadata)
    meta["dual_of_grade"] = s.n
    return s.replace(n=s.m - s.n, members=members, metadata=meta)
