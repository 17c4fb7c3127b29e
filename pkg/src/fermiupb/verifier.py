"""Decide whether a candidate set is an (orthogonal or generalized) FUPB.

Verdicts are three-valued.  ``proven`` needs a certificate that can be
re-checked by arithmetic (exact when the input is exact); ``refuted`` needs
a decomposable witness in the orthogonal complement; the numerical search
alone never proves anything and ends in ``inconclusive-pass`` when every
restart stays above ``tol_clear``.  A best residual strictly between
``tol_found`` and ``tol_clear`` is reported as plain ``inconclusive``.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .constructions import CandidateSet
from .exterior import (
    Factorization,
    NVector,
    factorize,
    gram_inner_product,
    minors,
    plucker_relations,
    plucker_residual_dense,
    plucker_residual,
    wedge_expand,
    wedge_product,
)
from .linalg import complete_rows, exact_rank, float_rank, row_space
from .scalars import EXACT, FLOAT, ExactComplex
from .search import SearchConfig, SearchResult, search_decomposable, search_in_perp
from .subspace import Subspace, complement, project

__all__ = [
    "ClaimViolation",
    "ces_max_dim",
    "gfupb_min_cardinality",
    "tensor_upb_bounds",
    "check_orthogonality",
    "check_independence",
    "Dim1Certificate",
    "certify_dim1",
    "certify_pencil_m4",
    "witness_residuals",
    "VerificationReport",
    "verify_candidate",
    "extract_orthogonal_decomposables",
    "IntersectionResult",
    "intersecting_subspace",
    "CLAIM_TOL",
]

CLAIM_TOL = 1e-6

PROVEN = "proven"
REFUTED = "refuted"
PASS = "inconclusive-pass"
INCONCLUSIVE = "inconclusive"


class ClaimViolation(ValueError):
    """A candidate set contradicts one of its own claims."""


# ---------------------------------------------------------------------------
# bounds


def _check_domain(n: int, m: int):
    if not (isinstance(n, int) and isinstance(m, int)) or not 1 <= n <= m:
        raise ValueError(f"need integers 1 <= N <= M, got N={n}, M={m}")


def ces_max_dim(n: int, m: int) -> int:
    """Largest dimension of a completely entangled subspace of grade N in C^M."""
    _check_domain(n, m)
    return math.comb(m, n) - n * (m - n) - 1


def gfupb_min_cardinality(n: int, m: int) -> int:
    _check_domain(n, m)
    return n * (m - n) + 1


def tensor_upb_bounds(dims: Sequence[int], bipartite_fm: bool | None = None) -> dict:
    """Trivial bounds for product bases of a tensor product space.

    Returns ``L`` (generalized UPB lower bound), ``D`` (total dimension) and,
    for two parties, ``f_m`` (minimal UPB size).  ``bipartite_fm=True`` with
    three or more parties is an error since no closed form is known.
    """
    dims = [int(d) for d in dims]
    if not dims or any(d < 1 for d in dims):
        raise ValueError("dimensions must be positive integers")
    out = {"L": sum(dims) - len(dims) + 1, "D": math.prod(dims)}
    if len(dims) == 2:
        d1, d2 = dims
        if min(d1, d2) <= 2:
            fm = d1 * d2
        elif d1 >= 4 and d2 >= 4 and d1 % 2 == 0 and d2 % 2 == 0:
            fm = d1 + d2
        else:
            fm = d1 + d2 - 1
        out["f_m"] = fm
    elif bipartite_fm:
        raise ValueError("f_m has no known closed form beyond two parties")
    return out


# ---------------------------------------------------------------------------
# residual checks


def check_orthogonality(s: CandidateSet) -> float:
    """max |<i|j>| / (||i|| ||j||) over distinct pairs (0 for a single member)."""
    members = list(s.members)
    if not members:
        raise ValueError("empty candidate set")
    if len(members) == 1:
        return 0.0
    if s.backend == EXACT:
        norms2 = [float(gram_inner_product(f, f).re) for f in members]
        worst = 0.0
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                g = gram_inner_product(members[i], members[j])
                if g:
                    worst = max(worst, abs(g) / math.sqrt(norms2[i] * norms2[j]))
        return worst
    w = np.array([minors(f.matrix()) for f in members])
    nrm = np.linalg.norm(w, axis=1)
    gram = np.abs(w.conj() @ w.T) / np.outer(nrm, nrm)
    np.fill_diagonal(gram, 0.0)
    return float(gram.max())


def check_independence(s: CandidateSet) -> int:
    """Rank of the expansion matrix (exact on exact input)."""
    exps = s.expansions()
    if s.backend == EXACT:
        return exact_rank([v.dense() for v in exps])
    return float_rank(np.array([v.dense() for v in exps]))


def _member_residual(s: CandidateSet) -> float:
    res = [plucker_residual(v) for v in s.expansions() if not v.is_zero(0.0)]
    return max(res, default=0.0)


# ---------------------------------------------------------------------------
# certificates


class Dim1Certificate(NamedTuple):
    """Evidence that the generator of a line is not decomposable."""

    generator: NVector
    relation_index: int
    relation_value: object
    residual: float
    exact: bool


def certify_dim1(t: Subspace, tol_found: float = SearchConfig.tol_found) -> Dim1Certificate | None:
    """Entanglement certificate for a one-dimensional subspace, or ``None``.

    A nonzero Plücker relation (for N = 2 equivalently g ^ g != 0) shows the
    generator is entangled.  Exact input is decided exactly; floating input
    only yields a certificate when the residual exceeds 1e3 * tol_found.
    """
    if t.dim != 1:
        raise ValueError(f"certify_dim1 needs a line, got dimension {t.dim}")
    g = t.vectors()[0]
    if t.n < 2 or t.n > t.m - 2:
        return None  # every vector of these grades is decomposable
    rel = plucker_relations(g)
    if t.exact:
        for k, r in enumerate(rel):
            if r:
                if t.n == 2:
                    assert not wedge_product(g, g).is_zero()
                return Dim1Certificate(g, k, r, plucker_residual(g), True)
        return None
    res = plucker_residual(g)
    if res <= 1e3 * tol_found:
        return None
    k = int(np.argmax(np.abs(rel)))
    return Dim1Certificate(g, k, complex(rel[k]), res, False)


def _quadratic_form(a: NVector, b: NVector):
    """Coefficients of q(lam) = Q(a + lam b) for the single relation in C^4."""

    def q(u, v):
        # symmetric bilinear form of p12 p34 - p13 p24 + p14 p23
        pu = lambda *i: u[i]  # noqa: E731
        pv = lambda *i: v[i]  # noqa: E731
        return (
            pu(1, 2) * pv(3, 4) + pv(1, 2) * pu(3, 4)
            - pu(1, 3) * pv(2, 4) - pv(1, 3) * pu(2, 4)
            + pu(1, 4) * pv(2, 3) + pv(1, 4) * pu(2, 3)
        )

    half = ExactComplex(1, 0) / 2 if a.exact else 0.5
    return q(a, a) * half, q(a, b), q(b, b) * half


def certify_pencil_m4(t: Subspace, zero_tol: float = 1e-14) -> Factorization:
    """Decomposable element of a 2-dimensional subspace of 2-vectors in C^4.

    With generators A, B the relation restricted to A + lam B is a quadratic
    q0 + q1 lam + q2 lam^2.  A root (or the point at infinity, B) gives the
    witness; such a root always exists over the complex numbers.
    """
    if (t.n, t.m, t.dim) != (2, 4, 2):
        raise ValueError("pencil certificate needs a 2-dimensional subspace of 2-vectors in C^4")
    a, b = t.vectors()
    q0, q1, q2 = _quadratic_form(a, b)
    if t.exact:
        if not q0:
            return factorize(a)
        if not q2:
            return factorize(b)
        a, b = a.to_float(), b.to_float()
        q0, q1, q2 = complex(q0), complex(q1), complex(q2)
    if abs(q0) <= zero_tol * a.norm2():
        return factorize(a)
    if abs(q2) <= zero_tol * b.norm2():
        return factorize(b)
    disc = cmath.sqrt(q1 * q1 - 4 * q0 * q2)
    # the larger-magnitude denominator avoids cancellation
    den = -q1 - disc if abs(-q1 - disc) >= abs(-q1 + disc) else -q1 + disc
    lam = 2 * q0 / den if den != 0 else -q1 / (2 * q2)
    psi = a + b * lam
    return factorize(psi / psi.norm())


def witness_residuals(w: Factorization, target: Subspace) -> tuple[float, float]:
    """(||P_target w|| / ||w||, Plücker residual) for a normalized witness."""
    v = wedge_expand(w)
    if v.is_zero():
        return math.inf, math.inf
    if target.exact and v.exact:
        proj = project(target, v)
        return (proj.norm() / v.norm(), plucker_residual(v))
    q = target.orthonormal()
    d = v.to_float().dense()
    return (float(np.linalg.norm(q.conj() @ d) / np.linalg.norm(d)), plucker_residual(v.to_float()))


# ---------------------------------------------------------------------------
# verification pipeline


@dataclass
class VerificationReport:
    n: int
    m: int
    size: int
    backend: str
    claims: dict
    orthogonality_residual: float
    independence_rank: int
    member_decomposability_residual: float
    complement_dim: int
    bound_checks: dict
    search: dict
    verdict: dict
    config: dict = field(default_factory=dict)

    @property
    def unextendible(self) -> str:
        return self.verdict["unextendible"]

    @property
    def certificate(self) -> str:
        return self.verdict["certificate"]

    @property
    def witness(self) -> Factorization | None:
        return self.search.get("witness")

    def to_dict(self) -> dict:
        from .io import report_to_dict

        return report_to_dict(self)


def _search_block(result: SearchResult | None = None, witness=None) -> dict:
    if result is None:
        return {"best_residual": None, "restarts_used": 0, "witness": witness}
    return {
        "best_residual": result.best_residual,
        "restarts_used": result.restarts_used,
        "witness": witness if witness is not None else result.witness,
    }


def verify_candidate(s: CandidateSet, cfg: SearchConfig | None = None) -> VerificationReport:
    """Full check of a candidate set; raises ClaimViolation on false claims."""
    cfg = cfg or SearchConfig()
    if len(s) == 0:
        raise ValueError("empty candidate set")
    n, m = s.n, s.m
    orth = check_orthogonality(s)
    if s.orthogonal and orth > CLAIM_TOL:
        raise ClaimViolation(f"set claims orthogonality but the pair residual is {orth:.3e}")
    rank = check_independence(s)
    if s.independent and rank < len(s):
        raise ClaimViolation(f"set claims independence but has rank {rank} < {len(s)}")
    member_res = _member_residual(s)
    if member_res > CLAIM_TOL:
        raise ClaimViolation(f"member Plücker residual {member_res:.3e}")

    target = s.span()
    comp = complement(target)
    cdim = comp.dim
    bounds = {
        "min_cardinality_ok": cdim == 0 or len(s) >= gfupb_min_cardinality(n, m),
        "ces_dim_ok": cdim <= max(ces_max_dim(n, m), 0),
    }
    certificate = "none"
    witness = None
    result = None
    if cdim == 0:
        verdict, certificate = PROVEN, "full-span"
    elif cdim == 1 and certify_dim1(comp, cfg.tol_found) is not None:
        verdict, certificate = PROVEN, "dim1-plucker"
    elif cdim == 1 and comp.exact:
        # exactly decomposable generator
        witness = factorize(comp.vectors()[0])
        verdict = REFUTED
    elif (n, m, cdim) == (2, 4, 2):
        witness = certify_pencil_m4(comp)
        verdict, certificate = REFUTED, "pencil-m4"
    else:
        result = search_decomposable(comp, cfg)
        if result.found:
            witness, verdict = result.witness, REFUTED
        elif result.best_residual >= cfg.tol_clear:
            verdict = PASS
        else:
            verdict = INCONCLUSIVE
    if verdict == REFUTED:
        proj, pres = witness_residuals(witness, target)
        if proj > cfg.tol_found or pres > cfg.tol_found:
            verdict, certificate = INCONCLUSIVE, "none"
    return VerificationReport(
        n=n,
        m=m,
        size=len(s),
        backend=s.backend,
        claims=s.claims,
        orthogonality_residual=orth,
        independence_rank=rank,
        member_decomposability_residual=member_res,
        complement_dim=cdim,
        bound_checks=bounds,
        search=_search_block(result, witness),
        verdict={"unextendible": verdict, "certificate": certificate},
        config={
            "seed": cfg.seed,
            "restarts": cfg.restarts,
            "max_iters": cfg.max_iters,
            "tol_found": cfg.tol_found,
            "tol_clear": cfg.tol_clear,
        },
    )


# ---------------------------------------------------------------------------
# constructive results


def _float_rows(f: Subspace) -> np.ndarray:
    return np.asarray(f.orthonormal(), dtype=complex)


def _restrict_orthogonal(q: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Orthonormal rows of {v in rowspan(q) : <w|v> = 0}."""
    a = q @ w.conj()  # <w|q_i>
    a = a / np.linalg.norm(a)
    coef = complete_rows(a.conj()[None, :])
    return coef @ q


def extract_orthogonal_decomposables(f: Subspace, cfg: SearchConfig | None = None) -> list[Factorization]:
    """Greedily peel pairwise orthogonal decomposable vectors out of ``f``.

    At least dim F - ces_max_dim of them exist; a numerical search failure
    ends the loop early with a RuntimeWarning.
    """
    cfg = cfg or SearchConfig()
    n, m = f.n, f.m
    target = f.dim - max(ces_max_dim(n, m), 0)
    q = _float_rows(f)
    out: list[Factorization] = []
    # decomposable generators of F are free picks for the greedy step
    for g in f.basis:
        if q.shape[0] == 0:
            break
        v = g.to_float().dense()
        v = v / np.linalg.norm(v)
        inside = np.linalg.norm(q.conj() @ v)
        if abs(inside - 1) > cfg.tol_found or plucker_residual_dense(v, m, n) > cfg.tol_found:
            continue
        out.append(factorize(NVector.from_dense(m, n, v, FLOAT), tol=cfg.tol_found))
        q = _restrict_orthogonal(q, v)
    while q.shape[0] > 0:
        sub = Subspace(m, n, tuple(NVector.from_dense(m, n, r, FLOAT) for r in q), FLOAT)
        if (n, m, q.shape[0]) == (2, 4, 2):
            w = certify_pencil_m4(sub)
        else:
            res = search_in_perp(complete_rows(q), n, m, cfg)
            if not res.found:
                break
            w = res.witness
        v = minors(w.matrix())
        v = v / np.linalg.norm(v)
        out.append(w)
        q = _restrict_orthogonal(q, v)
    if len(out) < target:
        warnings.warn(
            f"found {len(out)} orthogonal decomposables, fewer than the guaranteed {target}",
            RuntimeWarning,
            stacklevel=2,
        )
    return out


class IntersectionResult(NamedTuple):
    subspace: np.ndarray | None
    sin_angles: list
    search: SearchResult


def _sin_smallest_angle(f: np.ndarray, s: np.ndarray) -> float:
    """sin of the smallest principal angle between row spaces of f and s."""
    qs = row_space(s)
    resid = f - (f @ qs.conj().T) @ qs
    return float(np.linalg.svd(resid, compute_uv=False)[-1])


def intersecting_subspace(
    subspaces: Sequence[np.ndarray], n: int, m: int, cfg: SearchConfig | None = None,
    angle_tol: float = 1e-6, enforce_bound: bool = True,
) -> IntersectionResult:
    """An N-dimensional F meeting every given (M-N)-dimensional subspace.

    Each subspace S_i (rows spanning it in C^M) yields the decomposable vector
    psi_i whose support is the orthogonal complement of S_i.  A decomposable f
    orthogonal to every psi_i has support F with F meeting each S_i.
    ``enforce_bound=False`` allows more than N(M-N) subspaces, where the
    construction is expected to fail; useful as a negative control.
    """
    cfg = cfg or SearchConfig()
    _check_domain(n, m)
    if enforce_bound and len(subspaces) > n * (m - n):
        raise ValueError(f"at most N(M-N) = {n * (m - n)} subspaces are allowed")
    psis = []
    for s in subspaces:
        s = np.atleast_2d(np.asarray(s, dtype=complex))
        q = row_space(s)
        if q.shape != (m - n, m):
            raise ValueError(f"each subspace must have dimension M-N = {m - n}")
        psis.append(minors(complete_rows(q)))
    perp = row_space(np.array(psis)) if psis else np.zeros((0, math.comb(m, n)), dtype=complex)
    res = search_in_perp(perp, n, m, cfg)
    if not res.found:
        return IntersectionResult(None, [], res)
    fr = row_space(res.witness.matrix())
    sins = [_sin_smallest_angle(fr, np.atleast_2d(np.asarray(s, dtype=complex))) for s in subspaces]
    if any(x > angle_tol for x in sins):
        return IntersectionResult(None, sins, res)
    return IntersectionResult(fr, sins, res)
