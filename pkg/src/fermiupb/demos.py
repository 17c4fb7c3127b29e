"""Short end-to-end pipelines shared by the CLI ``demo`` command and demos/."""

from __future__ import annotations

import math

import numpy as np

from . import constructions as C
from .exterior import inner_product, is_decomposable, wedge_expand
from .search import SearchConfig
from .verifier import check_orthogonality, verify_candidate

__all__ = ["run", "DEMOS"]


def _report(s, cfg):
    r = verify_candidate(s, cfg)
    return {
        "members": r.size,
        "rank": r.independence_rank,
        "complement_dim": r.complement_dim,
        "orthogonality_residual": r.orthogonality_residual,
        "verdict": r.unextendible,
        "certificate": r.certificate,
        "best_residual": r.search["best_residual"],
    }


def demo_c4(cfg: SearchConfig) -> dict:
    s = C.fupb_c4()
    out = {"b": s.metadata["b"], "c": s.metadata["c"], "d": s.metadata["d"]}
    out.update(_report(s, cfg))
    return out


def demo_vandermonde(cfg: SearchConfig) -> dict:
    out = {}
    for n, m in [(2, 4), (2, 5), (3, 5)]:
        out[f"N={n},M={m}"] = _report(C.vandermonde_gfupb(n, m), cfg)
    return out


def demo_compose(cfg: SearchConfig) -> dict:
    s = C.compose_bipartite_fupb((3, 3), [None, None], {(0, 1): C.pentagon_upb()})
    return _report(s, cfg)


def demo_real(cfg: SearchConfig, samples: int = 20) -> dict:
    rng = np.random.default_rng(cfg.seed)
    worst_orth, decomposable = 0.0, 0
    for _ in range(samples):
        p = C.RealCanonicalParams.sample(rng)
        members = C.real_canonical_members(p)
        w = wedge_expand(C.real_extension_witness(p))
        wn = w.norm()
        for f in members.members:
            v = wedge_expand(f)
            worst_orth = max(worst_orth, abs(inner_product(v, w)) / (v.norm() * wn))
        decomposable += is_decomposable(w)
    return {"samples": samples, "max_overlap": worst_orth, "decomposable_witnesses": decomposable}


def demo_duality(cfg: SearchConfig) -> dict:
    padded = C.pad_fupb(C.fupb_c4())
    dual = C.dual_fupb(padded)
    return {
        "padded": _report(padded, cfg),
        "dual": _report(dual, cfg),
        "dual_orthogonality": check_orthogonality(dual),
    }


def demo_spanning(cfg: SearchConfig) -> dict:
    out = {}
    for m, k in [(4, 2), (6, 3)]:
        rank, orth = C.spanning_certificate(m, k)
        out[f"M={m},k={k}"] = {"rank": rank, "expected": math.comb(m, 2) - 1, "orthogonal": orth}
    return out


DEMOS = {
    "c4": demo_c4,
    "vandermonde": demo_vandermonde,
    "compose": demo_compose,
    "real": demo_real,
    "duality": demo_duality,
    "spanning": demo_spanning,
}


def run(name: str, cfg: SearchConfig | None = None) -> dict:
    cfg = cfg or SearchConfig()
    try:
        fn = DEMOS[name]
    except KeyError:
        raise ValueError(f"unknown demo {name!r}") from None
    return {"demo": name, "seed": cfg.seed, "result": fn(cfg)}
