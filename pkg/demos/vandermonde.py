"""Minimal generalized FUPBs from Vandermonde rows."""

import sys
import time

from fermiupb import constructions as C
from fermiupb.search import SearchConfig, search_decomposable
from fermiupb.subspace import complement
from fermiupb.verifier import certify_dim1, check_independence, gfupb_min_cardinality

restarts = int(sys.argv[1]) if len(sys.argv) > 1 else 200

s = C.vandermonde_gfupb(2, 4)
comp = complement(s.span())
cert = certify_dim1(comp)
print(f"(2,4): {len(s)} members, rank {check_independence(s)}, complement dim {comp.dim}")
print(f"  complement generator {comp.vectors()[0]}")
print(f"  exact Plücker relation #{cert.relation_index} = {cert.relation_value}")

for n, m in [(2, 5), (2, 6), (3, 5), (3, 6)]:
    t0 = time.perf_counter()
    s = C.vandermonde_gfupb(n, m)
    res = search_decomposable(complement(s.span()), SearchConfig(restarts=restarts))
    print(
        f"({n},{m}): {len(s)} members (minimum {gfupb_min_cardinality(n, m)}), "
        f"rank {check_independence(s)}, best residual {res.best_residual:.3g} "
        f"over {res.restarts_used} restarts, {time.perf_counter() - t0:.1f}s"
    )
