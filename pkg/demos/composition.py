"""Eleven-member FUPB of 2 fermions in 6 modes from two trivial blocks and the pentagon UPB."""

import numpy as np

from fermiupb import constructions as C
from fermiupb.linalg import row_space
from fermiupb.search import SearchConfig, search_product_vector
from fermiupb.verifier import verify_candidate

upb = C.pentagon_upb()
rows = row_space(np.array([np.kron(a, b) for a, b in upb]))
res = search_product_vector(rows, (3, 3), SearchConfig(restarts=200))
print(f"pentagon: best product-vector residual in its complement {res.best_residual:.3g}")

s = C.compose_bipartite_fupb((3, 3), [None, None], {(0, 1): upb})
r = verify_candidate(s)
print(f"composed set: {len(s)} members, orthogonality {r.orthogonality_residual:.1e}")
print(f"complement dimension {r.complement_dim}")
print(f"verdict {r.unextendible}, best residual {r.search['best_residual']:.3g}")
