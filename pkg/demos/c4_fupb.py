"""Solve the double-root condition for the complex C^4 FUPB and certify it."""

import numpy as np

from fermiupb import constructions as C
from fermiupb.verifier import check_orthogonality, verify_candidate

params = C.solve_c4_double_root(b=2.0)
print(f"b = {params.b}")
print(f"d = {params.d:.6f}   (published 1.13631-0.197693j)")
print(f"c = {params.c:.7f}  (published -0.829747+0.0716405j)")
print(f"|discriminant| = {abs(params.discriminant()):.2e}")

s = C.fupb_c4(params)
print(f"max pairwise overlap: {check_orthogonality(s):.2e}")

report = verify_candidate(s)
print(f"complement dimension {report.complement_dim}, verdict {report.unextendible} ({report.certificate})")

# the published six-digit values leave a small overlap
published = C.fupb_c4(C.PUBLISHED_C4_PARAMS, tol=1e-4)
print(f"published digits give overlap {check_orthogonality(published):.1e}")
print("members:")
for f in s:
    print(np.round(f.matrix(), 4))
