"""A hyperplane spanned by decomposables although it holds no orthogonal FUPB basis."""

import math

from fermiupb import constructions as C
from fermiupb.exterior import wedge_expand

for m in (4, 6, 8):
    k = m // 2
    rank, orth = C.spanning_certificate(m, k)
    print(f"M={m}, k={k}: exact rank {rank} of {math.comb(m, 2) - 1}, all orthogonal to psi: {orth}")

print("M=4 members:")
for f in C.hyperplane_gfupb_spanning(4, 2):
    print(" ", wedge_expand(f))
