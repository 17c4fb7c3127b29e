"""Padding and Hodge duality move FUPBs between modes and particle numbers."""

from fermiupb import constructions as C
from fermiupb.verifier import check_orthogonality, verify_candidate

c4 = C.fupb_c4()
padded = C.pad_fupb(c4)
twice = C.pad_fupb(padded)
dual = C.dual_fupb(padded)
print(f"C^4 set: {len(c4)} members")
print(f"padded once: {len(padded)} members in grade 2 of C^{padded.m}")
print(f"padded twice: {len(twice)} members in grade 2 of C^{twice.m}")
print(f"dual of padded: {len(dual)} members in grade {dual.n} of C^{dual.m}, "
      f"overlap {check_orthogonality(dual):.1e}")
for n, m in [(3, 5), (3, 6)]:
    h = C.hyperplane_fupb(n, m)
    r = verify_candidate(h)
    print(f"hyperplane set ({n},{m}): {len(h)} members, verdict {r.unextendible} ({r.certificate})")
