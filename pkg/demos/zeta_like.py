"""Zeta-like double zetas and the Frobenius convention.

zeta(s)/zeta(n) lies in k exactly when Xi_s is torsion (A-even n) or when
Xi_s is dependent on v_n (A-odd n).  In characteristic p the value at
(p s1, p s2) is the p-th power of the value at (s1, s2), so such indices
are detected but not counted as new.
"""
from dzv.algebra import field
from dzv.pipeline import is_frobenius_image, zeta_like_indices

for q, weights in ((2, range(2, 17)), (3, range(3, 17))):
    print(f"q = {q}")
    for n in weights:
        idx, _ = zeta_like_indices(n, q)
        if not idx:
            continue
        p = field(q).p
        marks = [f"{s}{' (p-th power)' if is_frobenius_image(s, p) else ''}" for s in idx]
        print(f"  weight {n:>2}: " + ", ".join(marks))
