"""Z/p^r and composite moduli.

For r > 2 the nilpotent part is only promised to square into p^2 Z/p^r.
Composite moduli are split into prime powers, handled one by one and glued
back together.
"""

import random

from potentsplit import Matrix, crt_split, integers_mod
from potentsplit.decompose import decompose, decompose_zpr

rng = random.Random(4)

Z8 = integers_mod(8)
D = decompose_zpr(Matrix(Z8, [[2]]))
print("2 in Z/8:", D.P.tolist(), "+", D.N.tolist(), " N^2 =", (D.N * D.N).tolist(), D.guarantee.value)

Z27 = integers_mod(27)
A = Matrix(Z27, [[rng.randrange(27) for _ in range(3)] for _ in range(3)])
D = decompose_zpr(A)
print("\nrandom 3x3 over Z/27:")
print("P =")
print(D.P)
print("N^2 =")
print(D.N * D.N)
print("certificate:", D.certificate)

print("\n12 =", " * ".join(f"{p}^{r}" for p, r in crt_split(12)))
Z12 = integers_mod(12)
for a in (7, 6):
    D = decompose(Matrix(Z12, [[a]]))
    print(f"{a} in Z/12 -> P = {D.P.tolist()}, N = {D.N.tolist()}")
    for (p, r), part in D.details["components"]:
        print(f"    mod {p ** r}: {part.P.tolist()} + {part.N.tolist()}")

Z72 = integers_mod(72)
A = Matrix(Z72, [[rng.randrange(72) for _ in range(3)] for _ in range(3)])
D = decompose(A)
print(f"\nrandom 3x3 over Z/72: exponent {D.exponent}, guarantee {D.guarantee.value} (ideal {D.ideal})")
print("certificate:", D.certificate)
