"""Matrices over finite fields: canonical form first, decomposition second."""

import random

from potentsplit import GaloisField, Matrix, PrimeField, companion, invariant_factors, primary_rcf
from potentsplit.decompose import decompose_over_field
from potentsplit.matrices import mat_inverse
from potentsplit.poly import Poly

rng = random.Random(3)
F3 = PrimeField(3)

# Hide the blocks x^2+1, x^2 and x behind a random change of basis.
blocks = Matrix.block_diag(
    F3, [companion(Poly(F3, [1, 0, 1])), companion(Poly(F3, [0, 0, 1])), companion(Poly.x(F3))]
)
while True:
    S = Matrix(F3, [[rng.randrange(3) for _ in range(5)] for _ in range(5)])
    try:
        A = S * blocks * mat_inverse(S)
        break
    except ArithmeticError:
        continue
print("A over GF(3):")
print(A)

print("\ninvariant factors:", [f.to_string() for f in invariant_factors(A)])
rcf = primary_rcf(A)
print("elementary divisors:", [(p ** e).to_string() for p, e in rcf.divisors])
print("Q^-1 A Q =")
print(mat_inverse(rcf.Q) * A * rcf.Q)

# Invertible companion blocks stay as they are.  Nilpotent blocks x^s with
# s >= 2 get a corner entry that makes them invertible; the same entry with
# the opposite sign is the square-zero part.  1x1 zero blocks stay zero.
fd = decompose_over_field(A)
print(f"\nk = {fd.k}")
for name, ok in fd.identities(A).items():
    print(f"  {name:10s} {ok}")

# The same works over extension fields; entries print as polynomials in x.
F4 = GaloisField(2, 2)
elems = F4.element_list()
B = Matrix(F4, [[rng.choice(elems) for _ in range(4)] for _ in range(4)])
fd = decompose_over_field(B)
print(f"\nover {F4}: k = {fd.k}, all identities hold: {all(fd.identities(B).values())}")
print("P =")
print(fd.P)
