"""An 8x8 matrix over Z/4, split into a potent part and a square-zero part.

The matrix is block diagonal: the companion matrix of x^3+x^2+1, a nilpotent
3x3 Jordan block, and two zero entries.  Adding 2*B for any B gives another
matrix with the same reduction mod 2, and the construction handles those too.
"""

import random

from potentsplit import Matrix, integers_mod
from potentsplit.decompose import decompose_local

Z4 = integers_mod(4)
A = Matrix(Z4, [
    [0, 0, 1, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0],
])

D = decompose_local(A)
print("A =")
print(A)
print("\nP =")
print(D.P)
print("\nN =")
print(D.N)

# Over F2 the invertible block has order 7 and the shifted Jordan block order 3,
# so the field exponent is 1 + 7*3 = 22; lifting to Z/4 doubles the period.
print(f"\nfield exponent k = {D.details['k']}, residue characteristic p = {D.details['p']}")
print(f"potent exponent (k-1)p+1 = {D.exponent}")
print("P^42 =")
print(D.P ** 42)
print("\ncertificate:", D.certificate)
print("smallest s with P^s = P:", D.minimal_exponent())

rng = random.Random(0)
B = Matrix(Z4, [[rng.randrange(4) for _ in range(8)] for _ in range(8)])
D2 = decompose_local(A + 2 * B)
print("\nwith a random 2B added, certificate passes:", D2.passed)
