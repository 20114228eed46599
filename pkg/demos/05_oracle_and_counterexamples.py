"""Brute force: where square-zero parts are not enough, and what a cube buys.

Over Z/8 the radical (2) does not square to zero, and 2 cannot be written as
potent + square-zero.  The same happens for x^2+x+1 in the 4096-element ring
Z/4[x]/((x^2+x+1)^3).  With nilpotents of index 3 every element of Z/8
splits; the table below is evidence, not a proof of anything more general.
"""

from potentsplit import Matrix, integers_mod, parse_ring
from potentsplit.oracle import conjecture_table, exhaustive_decomposition_search, sweep

Z8 = integers_mod(8)
rep = exhaustive_decomposition_search(Z8(2), max_nil_index=2)
print(f"2 in Z/8, N^2 = 0: found = {rep.found}, candidates tried = {rep.search_size}")

R = parse_ring("Z/4[x]/(x^6+3x^5+2x^4+3x^3+2x^2+3x+1)")
rep = exhaustive_decomposition_search(R("x^2+x+1"), max_nil_index=2)
print(f"x^2+x+1 in {R} ({R.size} elements): found = {rep.found}, candidates tried = {rep.search_size}")

print("\nZ/8 with N^3 = 0:")
for row in conjecture_table(Z8, 1, 3):
    P, N = row.found
    print(f"  {row.A.rows[0][0]} = {P.rows[0][0]} + {N.rows[0][0]}")

# Every 2x2 over Z/4 (radical squares to zero) is decomposed and re-checked.
summary = sweep(integers_mod(4), 2)
print("\nsweep Z/4 2x2:", {k: v for k, v in summary.items() if k != "examples"})

rep = exhaustive_decomposition_search(Matrix(integers_mod(4), [[1, 2], [0, 1]]), 2)
P, N = rep.found
print("first brute-force split of [[1,2],[0,1]] over Z/4:", P.tolist(), "+", N.tolist())
