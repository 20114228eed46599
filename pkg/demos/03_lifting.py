"""Lifting idempotents, square-zero matrices and potent elements."""

from potentsplit import Matrix, integers_mod
from potentsplit.decompose import lift_idempotent, lift_potent, lift_square_zero
from potentsplit.rings import DualNumbers

Z4 = integers_mod(4)

# 3 reduces to the idempotent 1 mod 2; one step of e <- 3e^2 - 2e^3 fixes it.
print("idempotent lift of [[3]]:", lift_idempotent(Matrix(Z4, [[3]])).tolist())

e0 = Matrix(Z4, [[3, 2], [2, 0]])
E = lift_idempotent(e0)
print("idempotent lift of", e0.tolist(), "->", E.tolist(), " E^2 == E:", E * E == E)

# Over F2[t]/(t^2) the radical is generated by t instead of 2.
R = DualNumbers(2)
e0 = Matrix(R, [["t+1", "t"], ["0", "t"]])
E = lift_idempotent(e0)
print(f"over {R}:", E.tolist())

# A square-zero residue matrix lifts to a square-zero matrix.
F2 = Z4.residue_field
n0 = Matrix(F2, [[0, 1], [0, 0]])
N = lift_square_zero(n0, Matrix.identity(Z4, 2))
print("\nsquare-zero lift of", n0.tolist(), "->", N.tolist(), " N^2 = 0:", (N * N).is_zero())

# Potent lifting over Z/m: a is t-potent modulo a nilpotent ideal.
# 3 and 7 are 3-potent modulo 4; 5 is idempotent modulo 4.
Z8 = integers_mod(8)
for a, t in ((3, 3), (5, 2), (7, 3)):
    out = lift_potent(Z8(a), t, 4)
    print(f"\nlift of {a} in Z/8 modulo 4: T = {out.T}, E = {out.E}, B = {out.B}, B^{out.exponent} = B")

# Matrices work the same way.
Z27 = integers_mod(27)
a = Matrix(Z27, [[1, 9], [18, 10]])
out = lift_potent(a, 2, 9)
print("\nmatrix over Z/27, idempotent modulo 9:")
print(out.B)
print(f"B^{out.exponent} = B")
