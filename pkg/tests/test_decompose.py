import itertools
import math

import pytest

from potentsplit import (
    GaloisField,
    Matrix,
    NotIdempotentModIdeal,
    NotPotentModIdeal,
    NotSquareZero,
    PrimeField,
    RingElement,
    UnsupportedRing,
    companion,
    integers_mod,
    is_potent,
)
from potentsplit.decompose import (
    Guarantee,
    decompose,
    decompose_crt,
    decompose_local,
    decompose_over_field,
    decompose_zpr,
    lift_idempotent,
    lift_potent,
    lift_potent_exponent,
    lift_square_zero,
)
from potentsplit.oracle import all_matrices, verify_decomposition
from potentsplit.poly import Poly
from potentsplit.rings import DualNumbers, ZpSquared

from .conftest import random_matrix

F2, F3, F4 = PrimeField(2), PrimeField(3), GaloisField(2, 2)
Z4, Z8, Z9, Z12 = integers_mod(4), integers_mod(8), integers_mod(9), integers_mod(12)


def M(ring, rows):
    return Matrix(ring, rows)


def reduce_matrix(A):
    R = A.ring
    return A.map(R.reduce, R.residue_field)


# -- over a field ------------------------------------------------------------

def test_field_nilpotent_companion():
    A = companion(Poly(F2, [0, 0, 0, 1]))
    fd = decompose_over_field(A)
    assert fd.P == M(F2, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    assert fd.N == M(F2, [[0, 0, 1], [0, 0, 0], [0, 0, 0]])
    assert fd.k == 4


def test_field_zero_matrix():
    fd = decompose_over_field(Matrix.zeros(F3, 3))
    assert fd.P.is_zero() and fd.N.is_zero() and fd.E.is_zero()
    assert fd.k == 2


def test_field_invertible():
    A = M(F3, [[1, 0], [0, 2]])
    fd = decompose_over_field(A)
    assert fd.N.is_zero() and fd.P == A


def test_field_rejects_rings():
    with pytest.raises(UnsupportedRing):
        decompose_over_field(Matrix.identity(Z4, 2))


@pytest.mark.parametrize("field", [F2, F3], ids=str)
def test_field_identities_exhaustive_2x2(field):
    for A in all_matrices(field, 2):
        fd = decompose_over_field(A)
        assert all(fd.identities(A).values()), A


@pytest.mark.parametrize("field", [F2, F3, F4], ids=str)
def test_field_identities_random_5x5(field, rng):
    for _ in range(15):
        A = random_matrix(field, 5, rng)
        fd = decompose_over_field(A)
        assert all(fd.identities(A).values())


# -- lifting -----------------------------------------------------------------

def test_lift_idempotent_examples():
    assert lift_idempotent(M(Z4, [[3]])) == M(Z4, [[1]])
    E = M(Z4, [[1, 0], [0, 0]])
    assert lift_idempotent(E) == E
    e0 = M(Z4, [[3, 2], [2, 0]])
    E = lift_idempotent(e0)
    assert E * E == E
    assert reduce_matrix(E) == M(F2, [[1, 0], [0, 0]])


def test_lift_idempotent_rejects_non_idempotent_residue():
    with pytest.raises(NotIdempotentModIdeal):
        lift_idempotent(M(Z4, [[1, 1], [1, 1]]))


def test_lift_square_zero_examples():
    I = Matrix.identity(Z4, 2)
    assert lift_square_zero(Matrix.zeros(F2, 2), I).is_zero()
    n0 = M(F2, [[0, 1], [0, 0]])
    N = lift_square_zero(n0, I)
    assert (N * N).is_zero() and reduce_matrix(N) == n0


def test_lift_square_zero_example_entry(example_matrix):
    D = decompose_local(example_matrix)
    n0 = D.details["field"].N
    E = D.details["E"]
    # the pipeline lifts with the representative A - P0, whose entry is -1 = 3
    rep = example_matrix - D.details["P_lift"]
    assert lift_square_zero(n0, E, representative=rep) == Matrix.unit(Z4, 8, 3, 5, 3)
    # the canonical lift of n0 gives the other square-zero lift, 1 at that entry
    assert lift_square_zero(n0, E) == Matrix.unit(Z4, 8, 3, 5, 1)


def test_lift_square_zero_rejects_bad_input():
    with pytest.raises(NotSquareZero):
        lift_square_zero(M(F2, [[1, 0], [0, 0]]), Matrix.identity(Z4, 2))


@pytest.mark.parametrize("ring", [Z4, Z9, DualNumbers(2), DualNumbers(3)], ids=str)
def test_lift_square_zero_random(ring, rng):
    k = ring.residue_field
    for _ in range(30):
        A = random_matrix(ring, 3, rng)
        fd = decompose_over_field(reduce_matrix(A))
        E = lift_idempotent(fd.E.map(ring.lift, ring))
        N = lift_square_zero(fd.N, E)
        assert (N * N).is_zero()
        assert reduce_matrix(N) == fd.N
        assert E * N == N == N * E
        assert N.ring == ring and fd.N.ring == k


def test_lift_potent_exponent_examples():
    E = Matrix.identity(Z4, 1)
    assert lift_potent_exponent(E, E, 2) == 2
    assert lift_potent_exponent(M(Z4, [[3]]), E, 2) == 2


def test_lift_potent_exponent_example(example_matrix):
    D = decompose_local(example_matrix)
    P0, E = D.details["P_lift"], D.details["E"]
    assert D.details["k"] == 22
    assert lift_potent_exponent(P0, E, 22) == 2
    assert D.P**42 == E


# -- local decomposition -----------------------------------------------------

def test_local_examples():
    D = decompose_local(M(Z4, [[2]]))
    assert D.P == M(Z4, [[0]]) and D.N == M(Z4, [[2]])
    D = decompose_local(M(Z4, [[3]]))
    assert D.P == M(Z4, [[3]]) and D.N.is_zero() and D.exponent == 3


def test_local_example(example_matrix):
    D = decompose_local(example_matrix)
    assert D.exponent == 43
    assert D.P**43 == D.P and (D.N * D.N).is_zero() and D.P + D.N == example_matrix
    assert D.N == Matrix.unit(Z4, 8, 3, 5, 3)
    assert D.P**42 == Matrix(Z4, [[int(i == j and i < 6) for j in range(8)] for i in range(8)])
    assert D.passed


def test_local_example_with_radical_perturbation(example_matrix, rng):
    for _ in range(10):
        B = random_matrix(Z4, 8, rng)
        A = example_matrix + 2 * B
        D = decompose_local(A)
        assert D.passed
        assert verify_decomposition(A, D.P, D.N, "square-zero", D.exponent).passed


@pytest.mark.parametrize("ring,n", [(Z4, 1), (Z4, 2), (DualNumbers(2), 1), (DualNumbers(2), 2), (ZpSquared(3), 1)], ids=str)
def test_local_exhaustive(ring, n):
    for A in all_matrices(ring, n):
        D = decompose_local(A)
        assert D.passed, A
        assert D.exponent == (D.details["k"] - 1) * D.details["p"] + 1


def test_local_random_z9(rng):
    for _ in range(25):
        A = random_matrix(Z9, 4, rng)
        D = decompose_local(A)
        assert D.passed
        assert verify_decomposition(A, D.P, D.N, D.guarantee, D.exponent).passed


def test_local_rejects_unsupported():
    with pytest.raises(UnsupportedRing):
        decompose_local(Matrix.identity(Z8, 2))


@pytest.mark.parametrize("ring", [Z4, Z9, DualNumbers(2), DualNumbers(3)], ids=str)
def test_expansion_identity(ring, rng):
    """((P+EVE) + (1-E)VE + EV(1-E))^s splits into three terms when J^2 = 0."""
    for _ in range(6):
        A = random_matrix(ring, 3, rng)
        D = decompose_local(A)
        E, V, P0 = D.details["E"], D.details["V"], D.details["P_lift"]
        one_minus_E = Matrix.identity(ring, 3) - E
        X = P0 + E * V * E
        L = one_minus_E * V * E
        Rt = E * V * one_minus_E
        lhs = X + L + Rt
        for s in range(1, min(D.exponent, 40) + 1):
            rhs = X**s + L * X ** (s - 1) + X ** (s - 1) * Rt
            assert lhs**s == rhs


@pytest.mark.parametrize("ring", [Z4, Z9, DualNumbers(3)], ids=str)
def test_lifts_commute_with_reduction(ring, rng):
    for _ in range(10):
        A = random_matrix(ring, 3, rng)
        D = decompose_local(A)
        fd = D.details["field"]
        assert reduce_matrix(D.details["E"]) == fd.E
        assert reduce_matrix(D.details["P_lift"]) == fd.P
        assert reduce_matrix(D.details["N_lift"]) == fd.N


# -- potent lift -------------------------------------------------------------

def test_lift_potent_scalar_example():
    a = Z4(3)
    lifted = lift_potent(a, 2, 2, n=2)
    assert lifted.T == Z4(3)
    assert lifted.E == Z4(1)
    assert lifted.B == Z4(3)
    assert lifted.B**3 == lifted.B


def test_lift_potent_already_potent():
    for x in range(8):
        a = Z8(x)
        k = is_potent(a)
        if k is None:
            continue
        lifted = lift_potent(a, k, 4)
        assert lifted.B == a


def test_lift_potent_five_mod_eight():
    lifted = lift_potent(Z8(5), 2, 4)
    assert lifted.B.rep % 4 == 1
    assert is_potent(lifted.B) is not None


def test_lift_potent_rejects_non_potent_residue():
    with pytest.raises(NotPotentModIdeal):
        lift_potent(Z8(2), 2, 4)


@pytest.mark.parametrize("m,ideal", [(8, 4), (16, 4), (27, 9), (32, 4), (16, 2)])
def test_lift_potent_matrices(m, ideal, rng):
    R = integers_mod(m)
    R_small = integers_mod(ideal)
    done = 0
    while done < 20:
        a = random_matrix(R, 2, rng)
        t = is_potent(a.map(lambda x: x % ideal, R_small))
        if t is None:
            continue
        lifted = lift_potent(a, t, ideal)
        B, E = lifted.B, lifted.E
        assert E * E == E and E * a == a * E
        assert is_potent(B) is not None and B**lifted.exponent == B
        assert all((x - y) % ideal == 0 for rb, ra in zip(B.rows, a.rows) for x, y in zip(rb, ra))
        done += 1


# -- Z/p^r and Z/m -----------------------------------------------------------

def test_zpr_examples():
    D = decompose_zpr(M(Z8, [[2]]))
    assert D.P == M(Z8, [[0]]) and D.N == M(Z8, [[2]])
    assert (D.N * D.N).rows[0][0] % 4 == 0
    assert D.guarantee is Guarantee.SQUARE_IN_P2 and D.ideal == 4


def test_zpr_r2_is_local(rng):
    for _ in range(5):
        A = random_matrix(Z9, 3, rng)
        D1 = decompose_zpr(A)
        D2 = decompose_local(A)
        assert (D1.P, D1.N, D1.exponent) == (D2.P, D2.N, D2.exponent)
        assert D1.guarantee is Guarantee.SQUARE_ZERO


@pytest.mark.parametrize("m", [8, 16, 27, 32, 81])
def test_zpr_random(m, rng):
    R = integers_mod(m)
    for _ in range(15):
        A = random_matrix(R, 2, rng)
        D = decompose_zpr(A)
        assert D.passed
        assert verify_decomposition(A, D.P, D.N, D.guarantee, D.exponent, D.ideal).passed


def test_zpr_rejects_other_moduli():
    with pytest.raises(UnsupportedRing):
        decompose_zpr(M(Z12, [[1]]))
    with pytest.raises(UnsupportedRing):
        decompose_zpr(M(integers_mod(5), [[1]]))


def test_crt_examples():
    D = decompose_crt(M(Z12, [[7]]))
    assert D.P == M(Z12, [[7]]) and D.N.is_zero()
    D = decompose_crt(M(Z12, [[6]]))
    assert D.P == M(Z12, [[0]]) and D.N == M(Z12, [[6]])
    assert D.guarantee is Guarantee.SQUARE_ZERO
    A = M(Z4, [[2]])
    assert decompose_crt(A).P == decompose_local(A).P


def test_crt_exhaustive_1x1():
    for m in range(2, 80):
        R = integers_mod(m)
        for a in range(m):
            D = decompose(M(R, [[a]]))
            assert D.passed, (m, a)


@pytest.mark.parametrize("m", [12, 24, 36, 72, 200])
def test_crt_random(m, rng):
    R = integers_mod(m)
    for _ in range(8):
        A = random_matrix(R, 3, rng)
        D = decompose(A)
        assert D.passed
        assert verify_decomposition(A, D.P, D.N, D.guarantee, D.exponent, D.ideal).passed


def test_dispatcher_rejects_quotient_rings():
    from potentsplit import QuotientRing

    R = QuotientRing(4, [1, 1, 1])
    with pytest.raises(UnsupportedRing):
        decompose(Matrix.identity(R, 1))


def test_minimal_exponent_divides_structure(example_matrix):
    D = decompose_local(example_matrix)
    s = D.minimal_exponent()
    assert s is not None and (D.exponent - 1) % (s - 1) == 0
