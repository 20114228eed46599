import itertools

import pytest

from potentsplit import (
    GaloisField,
    Matrix,
    NotSquareZero,
    PrimeField,
    UnsupportedRing,
    companion,
    integers_mod,
    invariant_factors,
    mat_inverse,
    primary_rcf,
    square_zero_frame,
)
from potentsplit.canonical import elementary_divisors, square_zero_partner
from potentsplit.oracle import all_matrices
from potentsplit.poly import Poly, poly_factor

from .conftest import EXAMPLE_ROWS, random_matrix
from .oracles import charpoly_leibniz

F2, F3, F4 = PrimeField(2), PrimeField(3), GaloisField(2, 2)


def test_invariant_factor_examples():
    assert invariant_factors(companion(Poly(F2, [0, 0, 1]))) == [Poly(F2, [0, 0, 1])]
    x = Poly.x(F2)
    assert invariant_factors(Matrix.zeros(F2, 2)) == [x, x]
    assert invariant_factors(Matrix(F3, [[1, 0], [0, 2]])) == [Poly(F3, [2, 0, 1])]


def test_invariant_factors_need_a_field():
    with pytest.raises(UnsupportedRing):
        invariant_factors(Matrix.identity(integers_mod(4), 2))


@pytest.mark.parametrize("field", [F2, F3, F4], ids=str)
def test_invariant_factor_chain(field, rng):
    for n in range(1, 6):
        for _ in range(6):
            A = random_matrix(field, n, rng)
            fs = invariant_factors(A)
            for f, g in zip(fs, fs[1:]):
                assert (g % f).is_zero()
            prod = Poly.one(field)
            for f in fs:
                assert f.is_monic()
                prod = prod * f
            if n <= 5:
                assert prod == charpoly_leibniz(A)
            # the last invariant factor annihilates A
            last = fs[-1]
            acc = Matrix.zeros(field, n)
            for c in reversed(last.coeffs):
                acc = acc * A + Matrix.identity(field, n).scale(c)
            assert acc.is_zero()


def test_example_reduction_divisors():
    A = Matrix(F2, EXAMPLE_ROWS)
    rcf = primary_rcf(A)
    got = [p**e for p, e in rcf.divisors]
    x = Poly.x(F2)
    assert got == [Poly(F2, [1, 0, 1, 1]), x**3, x, x]
    assert rcf.Q.is_identity()
    assert rcf.assembled() == A


def test_identity_rcf():
    rcf = primary_rcf(Matrix.identity(F3, 3))
    assert [p**e for p, e in rcf.divisors] == [Poly(F3, [2, 1])] * 3
    assert rcf.Q.is_identity()


def _multiset_from_invariants(A):
    out = []
    for f in invariant_factors(A):
        out.extend((g, m) for g, m in poly_factor(f))
    return sorted(out, key=lambda gm: (gm[0].sort_key(), gm[1]))


@pytest.mark.parametrize("field", [F2, F3, F4, GaloisField(3, 2)], ids=str)
def test_rcf_reconstruction(field, rng):
    for n in range(1, 6):
        for _ in range(8):
            A = random_matrix(field, n, rng)
            rcf = primary_rcf(A)
            D = Matrix.block_diag(field, list(rcf.blocks))
            assert mat_inverse(rcf.Q) * A * rcf.Q == D
            for (p, e), C in zip(rcf.divisors, rcf.blocks):
                assert C == companion(p**e)
            got = sorted(rcf.divisors, key=lambda gm: (gm[0].sort_key(), gm[1]))
            assert got == _multiset_from_invariants(A)


def test_rcf_block_order(rng):
    for _ in range(40):
        A = random_matrix(F2, 5, rng)
        cats = []
        for p, e in elementary_divisors(A):
            q = p**e
            cats.append(0 if q.coeff(0) != 0 else (1 if q.degree >= 2 else 2))
        assert cats == sorted(cats)


def test_rcf_is_deterministic(rng):
    A = random_matrix(F3, 5, rng)
    a, b = primary_rcf(A), primary_rcf(A)
    assert a.Q == b.Q and a.blocks == b.blocks


def test_square_zero_frame_examples():
    S, r = square_zero_frame(Matrix.zeros(F2, 3))
    assert S.is_identity() and r == 0
    S, r = square_zero_frame(Matrix(F2, [[0, 1], [0, 0]]))
    assert S.is_identity() and r == 1
    A = Matrix(F3, [[1, 1], [2, 2]])
    S, r = square_zero_frame(A)
    assert r == 1
    _check_partner(A)


def test_square_zero_frame_rejects_other_matrices():
    with pytest.raises(NotSquareZero):
        square_zero_frame(Matrix(F2, [[1, 0], [0, 0]]))


def _check_partner(A):
    B = square_zero_partner(A)
    assert A * B * A == A
    assert B * A * B == B
    assert (B * B).is_zero()
    return B


def _frame_shape(S, r, A):
    n = A.n
    M = mat_inverse(S) * A * S
    expected = [[0] * n for _ in range(n)]
    for i in range(r):
        expected[i][r + i] = 1
    return M == Matrix(A.ring, expected)


@pytest.mark.parametrize("n", [2, 3])
def test_square_zero_frame_exhaustive_f2(n):
    count = 0
    for A in all_matrices(F2, n):
        if not (A * A).is_zero():
            continue
        count += 1
        S, r = square_zero_frame(A)
        assert _frame_shape(S, r, A)
        _check_partner(A)
    # square-zero n x n over F2: 4 for n=2, 22 for n=3
    assert count == {2: 4, 3: 22}[n]


def test_square_zero_frame_f3_exhaustive():
    for A in all_matrices(F3, 2):
        if (A * A).is_zero():
            S, r = square_zero_frame(A)
            assert _frame_shape(S, r, A)
            _check_partner(A)
