"""Potent plus square-zero decompositions.

Pipeline, from the bottom up:

* :func:`decompose_over_field` splits every companion block of the primary
  rational canonical form.  Invertible blocks are kept whole; a nilpotent
  block ``x^s`` (s >= 2) becomes a full-cycle permutation plus a single
  ``-1`` in its top-right corner; 1 x 1 zero blocks stay zero.
* Over a local ring whose maximal ideal squares to zero, the field answer for
  the residue matrix is lifted (:func:`lift_idempotent`,
  :func:`lift_square_zero`, :func:`lift_potent_exponent`) and the remaining
  radical part ``V = A - P - N`` is distributed over the corners cut out by
  the idempotent ``E`` (:func:`decompose_local`).
* Over Z/p^r with r > 2 the Z/p^2 answer is lifted to a potent matrix with
  :func:`lift_potent`; the nilpotent part then only squares into p^2.
* :func:`decompose_crt` handles Z/m componentwise.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from math import comb

from .canonical import divisor_category, primary_rcf, square_zero_partner
from .errors import (
    CornerMismatch,
    LiftIdentityFailed,
    NotIdempotentModIdeal,
    NotPotentModIdeal,
    NotSquareZero,
    UnsupportedRing,
)
from .matrices import Matrix, mat_inverse, order_of_invertible
from .rings import RingElement, ZpSquared, crt_split, is_potent, prime_power, square_ideal_generator

__all__ = [
    "Guarantee",
    "FieldDecomposition",
    "PotentDecomposition",
    "PotentLift",
    "decompose",
    "decompose_over_field",
    "lift_idempotent",
    "lift_square_zero",
    "lift_potent_exponent",
    "lift_potent",
    "decompose_local",
    "decompose_zpr",
    "decompose_crt",
]


class Guarantee(str, Enum):
    SQUARE_ZERO = "square-zero"
    SQUARE_IN_P2 = "square-in-p2"


@dataclass(frozen=True)
class FieldDecomposition:
    P: Matrix
    N: Matrix
    k: int
    E: Matrix
    rcf: object = None

    def identities(self, A):
        P, N, E, k = self.P, self.N, self.E, self.k
        return {
            "A=P+N": A == P + N,
            "P^k=P": P**k == P,
            "N^2=0": (N * N).is_zero(),
            "E=P^(k-1)": E == P ** (k - 1),
            "E^2=E": E * E == E,
            "EN=NE=N": E * N == N and N * E == N,
            "EP=PE=P": E * P == P and P * E == P,
        }


@dataclass(frozen=True)
class PotentDecomposition:
    """``A = P + N`` with ``P**exponent == P``.

    ``ideal`` is None for the square-zero guarantee, otherwise the integer
    generating the ideal that contains every entry of ``N**2``.
    ``certificate`` maps identity names to the outcome of checking them.
    """

    A: Matrix
    P: Matrix
    N: Matrix
    exponent: int
    guarantee: Guarantee
    certificate: dict
    ideal: int = None
    details: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def passed(self):
        return all(self.certificate.values())

    def minimal_exponent(self):
        """Smallest s >= 2 with P^s = P, found by power iteration."""
        return is_potent(self.P)


def decompose_over_field(A):
    """Potent plus square-zero split of a matrix over a finite field."""
    F = A.ring
    if not F.is_field:
        raise UnsupportedRing(f"{F} is not a field")
    rcf = primary_rcf(A)
    P_blocks, N_blocks, orders = [], [], []
    for (p, e), C in zip(rcf.divisors, rcf.blocks):
        s = C.n
        cat = divisor_category(p**e)
        if cat == 0:
            P_blocks.append(C)
            N_blocks.append(Matrix.zeros(F, s))
            orders.append(order_of_invertible(C))
        elif cat == 1:
            Pi = C + Matrix.unit(F, s, 0, s - 1, 1)
            P_blocks.append(Pi)
            N_blocks.append(Matrix.unit(F, s, 0, s - 1, -1))
            orders.append(order_of_invertible(Pi))
        else:
            P_blocks.append(Matrix.zeros(F, 1))
            N_blocks.append(Matrix.zeros(F, 1))
    k = 1 + math.prod(orders)
    Pp = Matrix.block_diag(F, P_blocks)
    Np = Matrix.block_diag(F, N_blocks)
    Ep = Pp ** (k - 1)
    Q = rcf.Q
    if Q.is_identity():
        return FieldDecomposition(Pp, Np, k, Ep, rcf)
    Qi = mat_inverse(Q)
    return FieldDecomposition(Q * Pp * Qi, Q * Np * Qi, k, Q * Ep * Qi, rcf)


def _residue(ring):
    if not (ring.is_field or ring.is_local_sq_zero):
        raise UnsupportedRing(f"{ring} is not a field or a local ring with square-zero radical")
    return ring.residue_field


def _reduce(M):
    R = M.ring
    return M.map(R.reduce, _residue(R))


def _lift(M, ring):
    return M.map(ring.lift, ring)


def lift_idempotent(e0, reduce=None, max_steps=64):
    """Idempotent ``E`` with the same reduction as ``e0``.

    Iterates ``e <- 3e^2 - 2e^3``; each step squares the defect
    ``e^2 - e``, so over a ring whose radical squares to zero one step is
    enough.  ``reduce`` maps a matrix to its residue; by default the ring's
    own residue map is used.
    """
    reduce = reduce or _reduce
    r0 = reduce(e0)
    if r0 * r0 != r0:
        raise NotIdempotentModIdeal("input does not reduce to an idempotent")
    e = e0
    for _ in range(max_steps):
        e2 = e * e
        if e2 == e:
            return e
        e = 3 * e2 - 2 * (e2 * e)
    raise LiftIdentityFailed("idempotent refinement did not converge")


def lift_square_zero(n0, E, representative=None):
    """Square-zero lift of ``n0`` inside the corner ring ``E S E``.

    ``n0`` is a square-zero residue matrix with ``Ebar n0 Ebar = n0``.  A
    regular partner ``b`` (``n0 b n0 = n0``) gives the residue idempotent
    ``e = n0 b Ebar``, which is lifted into the corner of ``E``; then
    ``N = e a (E - e)`` for a representative ``a`` of ``n0``.  Any
    representative works; by default the canonical lift of ``n0`` is used.
    """
    R = E.ring
    k = _residue(R)
    if n0.ring != k:
        raise TypeError(f"residue matrix must be over {k}, got {n0.ring}")
    if not (n0 * n0).is_zero():
        raise NotSquareZero("residue matrix does not square to zero")
    Ebar = _reduce(E)
    if Ebar * n0 * Ebar != n0:
        raise CornerMismatch("residue matrix is not in the corner of E")
    if representative is None:
        representative = _lift(n0, R)
    elif _reduce(representative) != n0:
        raise CornerMismatch("representative does not reduce to the residue matrix")
    b = square_zero_partner(n0)
    ebar = n0 * b * Ebar
    e = lift_idempotent(E * _lift(ebar, R) * E)
    N = e * representative * (E - e)
    if not (N * N).is_zero() or _reduce(N) != n0:
        raise LiftIdentityFailed("square-zero lift failed")
    return N


def lift_potent_exponent(P, E, k):
    """Residue characteristic ``p`` with ``P^((k-1)p) == E``, checked directly."""
    R = P.ring
    p = _residue(R).characteristic
    if E * E != E or E * P * E != P:
        raise LiftIdentityFailed("need E idempotent and P = EPE")
    if _reduce(P) ** (k - 1) != _reduce(E):
        raise LiftIdentityFailed("P^(k-1) does not reduce to E")
    X = P ** ((k - 1) * p)
    if X != E or X * P != P:
        raise LiftIdentityFailed(f"P^((k-1)p) != E for p={p}")
    return p


def decompose_local(A):
    """Potent plus square-zero split over a field or a local ring with square-zero radical."""
    R = A.ring
    _residue(R)
    Abar = _reduce(A)
    fd = decompose_over_field(Abar)
    E = lift_idempotent(_lift(fd.E, R))
    P0 = E * _lift(fd.P, R) * E
    N0 = lift_square_zero(fd.N, E, representative=_lift(Abar, R) - P0)
    p = lift_potent_exponent(P0, E, fd.k)
    V = A - P0 - N0
    one_minus_E = Matrix.identity(R, A.n) - E
    P = P0 + E * V * E + one_minus_E * V * E + E * V * one_minus_E
    N = N0 + one_minus_E * V * one_minus_E
    exponent = (fd.k - 1) * p + 1
    certificate = {
        "A=P+N": A == P + N,
        "P^exponent=P": P**exponent == P,
        "N^2=0": (N * N).is_zero(),
        "field identities": all(fd.identities(Abar).values()),
        "E^2=E": E * E == E,
        "V in radical": _reduce(V).is_zero(),
    }
    details = {"E": E, "V": V, "P_lift": P0, "N_lift": N0, "k": fd.k, "p": p, "field": fd}
    return PotentDecomposition(A, P, N, exponent, Guarantee.SQUARE_ZERO, certificate, None, details)


@dataclass(frozen=True)
class PotentLift:
    B: object
    exponent: int
    E: object
    T: object


def _zero_like(a):
    if isinstance(a, Matrix):
        return Matrix.zeros(a.ring, a.n)
    return RingElement(a.ring, a.ring.zero)


def _entries(a):
    if isinstance(a, Matrix):
        return [x for row in a.rows for x in row]
    return [a.rep]


def _nil_index(d, m):
    j = 1
    while pow(d, j, m) != 0:
        j += 1
        if j > m:
            raise ValueError(f"{d} is not nilpotent modulo {m}")
    return j


def lift_potent(a, t, ideal, n=None):
    """Potent ``B`` congruent to ``a`` modulo ``ideal * R``, for ``R = Z/m``.

    ``a`` is a ring element or a matrix over Z/m whose reduction modulo the
    nilpotent ideal generated by ``ideal`` is ``t``-potent; ``n`` is the
    nilpotency index of that ideal (computed when omitted).  Builds
    ``T = sum_{k=1..n} (-1)^(2n-k+1) C(n,k) a^((k-1)(t-1))``, the idempotent
    ``E = a^(n(t-1)) T^n`` and returns ``B = E a`` together with the least
    ``s >= 2`` with ``B^s = B``.
    """
    R = a.ring
    if not R.integer_mod:
        raise UnsupportedRing("lift_potent works over Z/m")
    m = R.modulus
    if n is None:
        n = _nil_index(ideal, m)
    if any(x % ideal for x in _entries(a**t - a)):
        raise NotPotentModIdeal(f"input is not {t}-potent modulo {ideal}")
    T = _zero_like(a)
    for k in range(1, n + 1):
        sign = -1 if (2 * n - k + 1) % 2 else 1
        T = T + (sign * comb(n, k)) * a ** ((k - 1) * (t - 1))
    if a**n != a ** (n + t - 1) * T:
        raise LiftIdentityFailed("A^n != A^(n+t-1) T")
    E = a ** (n * (t - 1)) * T**n
    if E * E != E or E * a != a * E:
        raise LiftIdentityFailed("constructed E is not an idempotent commuting with A")
    B = E * a
    s = is_potent(B)
    if s is None:
        raise LiftIdentityFailed("E A is not potent")
    if any((x - y) % ideal for x, y in zip(_entries(B), _entries(a))):
        raise LiftIdentityFailed("lift changed the residue class")
    return PotentLift(B, s, E, T)


def _split_prime_power(R):
    if not R.integer_mod:
        raise UnsupportedRing(f"{R} is not Z/m")
    pp = prime_power(R.modulus)
    if pp is None:
        raise UnsupportedRing(f"{R} is not Z/p^r")
    return pp


def decompose_zpr(A):
    """Over Z/p^r: ``P`` potent and ``(A - P)^2`` in ``p^2 M_n(Z/p^r)``."""
    R = A.ring
    p, r = _split_prime_power(R)
    if r < 2:
        raise UnsupportedRing("decompose_zpr needs r >= 2")
    if r == 2:
        return decompose_local(A.map(lambda x: x, ZpSquared(p)))
    q = p * p
    R2 = ZpSquared(p)
    A2 = A.map(lambda x: x % q, R2)
    D2 = decompose_local(A2)
    lifted = lift_potent(D2.P.map(lambda x: x, R), D2.exponent, q, n=-(-r // 2))
    P = lifted.B
    N = A - P
    NN = N * N
    certificate = {
        "A=P+N": A == P + N,
        "P^exponent=P": P**lifted.exponent == P,
        "N^2 in (p^2)": all(x % q == 0 for row in NN.rows for x in row),
        "P = P2 mod p^2": P.map(lambda x: x % q, R2) == D2.P,
    }
    details = {"mod_p2": D2, "lift": lifted}
    return PotentDecomposition(A, P, N, lifted.exponent, Guarantee.SQUARE_IN_P2, certificate, q, details)


def _decompose_prime_power(A):
    R = A.ring
    p, r = _split_prime_power(R)
    if r == 1:
        return decompose_local(A)
    return decompose_zpr(A)


def decompose_crt(A):
    """Componentwise decomposition over Z/m via the Chinese remainder theorem."""
    R = A.ring
    if not R.integer_mod:
        raise UnsupportedRing(f"{R} is not Z/m")
    m = R.modulus
    split = crt_split(m)
    if len(split) == 1:
        return _decompose_prime_power(A)
    parts = []
    for q, Rq in zip(split.moduli, split.rings):
        parts.append(_decompose_prime_power(A.map(lambda x, q=q: x % q, Rq)))
    n = A.n
    P = Matrix(
        R,
        [[split.backward([D.P.rows[i][j] for D in parts]).rep for j in range(n)] for i in range(n)],
    )
    N = A - P
    exponent = 1 + math.lcm(*(D.exponent - 1 for D in parts))
    g = square_ideal_generator(m)
    NN = N * N
    certificate = {"A=P+N": A == P + N, "P^exponent=P": P**exponent == P}
    if g == 1:
        guarantee, ideal = Guarantee.SQUARE_ZERO, None
        certificate["N^2=0"] = NN.is_zero()
    else:
        guarantee, ideal = Guarantee.SQUARE_IN_P2, g
        certificate["N^2 in (p^2)"] = all(x % g == 0 for row in NN.rows for x in row)
    certificate["components"] = all(D.passed for D in parts)
    details = {"components": list(zip(split.factors, parts))}
    return PotentDecomposition(A, P, N, exponent, guarantee, certificate, ideal, details)


def decompose(A):
    """Dispatch on the coefficient ring."""
    R = A.ring
    if R.is_local_sq_zero or R.is_field:
        return decompose_local(A)
    if R.integer_mod:
        return decompose_crt(A)
    raise UnsupportedRing(f"no decomposition algorithm for {R}")

