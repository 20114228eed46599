"""Primary rational canonical form with an explicit similarity transform.

The route is the textbook one.  The Smith form of ``xI - A`` over F[x] is
computed while accumulating the *inverse* of the row transform ``U``; if
``U (xI - A) V = diag(d_1, ..., d_n)`` then column ``i`` of ``U^-1``, read as
a vector of polynomials ``g`` and sent to ``sum_j g_j(A) e_j``, generates a
cyclic subspace with annihilator ``d_i`` and these subspaces split F^n.  Each
cyclic generator is then broken into prime-power pieces: for ``d = q * h``
with ``gcd(q, h) = 1``, the vector ``h(A) v`` has annihilator ``q``.  A Krylov
basis ``w, Aw, ..., A^(deg q - 1) w`` puts ``A`` in companion form with the
subdiagonal convention of :func:`potentsplit.matrices.companion`.
"""

from dataclasses import dataclass, field

from .errors import NotSquareZero, UnsupportedRing
from .matrices import Matrix, _rref, companion, kernel_and_image_basis, mat_inverse, poly_apply
from .poly import Poly, poly_factor

__all__ = [
    "PrimaryRCF",
    "smith_form_xI_minus_A",
    "invariant_factors",
    "elementary_divisors",
    "primary_rcf",
    "square_zero_frame",
    "square_zero_partner",
    "divisor_category",
]


@dataclass(frozen=True)
class PrimaryRCF:
    """``Q^-1 A Q == Matrix.block_diag(blocks)``; ``blocks[i] == companion(p_i**e_i)``."""

    Q: Matrix
    blocks: tuple
    divisors: tuple  # ((irreducible monic Poly, exponent), ...)
    invariant_factors: tuple = field(default=())

    def divisor_polys(self):
        return [p**e for p, e in self.divisors]

    def assembled(self):
        return Matrix.block_diag(self.Q.ring, list(self.blocks))


def _require_field(A):
    if not A.ring.is_field:
        raise UnsupportedRing(f"{A.ring} is not a field")


def smith_form_xI_minus_A(A):
    """Diagonal of the Smith form of ``xI - A`` and the inverse row transform.

    Returns ``(diag, Uinv)`` where ``diag`` is a list of monic polynomials
    ``d_1 | d_2 | ... | d_n`` and ``Uinv`` is an n x n list of polynomials.
    """
    _require_field(A)
    F = A.ring
    n = A.n
    x = Poly.x(F)
    zero = Poly.zero(F)
    one = Poly.one(F)
    M = [
        [(x if i == j else zero) - Poly.constant(F, A.rows[i][j]) for j in range(n)]
        for i in range(n)
    ]
    Uinv = [[one if i == j else zero for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        for row in Uinv:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, c):
        # row_i += c * row_j
        M[i] = [a + c * b for a, b in zip(M[i], M[j])]
        for row in Uinv:
            row[j] = row[j] - c * row[i]

    def scale_row(i, u):
        M[i] = [a * u for a in M[i]]
        u_inv = F.inv(u)
        for row in Uinv:
            row[i] = row[i] * u_inv

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]

    def add_col(i, j, c):
        # col_i += c * col_j
        for row in M:
            row[i] = row[i] + c * row[j]

    for t in range(n):
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    e = M[i][j]
                    if not e.is_zero() and (best is None or e.degree < best[0]):
                        best = (e.degree, i, j)
            if best is None:
                break
            _, bi, bj = best
            if bi != t:
                swap_rows(t, bi)
            if bj != t:
                swap_cols(t, bj)
            piv = M[t][t]
            clean = True
            for i in range(t + 1, n):
                if not M[i][t].is_zero():
                    q, r = divmod(M[i][t], piv)
                    add_row(i, t, -q)
                    clean = clean and r.is_zero()
            for j in range(t + 1, n):
                if not M[t][j].is_zero():
                    q, r = divmod(M[t][j], piv)
                    add_col(j, t, -q)
                    clean = clean and r.is_zero()
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, n) if not (M[i][j] % piv).is_zero()),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, one)
        if not M[t][t].is_zero() and not M[t][t].is_monic():
            scale_row(t, F.inv(M[t][t].lc))
    return [M[i][i] for i in range(n)], Uinv


def invariant_factors(A):
    """Nonconstant invariant factors of ``A``, each dividing the next."""
    diag, _ = smith_form_xI_minus_A(A)
    return [d for d in diag if d.degree >= 1]


def divisor_category(q):
    """0 for q(0) != 0, 1 for x^s with s >= 2, 2 for x."""
    if q.coeff(0) != q.field.zero:
        return 0
    return 1 if q.degree >= 2 else 2


def _order_key(item):
    q = item[0]
    return (divisor_category(q), q.sort_key())


def _pieces(A):
    F = A.ring
    n = A.n
    diag, Uinv = smith_form_xI_minus_A(A)
    minpoly = diag[-1] if diag else Poly.one(F)
    pieces = []
    for t, d in enumerate(diag):
        if d.degree < 1:
            continue
        v = [F.zero] * n
        for j in range(n):
            e_j = tuple(F.one if k == j else F.zero for k in range(n))
            g = Uinv[j][t] % minpoly
            w = poly_apply(g, A, e_j)
            v = [F.add(a, b) for a, b in zip(v, w)]
        v = tuple(v)
        for p, e in poly_factor(d):
            q = p**e
            w = poly_apply(d // q, A, v)
            basis = [w]
            for _ in range(q.degree - 1):
                basis.append(A.apply(basis[-1]))
            pieces.append((q, p, e, basis))
    pieces.sort(key=_order_key)
    return [d for d in diag if d.degree >= 1], pieces


def elementary_divisors(A):
    """Elementary divisors as ``(p, e)`` pairs in block order."""
    _, pieces = _pieces(A)
    return [(p, e) for _, p, e, _ in pieces]


def primary_rcf(A):
    """Primary rational canonical form of ``A`` over a field.

    Blocks with q(0) != 0 come first, then nilpotent blocks x^s (s >= 2),
    then the 1 x 1 zero blocks.  When ``A`` already equals the assembled
    form the transform is the identity.
    """
    _require_field(A)
    F = A.ring
    inv_factors, pieces = _pieces(A)
    blocks = tuple(companion(q) for q, _, _, _ in pieces)
    divisors = tuple((p, e) for _, p, e, _ in pieces)
    D = Matrix.block_diag(F, list(blocks))
    if D == A:
        Q = Matrix.identity(F, A.n)
    else:
        Q = Matrix.from_columns(F, [v for _, _, _, basis in pieces for v in basis])
        if mat_inverse(Q) * A * Q != D:
            raise ArithmeticError("similarity transform check failed")
    return PrimaryRCF(Q, blocks, divisors, tuple(inv_factors))


def square_zero_frame(A):
    """Basis change putting a square-zero ``A`` in the form [[0, I_r, 0], [0, 0, 0], [0, 0, 0]].

    The basis is: the pivot columns of ``A`` (the image), then the standard
    vectors mapped onto them, then kernel vectors completing the image to a
    kernel basis.  Returns ``(S, r)``.
    """
    _require_field(A)
    if not (A * A).is_zero():
        raise NotSquareZero("matrix does not square to zero")
    F = A.ring
    n = A.n
    kernel, _ = kernel_and_image_basis(A)
    _, pivots = _pivot_columns(A)
    images = [A.column(c) for c in pivots]
    preimages = [tuple(F.one if k == c else F.zero for k in range(n)) for c in pivots]
    r = len(pivots)
    extra = []
    current = list(images)
    for v in kernel:
        trial = current + [v]
        if _independent(F, trial):
            current = trial
            extra.append(v)
    S = Matrix.from_columns(F, images + preimages + extra) if n else Matrix.identity(F, 0)
    return S, r


def _pivot_columns(A):
    return _rref(A.rows, A.ring)


def _independent(F, vectors):
    return len(_rref(vectors, F)[1]) == len(vectors)


def square_zero_partner(A):
    """``B`` with ``ABA = A``, ``BAB = B`` and ``B^2 = 0`` for square-zero ``A``."""
    S, r = square_zero_frame(A)
    F = A.ring
    n = A.n
    rows = [[F.zero] * n for _ in range(n)]
    for i in range(r):
        rows[r + i][i] = F.one
    M = Matrix(F, rows)
    return S * M * mat_inverse(S)

