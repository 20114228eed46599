"""Dense square matrices over the finite rings of :mod:`potentsplit.rings`."""

from .errors import IterationLimit, NotInvertible, ShapeMismatch, UnsupportedRing
from .poly import Poly
from .rings import RingElement, crt_split, prime_power

__all__ = [
    "Matrix",
    "mat_inverse",
    "kernel_and_image_basis",
    "rank",
    "companion",
    "order_of_invertible",
    "charpoly",
    "poly_at_matrix",
    "poly_apply",
    "DEFAULT_ORDER_CAP",
]

DEFAULT_ORDER_CAP = 10**6


class Matrix:
    """Immutable n x n matrix holding canonical representatives of ``ring``.

    ``M * X`` is the matrix product when ``X`` is a Matrix and scalar
    multiplication when ``X`` is an int or a :class:`RingElement`; ``@`` is an
    alias for the product.  Entries read back through ``M[i, j]`` are
    :class:`RingElement` values; ``M.rows`` holds the raw representatives.
    """

    __slots__ = ("ring", "rows", "_hash")

    def __init__(self, ring, rows):
        rows = tuple(tuple(ring.coerce(x) for x in row) for row in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ShapeMismatch("only square matrices are supported")
        self.ring = ring
        self.rows = rows
        self._hash = None

    @classmethod
    def _raw(cls, ring, rows):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.rows = rows
        obj._hash = None
        return obj

    @classmethod
    def identity(cls, ring, n):
        z, o = ring.zero, ring.one
        return cls._raw(ring, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, ring, n):
        return cls._raw(ring, tuple((ring.zero,) * n for _ in range(n)))

    @classmethod
    def unit(cls, ring, n, i, j, value=1):
        """The matrix with ``value`` at (i, j) (0-based) and zeros elsewhere."""
        rows = [[ring.zero] * n for _ in range(n)]
        rows[i][j] = ring.coerce(value)
        return cls._raw(ring, tuple(map(tuple, rows)))

    @classmethod
    def from_columns(cls, ring, columns):
        return cls._raw(ring, tuple(zip(*columns)))

    @classmethod
    def block_diag(cls, ring, blocks):
        n = sum(b.n for b in blocks)
        rows = [[ring.zero] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for i, row in enumerate(b.rows):
                rows[off + i][off:off + b.n] = row
            off += b.n
        return cls._raw(ring, tuple(map(tuple, rows)))

    @property
    def n(self):
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return RingElement(self.ring, self.rows[i][j])

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [tuple(c) for c in zip(*self.rows)]

    def transpose(self):
        return Matrix._raw(self.ring, tuple(zip(*self.rows)))

    def tolist(self):
        to_json = self.ring.to_json
        return [[to_json(x) for x in row] for row in self.rows]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows and self.ring == other.ring

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.rows))
        return self._hash

    def __repr__(self):
        return f"Matrix({self.ring}, {self.tolist()})"

    def __str__(self):
        fmt = self.ring.format
        cells = [[fmt(x) for x in row] for row in self.rows]
        w = max((len(c) for row in cells for c in row), default=1)
        return "\n".join(" ".join(c.rjust(w) for c in row) for row in cells)

    def _check(self, other):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected a Matrix, got {type(other).__name__}")
        if other.ring != self.ring or other.n != self.n:
            raise ShapeMismatch(f"{self.n}x{self.n} over {self.ring} vs {other.n}x{other.n} over {other.ring}")

    def __add__(self, other):
        self._check(other)
        add = self.ring.add
        return Matrix._raw(
            self.ring,
            tuple(tuple(add(x, y) for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)),
        )

    def __sub__(self, other):
        self._check(other)
        sub = self.ring.sub
        return Matrix._raw(
            self.ring,
            tuple(tuple(sub(x, y) for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)),
        )

    def __neg__(self):
        neg = self.ring.neg
        return Matrix._raw(self.ring, tuple(tuple(neg(x) for x in r) for r in self.rows))

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self._matmul(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __matmul__(self, other):
        return self._matmul(other)

    def scale(self, c):
        R = self.ring
        c = c.rep if isinstance(c, RingElement) else R.coerce(c)
        mul = R.mul
        return Matrix._raw(R, tuple(tuple(mul(c, x) for x in r) for r in self.rows))

    def _matmul(self, other):
        self._check(other)
        R = self.ring
        cols = list(zip(*other.rows))
        if R.integer_mod:
            m = R.modulus
            rows = tuple(
                tuple(sum(x * y for x, y in zip(r, c)) % m for c in cols) for r in self.rows
            )
            return Matrix._raw(R, rows)
        add, mul, zero = R.add, R.mul, R.zero
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = zero
                for x, y in zip(r, c):
                    if x != zero and y != zero:
                        acc = add(acc, mul(x, y))
                row.append(acc)
            out.append(tuple(row))
        return Matrix._raw(R, tuple(out))

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative exponent")
        result = Matrix.identity(self.ring, self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def apply(self, v):
        """Matrix-vector product with a tuple of representatives."""
        R = self.ring
        add, mul, zero = R.add, R.mul, R.zero
        out = []
        for r in self.rows:
            acc = zero
            for x, y in zip(r, v):
                if x != zero and y != zero:
                    acc = add(acc, mul(x, y))
            out.append(acc)
        return tuple(out)

    def map(self, fn, ring):
        """Apply ``fn`` to every raw entry, producing a matrix over ``ring``."""
        return Matrix._raw(ring, tuple(tuple(ring.coerce(fn(x)) for x in r) for r in self.rows))

    def is_zero(self):
        z = self.ring.zero
        return all(x == z for r in self.rows for x in r)

    def is_identity(self):
        return self == Matrix.identity(self.ring, self.n)

    def power_sequence_bound(self):
        # |R|^(n^2) distinct matrices, capped
        size = self.ring.size
        n2 = self.n * self.n
        if n2 * size.bit_length() > 64:
            return DEFAULT_ORDER_CAP
        return min(size**n2, DEFAULT_ORDER_CAP)


def _rref(rows, F):
    """Reduced row echelon form over a field; returns (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    zero = F.zero
    for c in range(nc):
        piv = next((i for i in range(r, nr) if rows[i][c] != zero), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c] != zero:
                f = rows[i][c]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return rows, pivots


def _require_field(A):
    if not A.ring.is_field:
        raise UnsupportedRing(f"{A.ring} is not a field")


def kernel_and_image_basis(A):
    """Kernel basis and image basis of ``A`` over a field, as tuples.

    The image basis is the set of pivot columns of ``A`` itself, in index
    order; the kernel basis is the standard one read off the reduced echelon
    form (one vector per free column, in index order).
    """
    _require_field(A)
    F = A.ring
    n = A.n
    red, pivots = _rref(A.rows, F)
    image = [A.column(c) for c in pivots]
    kernel = []
    pivot_set = set(pivots)
    for f in range(n):
        if f in pivot_set:
            continue
        v = [F.zero] * n
        v[f] = F.one
        for row_idx, pc in enumerate(pivots):
            v[pc] = F.neg(red[row_idx][f])
        kernel.append(tuple(v))
    return kernel, image


def rank(A):
    _require_field(A)
    return len(_rref(A.rows, A.ring)[1])


def mat_inverse(A):
    """Inverse over a field, a local ring, or Z/m.

    Gauss-Jordan elimination choosing unit pivots: over a local ring a column
    with no unit entry at or below the diagonal means the matrix is singular
    modulo the maximal ideal.  Over Z/m with several prime factors the
    inverse is assembled from the local components.  Quotient rings that are
    not local are outside the supported range and may be reported as
    singular.
    """
    R = A.ring
    if R.integer_mod and not R.is_field and prime_power(R.modulus) is None:
        return _inverse_crt(A)
    n = A.n
    rows = [list(r) + [R.one if i == j else R.zero for j in range(n)] for i, r in enumerate(A.rows)]
    for c in range(n):
        piv = next((i for i in range(c, n) if R.is_unit(rows[i][c])), None)
        if piv is None:
            raise NotInvertible(f"matrix is not invertible over {R}")
        rows[c], rows[piv] = rows[piv], rows[c]
        inv = R.inv(rows[c][c])
        rows[c] = [R.mul(inv, x) for x in rows[c]]
        for i in range(n):
            if i != c and rows[i][c] != R.zero:
                f = rows[i][c]
                rows[i] = [R.sub(x, R.mul(f, y)) for x, y in zip(rows[i], rows[c])]
    return Matrix._raw(R, tuple(tuple(r[n:]) for r in rows))


def _inverse_crt(A):
    R = A.ring
    split = crt_split(R.modulus)
    parts = []
    for q, Rq in zip(split.moduli, split.rings):
        parts.append(mat_inverse(A.map(lambda x, q=q: x % q, Rq)))
    n = A.n
    rows = tuple(
        tuple(split.backward([P.rows[i][j] for P in parts]).rep for j in range(n)) for i in range(n)
    )
    return Matrix._raw(R, rows)


def companion(f):
    """Companion matrix with ones on the subdiagonal and ``-coeffs`` in the last column."""
    F = f.field
    if not f.is_monic() or f.degree < 1:
        raise ValueError("companion matrix needs a monic polynomial of degree >= 1")
    d = f.degree
    rows = [[F.zero] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = F.one
    for i in range(d):
        rows[i][d - 1] = F.neg(f.coeffs[i])
    return Matrix._raw(F, tuple(map(tuple, rows)))


def order_of_invertible(A, cap=DEFAULT_ORDER_CAP):
    """Least ``d >= 1`` with ``A**d == Id``."""
    mat_inverse(A)  # raises NotInvertible
    identity = Matrix.identity(A.ring, A.n)
    X = A
    d = 1
    while X != identity:
        if d >= cap:
            raise IterationLimit(f"order exceeds {cap}")
        X = X * A
        d += 1
    return d


def charpoly(A):
    """det(xI - A) over a field, by fraction-free elimination in F[x]."""
    _require_field(A)
    F = A.ring
    n = A.n
    if n == 0:
        return Poly.one(F)
    x = Poly.x(F)
    M = [
        [(x if i == j else Poly.zero(F)) - Poly.constant(F, A.rows[i][j]) for j in range(n)]
        for i in range(n)
    ]
    sign = 1
    prev = Poly.one(F)
    for k in range(n - 1):
        if M[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if swap is None:
                return Poly.zero(F)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return -det if sign < 0 else det


def poly_apply(f, A, v):
    """``f(A) v`` by Horner's rule on vectors."""
    F = A.ring
    acc = tuple(F.zero for _ in range(A.n))
    for c in reversed(f.coeffs):
        Av = A.apply(acc)
        acc = tuple(F.add(a, F.mul(c, b)) for a, b in zip(Av, v))
    return acc


def poly_at_matrix(f, A):
    F = A.ring
    acc = Matrix.zeros(F, A.n)
    I = Matrix.identity(F, A.n)
    for c in reversed(f.coeffs):
        acc = acc * A + I.scale(c)
    return acc
