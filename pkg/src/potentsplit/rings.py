"""Finite commutative rings with canonical element representatives.

Supported families:

* ``IntegersMod(m)``: Z/m, elements are ints in ``range(m)``.
* ``PrimeField(p)``: GF(p), same representation, always a field.
* ``ZpSquared(p)``: Z/p^2 tagged as a local ring with square-zero maximal ideal.
* ``QuotientRing(m, modulus)``: Z/m[x]/(f) for monic f; elements are
  coefficient tuples of length deg(f), lowest degree first.
* ``GaloisField(p, k, modulus)``: GF(p^k) as F_p[x]/(f), f irreducible.
* ``DualNumbers(p)``: F_p[t]/(t^2), the characteristic-p local ring with
  square-zero maximal ideal.

Rings compare equal when their specification strings agree, so
``IntegersMod(4) == ZpSquared(2)``.  Raw representatives are what the ring
methods (``add``, ``mul``, ...) consume; :class:`RingElement` wraps a
representative with its ring for operator syntax.
"""

import itertools
import math
import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import IterationLimit, NotInvertible, RingSpecError, UnsupportedRing
from .poly import Poly, format_coefficients, is_irreducible, monic_irreducibles, parse_coefficients

__all__ = [
    "Ring",
    "IntegersMod",
    "PrimeField",
    "ZpSquared",
    "QuotientRing",
    "GaloisField",
    "DualNumbers",
    "RingElement",
    "integers_mod",
    "factor_integer",
    "is_prime",
    "prime_power",
    "crt_split",
    "CRTSplit",
    "residue_and_lift",
    "square_ideal_generator",
    "elem_pow",
    "is_potent",
    "parse_ring",
]


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factor_integer(m):
    """Prime factorization as a sorted list of ``(p, r)``."""
    if m < 1:
        raise ValueError("factor_integer needs a positive integer")
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            r = 0
            while m % d == 0:
                m //= d
                r += 1
            out.append((d, r))
        d += 1 if d == 2 else 2
    if m > 1:
        out.append((m, 1))
    return out


def prime_power(m):
    """Return ``(p, r)`` if ``m == p**r`` for a prime p, else None."""
    f = factor_integer(m)
    return f[0] if len(f) == 1 else None


class Ring:
    """Common interface; subclasses fill in arithmetic on raw representatives."""

    is_field = False
    is_local_sq_zero = False
    integer_mod = False  # True when reps are plain ints mod self.modulus

    def __eq__(self, other):
        return isinstance(other, Ring) and str(self) == str(other)

    def __hash__(self):
        return hash(str(self))

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"

    def __call__(self, x):
        if isinstance(x, str):
            return RingElement(self, self.parse_element(x))
        return RingElement(self, self.coerce(x))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def pow(self, a, e):
        if e < 0:
            raise ValueError("negative exponent")
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def is_unit(self, a):
        try:
            self.inv(a)
        except NotInvertible:
            return False
        return True

    def element_list(self):
        return _element_list(self)

    @property
    def residue_field(self):
        if self.is_field:
            return self
        raise UnsupportedRing(f"{self} is not a field or a local ring with square-zero radical")

    def reduce(self, a):
        if self.is_field:
            return a
        raise UnsupportedRing(f"{self} has no residue map")

    def lift(self, a):
        if self.is_field:
            return a
        raise UnsupportedRing(f"{self} has no residue map")


@lru_cache(maxsize=32)
def _element_list(ring):
    return tuple(ring.elements())


class IntegersMod(Ring):
    integer_mod = True

    def __init__(self, m):
        m = int(m)
        if m < 2:
            raise ValueError("modulus must be at least 2")
        self.modulus = m
        self.size = m
        self.characteristic = m
        self.zero = 0
        self.one = 1
        self.is_field = is_prime(m)

    def __str__(self):
        return f"Z/{self.modulus}"

    def coerce(self, x):
        if isinstance(x, RingElement):
            if x.ring != self:
                raise TypeError(f"element of {x.ring} is not in {self}")
            return x.rep
        if isinstance(x, str):
            return self.parse_element(x)
        if isinstance(x, bool) or not isinstance(x, int):
            x = int(x)
        return x % self.modulus

    def parse_element(self, s):
        try:
            return int(s.strip()) % self.modulus
        except ValueError:
            raise RingSpecError("expected an integer", s, 0) from None

    def format(self, a):
        return str(a)

    def to_json(self, a):
        return a

    def add(self, a, b):
        return (a + b) % self.modulus

    def sub(self, a, b):
        return (a - b) % self.modulus

    def neg(self, a):
        return -a % self.modulus

    def mul(self, a, b):
        return a * b % self.modulus

    def pow(self, a, e):
        if e < 0:
            raise ValueError("negative exponent")
        return pow(a, e, self.modulus)

    def is_unit(self, a):
        return math.gcd(a, self.modulus) == 1

    def inv(self, a):
        try:
            return pow(a, -1, self.modulus)
        except ValueError:
            raise NotInvertible(f"{a} is not a unit in {self}") from None

    def elements(self):
        return iter(range(self.modulus))


class PrimeField(IntegersMod):
    def __init__(self, p):
        super().__init__(p)
        if not self.is_field:
            raise ValueError(f"{p} is not prime")

    def __str__(self):
        return f"GF({self.modulus})"


class ZpSquared(IntegersMod):
    """Z/p^2: local, maximal ideal (p) with (p)^2 = 0, residue field GF(p)."""

    is_local_sq_zero = True

    def __init__(self, p):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        super().__init__(p * p)
        self.p = p
        self.uniformizer = p

    @property
    def residue_field(self):
        return PrimeField(self.p)

    def reduce(self, a):
        return a % self.p

    def lift(self, a):
        return a


def integers_mod(m):
    """Z/m, tagged as :class:`ZpSquared` when m is the square of a prime."""
    pp = prime_power(m)
    if pp is not None and pp[1] == 2:
        return ZpSquared(pp[0])
    return IntegersMod(m)


class QuotientRing(Ring):
    """Z/m[x]/(f) with f monic of degree >= 1."""

    var = "x"

    def __init__(self, m, modulus):
        m = int(m)
        if m < 2:
            raise ValueError("modulus must be at least 2")
        mod = [c % m for c in modulus]
        while mod and mod[-1] == 0:
            mod.pop()
        if len(mod) < 2 or mod[-1] != 1:
            raise ValueError("the polynomial modulus must be monic of degree >= 1")
        self.base_modulus = m
        self.poly_modulus = tuple(mod)
        self.degree = len(mod) - 1
        self.size = m**self.degree
        self.characteristic = m
        self.zero = (0,) * self.degree
        self.one = (1,) + (0,) * (self.degree - 1)
        self._inverse_cache = {}

    def __str__(self):
        return f"Z/{self.base_modulus}[x]/({format_coefficients(self.poly_modulus)})"

    def _reduce_list(self, cs):
        m = self.base_modulus
        f = self.poly_modulus
        d = self.degree
        cs = [c % m for c in cs]
        for i in range(len(cs) - 1, d - 1, -1):
            c = cs[i]
            if c:
                for j in range(d):
                    cs[i - d + j] = (cs[i - d + j] - c * f[j]) % m
                cs[i] = 0
        cs = cs[:d]
        return tuple(cs) + (0,) * (d - len(cs))

    def coerce(self, x):
        if isinstance(x, RingElement):
            if x.ring != self:
                raise TypeError(f"element of {x.ring} is not in {self}")
            return x.rep
        if isinstance(x, str):
            return self.parse_element(x)
        if isinstance(x, (tuple, list)):
            if len(x) == self.degree and all(type(c) is int and 0 <= c < self.base_modulus for c in x):
                return tuple(x)
            return self._reduce_list(list(x))
        return self._reduce_list([int(x)])

    def parse_element(self, s):
        return self._reduce_list(parse_coefficients(s, self.var))

    def format(self, a):
        return format_coefficients(a, self.var)

    def to_json(self, a):
        return self.format(a)

    def add(self, a, b):
        m = self.base_modulus
        return tuple((x + y) % m for x, y in zip(a, b))

    def sub(self, a, b):
        m = self.base_modulus
        return tuple((x - y) % m for x, y in zip(a, b))

    def neg(self, a):
        m = self.base_modulus
        return tuple(-x % m for x in a)

    def mul(self, a, b):
        d = self.degree
        out = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return self._reduce_list(out)

    def inv(self, a):
        # a is a unit iff its power sequence returns to 1
        cached = self._inverse_cache.get(a)
        if cached is not None:
            return cached
        seen = set()
        prev, cur = self.one, a
        while cur != self.one:
            if cur in seen:
                raise NotInvertible(f"{self.format(a)} is not a unit in {self}")
            seen.add(cur)
            prev, cur = cur, self.mul(cur, a)
        self._inverse_cache[a] = prev
        return prev

    def elements(self):
        for t in itertools.product(range(self.base_modulus), repeat=self.degree):
            yield t


class GaloisField(QuotientRing):
    """GF(p^k) = F_p[x]/(f) with f monic irreducible of degree k."""

    is_field = True

    def __init__(self, p, k, modulus=None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be at least 1")
        base = PrimeField(p)
        default = next(iter(monic_irreducibles(base, k))).coeffs
        if modulus is None:
            modulus = default
        f = Poly(base, modulus)
        if f.degree != k or not f.is_monic():
            raise ValueError(f"modulus must be monic of degree {k}")
        if not is_irreducible(f):
            raise ValueError(f"{format_coefficients(f.coeffs)} is not irreducible over GF({p})")
        super().__init__(p, f.coeffs)
        self.p = p
        self.k = k
        self._default_modulus = self.poly_modulus == tuple(default)
        self._mul_table = None
        if self.size <= 256:
            self._build_tables()

    def __str__(self):
        if self._default_modulus:
            return f"GF({self.p}^{self.k})"
        return f"GF({self.p}^{self.k};{format_coefficients(self.poly_modulus)})"

    def _build_tables(self):
        elems = list(self.elements())
        self._mul_table = {(a, b): QuotientRing.mul(self, a, b) for a in elems for b in elems}
        self._inv_table = {}
        for a in elems:
            for b in elems:
                if self._mul_table[(a, b)] == self.one:
                    self._inv_table[a] = b

    def mul(self, a, b):
        if self._mul_table is not None:
            return self._mul_table[(a, b)]
        return QuotientRing.mul(self, a, b)

    def inv(self, a):
        if a == self.zero:
            raise NotInvertible("zero is not invertible")
        if self._mul_table is not None:
            return self._inv_table[a]
        return self.pow(a, self.size - 2)

    def is_unit(self, a):
        return a != self.zero


class DualNumbers(QuotientRing):
    """F_p[t]/(t^2): local, maximal ideal (t) with t^2 = 0, residue field GF(p)."""

    var = "t"
    is_local_sq_zero = True

    def __init__(self, p):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        super().__init__(p, (0, 0, 1))
        self.p = p
        self.uniformizer = (0, 1)

    def __str__(self):
        return f"F{self.p}[t]/(t^2)"

    def mul(self, a, b):
        p = self.p
        return (a[0] * b[0] % p, (a[0] * b[1] + a[1] * b[0]) % p)

    def inv(self, a):
        p = self.p
        if a[0] == 0:
            raise NotInvertible(f"{self.format(a)} is not a unit in {self}")
        u = pow(a[0], -1, p)
        return (u, -a[1] * u * u % p)

    def is_unit(self, a):
        return a[0] != 0

    @property
    def residue_field(self):
        return PrimeField(self.p)

    def reduce(self, a):
        return a[0]

    def lift(self, a):
        return (a, 0)


@dataclass(frozen=True)
class RingElement:
    """A canonical representative together with its ring."""

    ring: Ring
    rep: object

    def _other(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise TypeError(f"cannot combine elements of {self.ring} and {other.ring}")
            return other.rep
        return self.ring.coerce(other)

    def __add__(self, other):
        return RingElement(self.ring, self.ring.add(self.rep, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return RingElement(self.ring, self.ring.sub(self.rep, self._other(other)))

    def __rsub__(self, other):
        return RingElement(self.ring, self.ring.sub(self._other(other), self.rep))

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.rep))

    def __mul__(self, other):
        return RingElement(self.ring, self.ring.mul(self.rep, self._other(other)))

    __rmul__ = __mul__

    def __pow__(self, e):
        return elem_pow(self, e)

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ring == other.ring and self.rep == other.rep
        if isinstance(other, int):
            return self.rep == self.ring.coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.rep))

    def __str__(self):
        return self.ring.format(self.rep)

    def __repr__(self):
        return f"{self.ring}({self.ring.format(self.rep)})"

    def is_zero(self):
        return self.rep == self.ring.zero

    def is_unit(self):
        return self.ring.is_unit(self.rep)

    def inverse(self):
        return RingElement(self.ring, self.ring.inv(self.rep))

    def identity(self):
        return RingElement(self.ring, self.ring.one)


def elem_pow(a, e):
    """``a**e`` by square-and-multiply; ``e`` may be arbitrarily large."""
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    return RingElement(a.ring, a.ring.pow(a.rep, e))


def is_potent(a, limit=None):
    """Smallest ``k >= 2`` with ``a**k == a``, or None if ``a`` is not potent.

    Works for anything with ``*``, ``==`` and hashing (ring elements and
    matrices).  The power sequence of an element of a finite ring is
    eventually periodic; ``a`` is potent exactly when it lies on its own
    cycle.  ``limit`` caps the number of multiplications.
    """
    if limit is None:
        limit = _default_limit(a)
    seen = {a}
    y = a
    for k in range(2, limit + 2):
        y = y * a
        if y == a:
            return k
        if y in seen:
            return None
        seen.add(y)
    raise IterationLimit(f"no repeat in the power sequence within {limit} steps")


def _default_limit(a):
    if isinstance(a, RingElement):
        return a.ring.size
    bound = getattr(a, "power_sequence_bound", None)
    return bound() if bound is not None else 10**6


class CRTSplit:
    """Z/m = prod Z/p_i^r_i with explicit forward and backward maps."""

    def __init__(self, m):
        self.modulus = m
        self.factors = factor_integer(m)
        self.moduli = [p**r for p, r in self.factors]
        self.rings = [integers_mod(q) for q in self.moduli]
        self._coeffs = []
        for q in self.moduli:
            rest = m // q
            self._coeffs.append(rest * pow(rest, -1, q) % m if q != m else 1)

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def forward(self, a):
        """Element of Z/m (int or RingElement) to its tuple of components."""
        if isinstance(a, RingElement):
            a = a.rep
        return tuple(RingElement(R, a % q) for R, q in zip(self.rings, self.moduli))

    def backward(self, parts):
        total = 0
        for x, c in zip(parts, self._coeffs):
            if isinstance(x, RingElement):
                x = x.rep
            total += x * c
        return RingElement(integers_mod(self.modulus), total % self.modulus)


def crt_split(m):
    if m < 2:
        raise ValueError("modulus must be at least 2")
    return CRTSplit(m)


def residue_and_lift(ring):
    """``(reduce, lift)`` between a local square-zero ring (or a field) and its residue field."""
    if not (ring.is_local_sq_zero or ring.is_field):
        raise UnsupportedRing(f"{ring} is not a local ring with square-zero radical")
    k = ring.residue_field

    def reduce(a):
        return RingElement(k, ring.reduce(ring.coerce(a)))

    def lift(x):
        return RingElement(ring, ring.lift(k.coerce(x)))

    return reduce, lift


def square_ideal_generator(m):
    """Generator of the ideal that contains N^2 for decompositions over Z/m.

    The product of p^2 over prime powers p^r || m with r > 2; 1 means the
    square-zero guarantee (the ideal is then all of Z/m only nominally, and
    callers treat it as N^2 == 0).
    """
    g = 1
    for p, r in factor_integer(m):
        if r > 2:
            g *= p * p
    return g


_RING_PATTERNS = [
    (re.compile(r"Z/(\d+)\[x\]/\((.*)\)$"), "quotient"),
    (re.compile(r"Z/(\d+)$"), "zmod"),
    (re.compile(r"GF\((\d+)\^(\d+);(.*)\)$"), "gf_mod"),
    (re.compile(r"GF\((\d+)\^(\d+)\)$"), "gf"),
    (re.compile(r"GF\((\d+)\)$"), "prime"),
    (re.compile(r"F(\d+)\[t\]/\(\s*t\s*\^\s*2\s*\)$"), "dual"),
]


def parse_ring(text):
    """Parse a ring specification string.

    Grammar::

        Z/<m> | GF(<p>) | GF(<p>^<k>) | GF(<p>^<k>;<modulus>)
              | Z/<m>[x]/(<poly>) | F<p>[t]/(t^2)
    """
    s = text.strip()
    offset = len(text) - len(text.lstrip())
    for pattern, kind in _RING_PATTERNS:
        m = pattern.match(s)
        if not m:
            continue
        try:
            if kind == "zmod":
                return integers_mod(int(m.group(1)))
            if kind == "prime":
                return PrimeField(int(m.group(1)))
            if kind == "gf":
                return GaloisField(int(m.group(1)), int(m.group(2)))
            if kind == "gf_mod":
                p = int(m.group(1))
                cs = parse_coefficients(m.group(3), "x")
                return GaloisField(p, int(m.group(2)), [c % p for c in cs])
            if kind == "quotient":
                return QuotientRing(int(m.group(1)), parse_coefficients(m.group(2), "x"))
            if kind == "dual":
                return DualNumbers(int(m.group(1)))
        except RingSpecError as exc:
            # re-anchor positions from the polynomial substring to the full text
            start = offset + m.start(m.lastindex)
            raise RingSpecError(str(exc).split(" at position")[0], text, start + exc.position) from None
        except ValueError as exc:
            # a bad modulus is blamed on the polynomial, anything else on the first number
            group = m.lastindex if kind in ("gf_mod", "quotient") else 1
            raise RingSpecError(str(exc), text, offset + m.start(group)) from None
    raise RingSpecError("unrecognized ring specification", text, offset + _first_mismatch(s))


def _first_mismatch(s):
    # longest prefix that still matches the start of some known form
    prefixes = ["Z/", "GF(", "F"]
    best = 0
    for pre in prefixes:
        k = 0
        while k < len(pre) and k < len(s) and s[k] == pre[k]:
            k += 1
        if k == len(pre):
            j = k
            while j < len(s) and s[j].isdigit():
                j += 1
            k = j
        best = max(best, k)
    return best
