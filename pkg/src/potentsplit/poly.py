"""Dense univariate polynomials over finite fields.

A :class:`Poly` stores its coefficients lowest degree first, with no trailing
zeros (the zero polynomial has an empty coefficient tuple).  Coefficients are
canonical representatives of the field they live in, so two polynomials are
equal exactly when their tuples are.

The field object only needs the small protocol implemented by the field
classes in :mod:`potentsplit.rings`: ``coerce``, ``add``, ``sub``, ``neg``,
``mul``, ``inv``, ``zero``, ``one``, ``size``, ``characteristic`` and
``elements()``.  This module never imports the rings module.

Factorization follows the classical three stages: squarefree decomposition,
distinct-degree splitting and Cantor-Zassenhaus equal-degree splitting.  The
random choices in the last stage come from a fixed seed and the output is
sorted, so results are fully deterministic.
"""

import itertools
import random
import re
from functools import lru_cache

from .errors import RingSpecError

__all__ = [
    "Poly",
    "Factorization",
    "poly_gcd",
    "pow_mod",
    "is_irreducible",
    "poly_factor",
    "squarefree_decomposition",
    "distinct_degree_factorization",
    "equal_degree_factorization",
    "monic_polys",
    "monic_irreducibles",
    "irreducible_by_trial_division",
    "parse_coefficients",
    "format_coefficients",
]


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=()):
        cs = [field.coerce(c) for c in coeffs]
        zero = field.zero
        while cs and cs[-1] == zero:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, field, coeffs):
        # coeffs must already be canonical; only trailing zeros are stripped
        zero = field.zero
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == zero:
            coeffs.pop()
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = tuple(coeffs)
        return obj

    @classmethod
    def x(cls, field):
        return cls._raw(field, (field.zero, field.one))

    @classmethod
    def constant(cls, field, c):
        return cls(field, (c,))

    @classmethod
    def one(cls, field):
        return cls._raw(field, (field.one,))

    @classmethod
    def zero(cls, field):
        return cls._raw(field, ())

    @property
    def degree(self):
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return self.coeffs == (self.field.one,)

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs and self.field == other.field

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def sort_key(self):
        return (self.degree, self.coeffs)

    def __repr__(self):
        return f"Poly({self.to_string()!r} over {self.field})"

    def to_string(self, var="x"):
        F = self.field
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == F.zero:
                continue
            cs = F.format(c)
            if not cs.isdigit():
                cs = f"({cs})"
            if i == 0:
                terms.append(cs)
                continue
            mono = var if i == 1 else f"{var}^{i}"
            terms.append(mono if c == F.one else f"{cs}{mono}")
        return "+".join(terms)

    __str__ = to_string

    def __add__(self, other):
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly._raw(F, out)

    def __neg__(self):
        F = self.field
        return Poly._raw(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        if not isinstance(other, Poly):
            c = F.coerce(other)
            return Poly._raw(F, [F.mul(c, a) for a in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw(F, ())
        out = [F.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == F.zero:
                continue
            for j, y in enumerate(b):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Poly._raw(F, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative exponent")
        result = Poly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        F = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        inv_lc = F.inv(other.lc)
        if len(r) - 1 < db:
            return Poly._raw(F, ()), self
        q = [F.zero] * (len(r) - db)
        bc = other.coeffs
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i]
            if c == F.zero:
                continue
            c = F.mul(c, inv_lc)
            q[i - db] = c
            for j in range(db + 1):
                r[i - db + j] = F.sub(r[i - db + j], F.mul(c, bc[j]))
        return Poly._raw(F, q), Poly._raw(F, r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if self.is_zero() or self.is_monic():
            return self
        return self * self.field.inv(self.lc)

    def derivative(self):
        F = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            out.append(F.mul(F.coerce(i), self.coeffs[i]))
        return Poly._raw(F, out)

    def __call__(self, x):
        """Evaluate at a field element (Horner)."""
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc


def poly_gcd(a, b):
    """Monic greatest common divisor (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def pow_mod(base, e, modulus):
    result = Poly.one(base.field) % modulus
    base = base % modulus
    while e:
        if e & 1:
            result = (result * base) % modulus
        e >>= 1
        if e:
            base = (base * base) % modulus
    return result


def _pth_root(f):
    F = f.field
    p = F.characteristic
    # inverse Frobenius on coefficients: c -> c^(q/p)
    e = F.size // p
    out = []
    for i in range(0, len(f.coeffs), p):
        out.append(_field_pow(F, f.coeffs[i], e))
    return Poly._raw(F, out)


def _field_pow(F, a, e):
    result = F.one
    while e:
        if e & 1:
            result = F.mul(result, a)
        e >>= 1
        if e:
            a = F.mul(a, a)
    return result


def squarefree_decomposition(f):
    """Split a monic polynomial into pairwise coprime squarefree parts.

    Returns a list of ``(g, m)`` with ``f == prod(g**m)``; a given
    multiplicity may occur more than once.
    """
    F = f.field
    p = F.characteristic
    f = f.monic()
    if f.degree < 1:
        return []
    out = []
    df = f.derivative()
    if df.is_zero():
        return [(g, m * p) for g, m in squarefree_decomposition(_pth_root(f))]
    c = poly_gcd(f, df)
    w = f // c
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z.monic(), i))
        i += 1
        w = y
        c = c // y
    if c.degree > 0:
        out.extend((g, m * p) for g, m in squarefree_decomposition(_pth_root(c.monic())))
    return out


def distinct_degree_factorization(f):
    """For squarefree monic ``f`` return ``(g, d)`` pairs, ``g`` the product
    of all irreducible factors of degree ``d``."""
    F = f.field
    q = F.size
    x = Poly.x(F)
    out = []
    h = x % f
    i = 1
    while f.degree >= 2 * i:
        h = pow_mod(h, q, f)
        g = poly_gcd(f, h - x)
        if g.degree > 0:
            out.append((g, i))
            f = f // g
            h = h % f
        i += 1
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def equal_degree_factorization(f, d, rng=None):
    """Split squarefree monic ``f`` whose irreducible factors all have degree ``d``."""
    if f.degree == d:
        return [f]
    F = f.field
    rng = rng or random.Random(0)
    elems = _elements(F)
    q = F.size
    n = f.degree
    while True:
        u = Poly._raw(F, [rng.choice(elems) for _ in range(n)])
        if u.degree < 1:
            continue
        g = poly_gcd(f, u)
        if 0 < g.degree < n:
            break
        if F.characteristic == 2:
            # absolute trace from GF(q^d) down to GF(2)
            k = (q.bit_length() - 1) * d
            w = u % f
            t = w
            for _ in range(k - 1):
                w = (w * w) % f
                t = t + w
        else:
            t = pow_mod(u, (q**d - 1) // 2, f) - Poly.one(F)
        g = poly_gcd(f, t)
        if 0 < g.degree < n:
            break
    return equal_degree_factorization(g, d, rng) + equal_degree_factorization(f // g, d, rng)


@lru_cache(maxsize=64)
def _elements_cached(field):
    return tuple(field.elements())


def _elements(F):
    return _elements_cached(F)


class Factorization:
    """Leading unit plus sorted ``(irreducible monic, multiplicity)`` pairs."""

    __slots__ = ("unit", "factors")

    def __init__(self, unit, factors):
        self.unit = unit
        self.factors = factors

    def expand(self, field):
        out = Poly.constant(field, self.unit)
        for g, m in self.factors:
            out = out * g**m
        return out

    def as_dict(self):
        return dict(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def __repr__(self):
        inner = ", ".join(f"({g})^{m}" for g, m in self.factors)
        return f"Factorization(unit={self.unit!r}, [{inner}])"


def poly_factor(f):
    """Complete factorization of ``f`` into monic irreducibles."""
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    unit = f.lc
    counts = {}
    rng = random.Random(0)
    for g, m in squarefree_decomposition(f.monic()):
        for h, d in distinct_degree_factorization(g):
            for irr in equal_degree_factorization(h, d, rng):
                irr = irr.monic()
                counts[irr] = counts.get(irr, 0) + m
    factors = sorted(counts.items(), key=lambda item: item[0].sort_key())
    return Factorization(unit, factors)


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f):
    """Rabin's irreducibility test."""
    n = f.degree
    if n < 1:
        raise ValueError("irreducibility is undefined for constant polynomials")
    if n == 1:
        return True
    f = f.monic()
    F = f.field
    q = F.size
    x = Poly.x(F)
    if pow_mod(x, q**n, f) != x % f:
        return False
    for r in _prime_divisors(n):
        h = pow_mod(x, q ** (n // r), f) - x
        if poly_gcd(f, h).degree > 0:
            return False
    return True


def monic_polys(field, d):
    """All monic polynomials of degree ``d``, smallest first.

    Order: read the coefficient vector from the top degree down, with field
    elements ordered as ``field.elements()`` yields them.
    """
    elems = _elements(field)
    for tail in itertools.product(elems, repeat=d):
        yield Poly._raw(field, tuple(reversed(tail)) + (field.one,))


def irreducible_by_trial_division(f):
    """Irreducibility by checking every monic divisor of degree <= deg/2."""
    n = f.degree
    if n < 1:
        raise ValueError("irreducibility is undefined for constant polynomials")
    for d in range(1, n // 2 + 1):
        for g in monic_polys(f.field, d):
            if (f % g).is_zero():
                return False
    return True


def monic_irreducibles(field, d):
    """Monic irreducibles of degree ``d`` in :func:`monic_polys` order."""
    for g in monic_polys(field, d):
        if irreducible_by_trial_division(g):
            yield g


_TERM = re.compile(
    r"\s*([+-])?\s*(?:(\d+)\s*(\*)?\s*)?(?:([a-z])\s*(?:\^\s*(\d+))?)?\s*"
)


def parse_coefficients(text, var=None):
    """Parse a dense polynomial string into integer coefficients, low degree first.

    ``var`` restricts the indeterminate's name; otherwise any single lowercase
    letter is accepted (but only one per string).  Coefficients may be
    negative in the returned list; callers reduce them.
    """
    pos = 0
    n = len(text)
    coeffs = {}
    seen_var = var
    first = True
    if not text.strip():
        raise RingSpecError("empty polynomial", text, 0)
    while pos < n:
        m = _TERM.match(text, pos)
        sign, digits, star, name, exp = m.groups()
        if m.end() == pos or (digits is None and name is None):
            # after a lone sign, point just past it
            raise RingSpecError("expected a polynomial term", text, m.end() if sign else pos)
        if sign is None and not first:
            raise RingSpecError("expected '+' or '-'", text, pos)
        if star and name is None:
            raise RingSpecError("dangling '*'", text, m.start(3))
        if name is not None:
            if seen_var is None:
                seen_var = name
            elif name != seen_var:
                raise RingSpecError(f"unexpected variable {name!r}", text, m.start(4))
        c = int(digits) if digits is not None else 1
        if sign == "-":
            c = -c
        deg = 0 if name is None else (int(exp) if exp is not None else 1)
        coeffs[deg] = coeffs.get(deg, 0) + c
        pos = m.end()
        first = False
    size = max(coeffs) + 1
    return [coeffs.get(i, 0) for i in range(size)]


def format_coefficients(coeffs, var="x"):
    """Inverse of :func:`parse_coefficients` for nonnegative coefficients."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = var if i == 1 else f"{var}^{i}"
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) if terms else "0"
