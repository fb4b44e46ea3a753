"""Exact arithmetic in small finite fields GF(p^s).

Elements are plain Python ints in [0, p^s).  The int encodes the
coefficient vector of the residue polynomial in base p, least
significant digit first::

    value = c0 + c1*p + c2*p^2 + ...   for  c0 + c1*x + c2*x^2 + ...

GF(4) is built on x^2 + x + 1 and GF(9) on x^2 + 2x + 2.  Writing w for
the class of x in GF(9), the encoding gives

    w = 3,  w+1 = 4,  w+2 = 5,  2w = 6,  2w+1 = 7,  2w+2 = 8,

and the powers of w run 1, 3, 4, 7, 2, 6, 8, 5 (w is primitive).

Fields of square order q^2 carry the conjugation a -> a^q used by the
Hermitian inner product; `norm` maps onto the base subfield GF(q).
Multiplication and inversion go through log/antilog tables, so fields
are cheap to use but bounded to order <= 256.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .errors import InvalidFieldError

MAX_ORDER = 256

# Defining polynomials pinned per field (little-endian coefficients,
# monic).  GF(9) must stay on x^2 + 2x + 2: all worked matrices in the
# bundled data are written in that basis.
DEFAULT_POLYS = {
    (2, 2): (1, 1, 1),
    (3, 2): (2, 2, 1),
}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(num, den, p):
    """Remainder of num / den over GF(p), little-endian coefficient lists."""
    num = [x % p for x in num]
    den = _poly_trim([x % p for x in den])
    inv_lead = pow(den[-1], -1, p)
    num = _poly_trim(num)
    while len(num) >= len(den):
        factor = (num[-1] * inv_lead) % p
        shift = len(num) - len(den)
        for i, d in enumerate(den):
            num[shift + i] = (num[shift + i] - factor * d) % p
        num = _poly_trim(num)
    return num


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def _poly_is_irreducible(poly, p):
    """Trial check: no roots, and no monic factor of degree <= deg/2."""
    poly = _poly_trim(poly)
    deg = len(poly) - 1
    if deg < 1:
        return False
    for r in range(p):
        if sum(c * pow(r, i, p) for i, c in enumerate(poly)) % p == 0:
            return False
    if deg <= 3:
        return True
    for fdeg in range(2, deg // 2 + 1):
        for enc in range(p**fdeg):
            digits = _digits(enc, p, fdeg)
            factor = digits + [1]
            if not _poly_mod(poly, factor, p):
                return False
    return True


def _digits(value, p, width):
    out = []
    for _ in range(width):
        out.append(value % p)
        value //= p
    return out


def _encode(digits, p):
    value = 0
    for d in reversed(digits):
        value = value * p + d
    return value


class FieldSpec:
    """The finite field GF(p^s) with a fixed defining polynomial.

    Immutable after construction; all operations are pure functions of
    their int arguments, so instances can be shared freely.
    """

    def __init__(self, p: int, s: int = 1, poly=None):
        if not _is_prime(p):
            raise InvalidFieldError(f"characteristic {p} is not prime")
        if s < 1:
            raise InvalidFieldError(f"extension degree must be >= 1, got {s}")
        order = p**s
        if order > MAX_ORDER:
            raise InvalidFieldError(f"field order {order} exceeds supported maximum {MAX_ORDER}")
        self.p = p
        self.s = s
        self.order = order
        self.q = order  # alias
        if s == 1:
            self.defining_poly = (0, 1)  # the class of x is 0; arithmetic is mod p
        else:
            if poly is None:
                poly = DEFAULT_POLYS.get((p, s)) or self._search_poly(p, s)
            poly = tuple(int(c) % p for c in poly)
            if len(poly) != s + 1 or poly[-1] != 1:
                raise InvalidFieldError(f"defining polynomial must be monic of degree {s}")
            if not _poly_is_irreducible(poly, p):
                raise InvalidFieldError(f"defining polynomial {poly} is reducible over GF({p})")
            self.defining_poly = poly
        self._build_tables()
        self.generator = self._find_generator()
        # Freeze numpy tables against accidental mutation.
        for t in (self.ADD, self.MUL, self.NEG, self.INV, self.DIGITS):
            t.setflags(write=False)
        if self.CONJ is not None:
            self.CONJ.setflags(write=False)
            self.NORM.setflags(write=False)

    @staticmethod
    def _search_poly(p, s):
        for enc in range(p**s):
            cand = _digits(enc, p, s) + [1]
            if _poly_is_irreducible(cand, p):
                return tuple(cand)
        raise InvalidFieldError(f"no irreducible polynomial of degree {s} over GF({p})")

    def _mul_raw(self, a, b):
        if self.s == 1:
            return (a * b) % self.p
        prod = _poly_mul(_digits(a, self.p, self.s), _digits(b, self.p, self.s), self.p)
        return _encode(_poly_mod(prod, self.defining_poly, self.p), self.p)

    def _build_tables(self):
        p, s, q = self.p, self.s, self.order
        self.ADD = np.zeros((q, q), dtype=np.uint8)
        for a in range(q):
            da = _digits(a, p, s)
            for b in range(a, q):
                db = _digits(b, p, s)
                v = _encode([(x + y) % p for x, y in zip(da, db)], p)
                self.ADD[a, b] = v
                self.ADD[b, a] = v
        self.NEG = np.array(
            [_encode([(-d) % p for d in _digits(a, p, s)], p) for a in range(q)], dtype=np.uint8
        )
        self.MUL = np.zeros((q, q), dtype=np.uint8)
        for a in range(q):
            for b in range(a, q):
                v = self._mul_raw(a, b)
                self.MUL[a, b] = v
                self.MUL[b, a] = v
        self.INV = np.zeros(q, dtype=np.uint8)
        for a in range(1, q):
            row = self.MUL[a]
            self.INV[a] = int(np.nonzero(row == 1)[0][0])
        self.DIGITS = np.array([_digits(a, p, s) for a in range(q)], dtype=np.uint8)
        if s % 2 == 0:
            q0 = p ** (s // 2)
            self.CONJ = np.array([self.pow_(a, q0) for a in range(q)], dtype=np.uint8)
            self.NORM = np.array([self.pow_(a, q0 + 1) for a in range(q)], dtype=np.uint8)
        else:
            self.CONJ = None
            self.NORM = None

    def _find_generator(self):
        if self.order == 2:
            return 1
        for g in range(2, self.order):
            x, k = g, 1
            while x != 1:
                x = int(self.MUL[x, g])
                k += 1
            if k == self.order - 1:
                return g
        raise InvalidFieldError("no generator found")  # pragma: no cover

    # -- scalar operations -------------------------------------------------

    def add(self, a, b):
        return int(self.ADD[a, b])

    def sub(self, a, b):
        return int(self.ADD[a, self.NEG[b]])

    def neg(self, a):
        return int(self.NEG[a])

    def mul(self, a, b):
        return int(self.MUL[a, b])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self.INV[a])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow_(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        out, base = 1, a
        while e:
            if e & 1:
                out = int(self.MUL[out, base])
            base = int(self.MUL[base, base])
            e >>= 1
        return out

    def elements(self):
        return range(self.order)

    def nonzero_elements(self):
        return range(1, self.order)

    # -- Hermitian structure -----------------------------------------------

    @property
    def is_square_order(self) -> bool:
        return self.s % 2 == 0

    @property
    def subfield_order(self) -> int:
        self._require_square()
        return self.p ** (self.s // 2)

    def _require_square(self):
        if not self.is_square_order:
            raise InvalidFieldError(
                f"GF({self.order}) has no square-order structure (extension degree {self.s} is odd)"
            )

    def conj(self, a):
        """Frobenius a -> a^q relative to the base subfield GF(q)."""
        self._require_square()
        return int(self.CONJ[a])

    def norm(self, a):
        """a -> a^(q+1); lands in the base subfield GF(q)."""
        self._require_square()
        return int(self.NORM[a])

    def in_base_subfield(self, a) -> bool:
        self._require_square()
        return int(self.CONJ[a]) == a

    def base_subfield(self) -> "FieldSpec":
        """The subfield GF(q) inside GF(q^2).

        Only supported when the subfield is the prime field (s == 2):
        there the subfield elements are exactly the ints < p under this
        encoding, so values carry over unchanged.
        """
        self._require_square()
        if self.s != 2:
            raise InvalidFieldError("base subfield extraction implemented for s == 2 only")
        return GF(self.p)

    def solve_norm(self, target):
        """Smallest alpha with alpha^(q+1) == target (target in GF(q))."""
        self._require_square()
        if not self.in_base_subfield(target):
            raise InvalidFieldError(f"element {target} is not in the base subfield")
        for a in range(self.order):
            if int(self.NORM[a]) == target:
                return a
        raise InvalidFieldError("norm is onto GF(q); unreachable")  # pragma: no cover

    # -- presentation --------------------------------------------------------

    def element_poly_str(self, a) -> str:
        if self.s == 1:
            return str(a)
        terms = []
        for i, c in enumerate(_digits(a, self.p, self.s)):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                var = "w" if i == 1 else f"w^{i}"
                terms.append(var if c == 1 else f"{c}{var}")
        return "+".join(reversed(terms)) if terms else "0"

    def element_table(self):
        """(int value, polynomial string) for every element, for docs."""
        return [(a, self.element_poly_str(a)) for a in self.elements()]

    def __repr__(self):
        return f"GF({self.order})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.s, self.defining_poly) == (other.p, other.s, other.defining_poly)
        )

    def __hash__(self):
        return hash((self.p, self.s, self.defining_poly))


@functools.lru_cache(maxsize=None)
def _gf_cached(p, s, poly):
    return FieldSpec(p, s, poly)


def GF(order: int, poly=None) -> FieldSpec:
    """Field of the given order, cached.  GF(9) == GF(9) is one object."""
    p, s = _factor_prime_power(order)
    return _gf_cached(p, s, tuple(poly) if poly is not None else None)


def _factor_prime_power(order):
    if order < 2:
        raise InvalidFieldError(f"{order} is not a prime power")
    for p in range(2, order + 1):
        if not _is_prime(p):
            continue
        if order % p == 0:
            s = 0
            n = order
            while n % p == 0:
                n //= p
                s += 1
            if n != 1:
                raise InvalidFieldError(f"{order} is not a prime power")
            return p, s
    raise InvalidFieldError(f"{order} is not a prime power")  # pragma: no cover


@dataclass(frozen=True)
class FieldElement:
    """Convenience wrapper pairing a value with its field.

    The numeric kernels all work on raw ints; this class exists for
    interactive use and readable demos.
    """

    field: FieldSpec
    value: int

    def _check(self, other):
        if self.field != other.field:
            raise InvalidFieldError("elements live in different fields")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field.div(self.value, other.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e):
        return FieldElement(self.field, self.field.pow_(self.value, e))

    def conj(self):
        return FieldElement(self.field, self.field.conj(self.value))

    def norm(self):
        return FieldElement(self.field, self.field.norm(self.value))

    def __repr__(self):
        return self.field.element_poly_str(self.value)
