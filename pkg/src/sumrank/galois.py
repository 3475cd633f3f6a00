"""Finite fields GF(p^e) with integer-coded elements.

An element is the integer whose base-p digits, little-endian, are the
coefficients of its polynomial representative: digit i is the coefficient
of x^i.  Code 0 is the additive identity and code 1 the multiplicative one.

Arithmetic goes through precomputed exp/log tables, so fields are limited
to q <= 2^16.  When no modulus is supplied the lexicographically smallest
monic irreducible polynomial is used, scanning polynomials by ascending
integer code (sum of c_i p^i with the leading coefficient fixed to 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

MAX_ORDER = 1 << 16
_ADD_TABLE_LIMIT = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p^e, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    factors = prime_factors(q)
    if len(factors) != 1:
        raise ValueError(f"{q} is not a prime power")
    p = factors[0]
    e = 0
    while q > 1:
        q //= p
        e += 1
    return p, e


# -- polynomials over F_p as little-endian coefficient lists -------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    coeffs = list(coeffs)
    deg = len(coeffs) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _poly_rem(coeffs, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    if e == 1:
        return (0, 1)
    for code in range(p**e, 2 * p**e):
        coeffs = [(code // p**i) % p for i in range(e + 1)]
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FieldSpec:
    """The field GF(p^e) acting on integer element codes.

    Instances are immutable and compare equal when (p, e, modulus) agree.
    Use :func:`fq_make` rather than calling the constructor directly so
    that the lookup tables are shared.
    """

    def __init__(self, p: int, e: int, modulus: Sequence[int]):
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if e < 1:
            raise ValueError(f"extension degree must be positive, got {e}")
        if p**e > MAX_ORDER:
            raise ValueError(f"q={p}^{e} exceeds the supported order {MAX_ORDER}")
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus {list(modulus)} is not monic of degree {e}")
        if any(not 0 <= c < p for c in modulus):
            raise ValueError(f"modulus coefficients must lie in [0, {p})")
        if e > 1 and not is_irreducible(modulus, p):
            raise ValueError(f"modulus {list(modulus)} is reducible over F_{p}")
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = modulus
        self._build_tables()

    # -- construction ---------------------------------------------------------

    def _raw_mul(self, a: int, b: int) -> int:
        p, e = self.p, self.e
        if e == 1:
            return a * b % p
        if p == 2:
            mod = sum(1 << i for i, c in enumerate(self.modulus) if c)
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a >> e:
                    a ^= mod
            return r
        prod = _poly_mul(self.digits(a), self.digits(b), p)
        return self.from_digits(_poly_rem(prod, self.modulus, p))

    def _raw_pow(self, a: int, n: int) -> int:
        r = 1
        while n:
            if n & 1:
                r = self._raw_mul(r, a)
            a = self._raw_mul(a, a)
            n >>= 1
        return r

    def _build_tables(self) -> None:
        q = self.q
        order = q - 1
        ells = prime_factors(order) if order > 1 else []
        gen = next(
            g for g in range(1, q)
            if all(self._raw_pow(g, order // ell) != 1 for ell in ells)
        )
        self.primitive = gen
        exp = [0] * (2 * order)
        log = [0] * q
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self._raw_mul(x, gen)
        exp[order:] = exp[:order]
        self._exp = exp
        self._log = log
        p = self.p
        if self.e == 1:
            self._neg = [(-a) % p for a in range(q)]
            self._add_table = None
        else:
            self._neg = [self.from_digits([(-d) % p for d in self.digits(a)]) for a in range(q)]
            if p != 2 and q <= _ADD_TABLE_LIMIT:
                digits = [self.digits(a) for a in range(q)]
                self._add_table = [
                    [self.from_digits([(x + y) % p for x, y in zip(digits[a], digits[b])])
                     for b in range(q)]
                    for a in range(q)
                ]
            else:
                self._add_table = None

    # -- encoding -------------------------------------------------------------

    def digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.e):
            out.append(a % p)
            a //= p
        return out

    def from_digits(self, ds: Iterable[int]) -> int:
        code = 0
        for i, d in enumerate(ds):
            code += (d % self.p) * self.p**i
        return code

    def elements(self) -> range:
        return range(self.q)

    def check(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.q:
            raise ValueError(f"{a!r} is not an element code of F_{self.q}")
        return a

    # -- arithmetic on codes --------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a][b]
        p = self.p
        return self.from_digits((x + y) % p for x, y in zip(self.digits(a), self.digits(b)))

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if n == 0 else 0
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def frob(self, a: int, q0: int) -> int:
        """a^{q0}; q0 must be the order of a subfield."""
        if q0 not in self.subfield_orders():
            raise ValueError(f"{q0} is not the order of a subfield of F_{self.q}")
        return self.pow(a, q0)

    def order(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        n = self.q - 1
        for ell in prime_factors(n):
            while n % ell == 0 and self.pow(a, n // ell) == 1:
                n //= ell
        return n

    def subfield_orders(self) -> list[int]:
        return [self.p**d for d in range(1, self.e + 1) if self.e % d == 0]

    def dot(self, xs: Sequence[int], ys: Sequence[int]) -> int:
        s = 0
        for x, y in zip(xs, ys):
            if x and y:
                s = self.add(s, self.mul(x, y))
        return s

    # -- misc -----------------------------------------------------------------

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> FieldSpec:
        return fq_make(int(obj["p"]), int(obj["e"]), obj.get("modulus"))

    def _key(self) -> tuple:
        return (self.p, self.e, self.modulus)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, e={self.e}, modulus={list(self.modulus)})"


@lru_cache(maxsize=None)
def _make(p: int, e: int, modulus: tuple[int, ...] | None) -> FieldSpec:
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if e < 1:
        raise ValueError(f"extension degree must be positive, got {e}")
    if modulus is None:
        modulus = smallest_irreducible(p, e)
    return FieldSpec(p, e, modulus)


def fq_make(p: int, e: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Build (or fetch from cache) the field F_{p^e}."""
    return _make(p, e, None if modulus is None else tuple(int(c) for c in modulus))


def field_of_order(q: int) -> FieldSpec:
    p, e = prime_power(q)
    return fq_make(p, e)


@dataclass(frozen=True)
class FieldElem:
    """A field element bound to its field; arithmetic refuses mixed fields."""

    field: FieldSpec
    code: int

    def __post_init__(self) -> None:
        self.field.check(self.code)

    def _other(self, other: FieldElem) -> int:
        if not isinstance(other, FieldElem):
            return NotImplemented
        if other.field != self.field:
            raise ValueError(f"mixed fields: F_{self.field.q} and F_{other.field.q}")
        return other.code

    def __add__(self, other: FieldElem) -> FieldElem:
        return FieldElem(self.field, self.field.add(self.code, self._other(other)))

    def __sub__(self, other: FieldElem) -> FieldElem:
        return FieldElem(self.field, self.field.sub(self.code, self._other(other)))

    def __mul__(self, other: FieldElem) -> FieldElem:
        return FieldElem(self.field, self.field.mul(self.code, self._other(other)))

    def __truediv__(self, other: FieldElem) -> FieldElem:
        return FieldElem(self.field, self.field.div(self.code, self._other(other)))

    def __neg__(self) -> FieldElem:
        return FieldElem(self.field, self.field.neg(self.code))

    def __pow__(self, n: int) -> FieldElem:
        return FieldElem(self.field, self.field.pow(self.code, n))

    def inverse(self) -> FieldElem:
        return FieldElem(self.field, self.field.inv(self.code))

    def __int__(self) -> int:
        return self.code


def fq_add(a: FieldElem, b: FieldElem) -> FieldElem:
    return a + b


def fq_mul(a: FieldElem, b: FieldElem) -> FieldElem:
    return a * b


def fq_neg(a: FieldElem) -> FieldElem:
    return -a


def fq_inv(a: FieldElem) -> FieldElem:
    return a.inverse()


def fq_frobenius(a: FieldElem, q0: int) -> FieldElem:
    return FieldElem(a.field, a.field.frob(a.code, q0))


def fq_enumerate(spec: FieldSpec) -> list[FieldElem]:
    return [FieldElem(spec, c) for c in spec.elements()]


def fq_primitive(spec: FieldSpec) -> FieldElem:
    """Smallest-code element of multiplicative order q - 1."""
    return FieldElem(spec, spec.primitive)


class FieldExtension:
    """F_{q^m} viewed as an m-dimensional space over its subfield F_q.

    Coordinates are taken with respect to the polynomial basis
    1, x, ..., x^{m-1} of the large field, where x is the class of the
    indeterminate (element code p).  The subfield is identified with the
    standalone field ``small`` through the smallest-code root of
    ``small.modulus`` in ``big``.
    """

    def __init__(self, big: FieldSpec, small: FieldSpec):
        if big.p != small.p or big.e % small.e:
            raise ValueError(f"F_{small.q} is not a subfield of F_{big.q}")
        self.big = big
        self.small = small
        self.m = big.e // small.e
        if small.e == 1:
            embed = list(range(small.q))
        else:
            root = next(
                r for r in big.elements()
                if _eval_poly(big, small.modulus, r) == 0
            )
            powers = [big.pow(root, i) for i in range(small.e)]
            embed = []
            for c in small.elements():
                v = 0
                for d, pw in zip(small.digits(c), powers):
                    v = big.add(v, big.mul(d, pw))
                embed.append(v)
        self._embed = embed
        self._restrict = {v: c for c, v in enumerate(embed)}
        x = big.p if big.e > 1 else 1
        self.basis = [big.pow(x, j) for j in range(self.m)]
        table: list[tuple[int, ...] | None] = [None] * big.q
        for coords in product(range(small.q), repeat=self.m):
            v = 0
            for c, b in zip(coords, self.basis):
                v = big.add(v, big.mul(embed[c], b))
            if table[v] is not None:
                raise AssertionError("polynomial basis is not a basis")  # pragma: no cover
            table[v] = coords
        self._expand = table

    def embed(self, c: int) -> int:
        return self._embed[c]

    def restrict(self, a: int) -> int:
        try:
            return self._restrict[a]
        except KeyError:
            raise ValueError(f"{a} does not lie in the subfield F_{self.small.q}") from None

    def frobenius(self, a: int) -> int:
        return self.big.pow(a, self.small.q)

    def norm(self, a: int) -> int:
        big = self.big
        return self.restrict(big.pow(a, (big.q - 1) // (self.small.q - 1)))

    def expand(self, a: int) -> tuple[int, ...]:
        return self._expand[a]

    def combine(self, coords: Sequence[int]) -> int:
        v = 0
        for c, b in zip(coords, self.basis):
            v = self.big.add(v, self.big.mul(self._embed[c], b))
        return v

    def expand_word(self, word: Sequence[int]) -> tuple[tuple[int, ...], ...]:
        """m x n matrix over the subfield whose j-th column expands word[j]."""
        cols = [self._expand[a] for a in word]
        return tuple(tuple(col[i] for col in cols) for i in range(self.m))


@lru_cache(maxsize=None)
def extension(big: FieldSpec, small: FieldSpec) -> FieldExtension:
    return FieldExtension(big, small)


def _eval_poly(f: FieldSpec, coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = f.add(f.mul(acc, x), c)
    return acc


def fq_expand(a: FieldElem, q0: int) -> list[FieldElem]:
    small = field_of_order(q0)
    ext = extension(a.field, small)
    return [FieldElem(small, c) for c in ext.expand(a.code)]


def fq_expand_word(word: Sequence[FieldElem], q0: int) -> list[list[FieldElem]]:
    if not word:
        raise ValueError("empty word")
    big = word[0].field
    if any(w.field != big for w in word):
        raise ValueError("word mixes fields")
    small = field_of_order(q0)
    mat = extension(big, small).expand_word([w.code for w in word])
    return [[FieldElem(small, c) for c in row] for row in mat]
