"""Finite fields GF(p^m).

Elements are stored as integer *codes*: the power-basis coordinates
``(c_0, ..., c_{m-1})`` of an element (``c_0`` the constant term) are packed
as ``sum(c_k * p**k)``.  Codes ``0 .. p-1`` are therefore exactly the prime
subfield, in every extension degree, which keeps polynomials with
prime-field coefficients portable between fields.

Fields of order at most ``TABLE_LIMIT`` carry exp/log/Zech tables.  Larger
fields fall back to polynomial arithmetic modulo the defining polynomial, with
inversion by the extended Euclidean algorithm.  Both paths give identical
results; the table path is only an accelerator.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DegreeTooLarge, FieldMismatch, FieldTooLarge, NonDivisor, NonPrime

MAX_DEGREE = 12
# hard ceiling for internal callers that opt in (generic-point sampling)
LARGE_DEGREE = 16
TABLE_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
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


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, h)`` with ``q == p**h``, or None if q is not a prime power."""
    if q < 2:
        return None
    fs = prime_factors(q)
    if len(fs) != 1:
        return None
    p = fs[0]
    h = 0
    while q > 1:
        q //= p
        h += 1
    return p, h


# ---------------------------------------------------------------------------
# dense polynomials over F_p, coefficient lists low degree first


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _psub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _pdivmod(a, b, p):
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    quo = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] * inv_lead % p
        quo[shift] = c
        for i, y in enumerate(b):
            a[i + shift] = (a[i + shift] - c * y) % p
        _trim(a)
    return _trim(quo), a


def _pmod(a, b, p):
    return _pdivmod(a, b, p)[1]


def _pgcd(a, b, p):
    a = _trim(list(a))
    b = _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [x * inv % p for x in a]
    return a


def _ppowmod(base, e, mod, p):
    result = [1]
    base = _pmod(base, mod, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), mod, p)
        e >>= 1
        if e:
            base = _pmod(_pmul(base, base, p), mod, p)
    return result


def _peval(poly, x: int, p: int) -> int:
    acc = 0
    for c in reversed(poly):
        acc = (acc * x + c) % p
    return acc


def is_irreducible(poly, p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p (coefficients low first)."""
    f = _trim(list(poly))
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p**m, f, p), x, p):
        return False
    for r in prime_factors(m):
        h = _psub(_ppowmod(x, p ** (m // r), f, p), x, p)
        if len(_pgcd(f, h, p)) != 1:
            return False
    return True


# ---------------------------------------------------------------------------


class Field:
    """GF(p^m) realised as F_p[t] / (modulus)."""

    def __init__(self, p: int, m: int, modulus):
        if not is_prime(p):
            raise NonPrime(f"{p} is not prime")
        if not 1 <= m <= LARGE_DEGREE:
            raise DegreeTooLarge(f"extension degree {m} outside 1..{LARGE_DEGREE}")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        self.p = p
        self.m = m
        self.modulus = modulus
        self.order = p**m
        self.field_id = (p, m, modulus)
        self._hash = hash(self.field_id)
        self._pw = [p**k for k in range(m)]
        self.has_tables = self.order <= TABLE_LIMIT
        if self.has_tables:
            self._build_tables()

    # -- identity ------------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Field) and self.field_id == other.field_id

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        return (Field, (self.p, self.m, self.modulus))

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"

    # -- coordinates ---------------------------------------------------------
    def coords(self, a: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.m):
            out.append(a % p)
            a //= p
        return tuple(out)

    def from_coords(self, cs) -> int:
        cs = list(cs)
        if len(cs) != self.m:
            raise ValueError(f"expected {self.m} coordinates, got {len(cs)}")
        return sum((int(c) % self.p) * w for c, w in zip(cs, self._pw))

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def format(self, a: int) -> str:
        return ",".join(str(c) for c in self.coords(a))

    def parse(self, text: str) -> int:
        """Comma-separated coordinates, low degree first; missing high ones are zero."""
        cs = [int(t) for t in text.strip().split(",")]
        if len(cs) > self.m or any(not 0 <= c < self.p for c in cs):
            raise ValueError(f"{text!r} is not an element of F_{self.order}")
        return self.from_coords(cs + [0] * (self.m - len(cs)))

    def elements(self):
        return range(self.order)

    # -- slow path: polynomial arithmetic ------------------------------------
    def _poly(self, a: int) -> list[int]:
        return _trim(list(self.coords(a)))

    def _code(self, poly) -> int:
        return sum(c * w for c, w in zip(poly, self._pw))

    def _mul_slow(self, a: int, b: int) -> int:
        prod = _pmul(self._poly(a), self._poly(b), self.p)
        return self._code(_pmod(prod, list(self.modulus), self.p))

    def _inv_slow(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        p = self.p
        r0, r1 = list(self.modulus), self._poly(a)
        s0, s1 = [], [1]
        while r1:
            quo, rem = _pdivmod(r0, r1, p)
            r0, r1 = r1, rem
            s0, s1 = s1, _psub(s0, _pmul(quo, s1, p), p)
        # r0 is a nonzero constant since the modulus is irreducible
        c = pow(r0[0], p - 2, p)
        return self._code([x * c % p for x in s0])

    def _add_slow(self, a: int, b: int) -> int:
        p = self.p
        out = 0
        w = 1
        while a or b:
            out += ((a % p + b % p) % p) * w
            a //= p
            b //= p
            w *= p
        return out

    def _neg_slow(self, a: int) -> int:
        return self._code([(-c) % self.p for c in self.coords(a)])

    def _pow_slow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._mul_slow(result, a)
            e >>= 1
            if e:
                a = self._mul_slow(a, a)
        return result

    # -- tables --------------------------------------------------------------
    def _build_tables(self):
        n = self.order - 1
        self.mult_order = n
        if self.m == 1:
            mul = lambda a, b: a * b % self.p  # noqa: E731
        else:
            mul = self._mul_slow
        gen = self._find_primitive(mul)
        exp = [1] * (2 * n + 1)
        log = [-1] * self.order
        x = 1
        for k in range(n):
            exp[k] = x
            log[x] = k
            x = mul(x, gen)
        for k in range(n, 2 * n + 1):
            exp[k] = exp[k - n]
        self.primitive = gen
        self._exp = exp
        self._log = log
        p = self.p
        # Zech logarithms: 1 + g^k = g^zech[k]  (or zero when zech[k] == -1)
        zech = [-1] * max(n, 1)
        for k in range(n):
            e = exp[k]
            one_plus = e - e % p + (e % p + 1) % p
            zech[k] = log[one_plus] if one_plus else -1
        self._zech = zech
        self._neg = [self._neg_slow(a) for a in range(self.order)] if self.m > 1 else None
        self._exp_arr = np.array(exp, dtype=np.int64)
        log_arr = np.array(log, dtype=np.int64)
        log_arr[0] = 0
        self._log_arr = log_arr
        self._coord_arr = np.array([self.coords(a) for a in range(self.order)], dtype=np.int64)
        self._pw_arr = np.array(self._pw, dtype=np.int64)

    def _find_primitive(self, mul):
        n = self.order - 1
        if n == 1:
            return 1
        qs = prime_factors(n)

        def power(a, e):
            r = 1
            while e:
                if e & 1:
                    r = mul(r, a)
                e >>= 1
                if e:
                    a = mul(a, a)
            return r

        for g in range(2, self.order):
            if all(power(g, n // r) != 1 for r in qs):
                return g
        raise AssertionError("no primitive element found")  # unreachable for a field

    # -- arithmetic on codes -------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        if not self.has_tables:
            return self._add_slow(a, b)
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % self.mult_order]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.m == 1:
            return (-a) % self.p
        if self.has_tables:
            return self._neg[a]
        return self._neg_slow(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if not self.has_tables:
            return self._mul_slow(a, b)
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        if not self.has_tables:
            return self._inv_slow(a)
        return self._exp[self.mult_order - self._log[a]]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        if self.m == 1:
            return pow(a, e, self.p)
        if not self.has_tables:
            return self._pow_slow(a, e)
        return self._exp[(self._log[a] * e) % self.mult_order]

    def frobenius(self, a: int, k: int = 1) -> int:
        """a ** (p ** k)."""
        k %= self.m
        if k == 0 or a < self.p:
            return a
        return self.pow(a, self.p**k)

    def log(self, a: int) -> int:
        self._require_tables()
        if a == 0:
            raise ValueError("log of zero")
        return self._log[a]

    def exp(self, k: int) -> int:
        self._require_tables()
        return self._exp[k % self.mult_order]

    def in_subfield(self, a: int, d: int) -> bool:
        if d <= 0 or self.m % d:
            raise NonDivisor(f"{d} does not divide {self.m}")
        return self.frobenius(a, d) == a

    def subfield_elements(self, d: int) -> list[int]:
        return [a for a in self.elements() if self.in_subfield(a, d)]

    # -- vectorised arithmetic (table fields only) ---------------------------
    def _require_tables(self):
        if not self.has_tables:
            raise FieldTooLarge(f"{self!r} exceeds the table limit {TABLE_LIMIT}")

    def encode_coords(self, cs):
        return np.asarray(cs, dtype=np.int64) @ self._pw_arr

    def v_mul(self, a, b):
        self._require_tables()
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return a * b % self.p
        out = self._exp_arr[self._log_arr[a] + self._log_arr[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def v_pow(self, a, e: int):
        self._require_tables()
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        out = self._exp_arr[(self._log_arr[a] * e) % self.mult_order]
        return np.where(a == 0, 0, out)

    def v_inv(self, a):
        self._require_tables()
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self._exp_arr[self.mult_order - self._log_arr[a]]

    def v_add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        self._require_tables()
        return self.encode_coords((self._coord_arr[a] + self._coord_arr[b]) % self.p)

    def v_neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        if self.m == 1:
            return (-a) % self.p
        self._require_tables()
        return self.encode_coords((-self._coord_arr[a]) % self.p)

    def v_sum(self, a, axis=-1):
        """Field sum of an array of codes along ``axis``."""
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        if self.m == 1:
            return a.sum(axis=axis) % self.p
        self._require_tables()
        return self.encode_coords(self._coord_arr[a].sum(axis=axis) % self.p)

    def v_in_subfield(self, a, d: int):
        if self.m % d:
            raise NonDivisor(f"{d} does not divide {self.m}")
        return self.v_pow(a, self.p**d) == np.asarray(a)


@lru_cache(maxsize=None)
def build_field(p: int, m: int, max_degree: int = MAX_DEGREE) -> Field:
    """GF(p^m) defined by the lexicographically smallest monic irreducible.

    Candidates are ordered by their coefficient tuple read from the constant
    term upwards, smallest residue first.  ``max_degree`` lifts the default
    cap of 12 for callers that need a larger extension.
    """
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if not 1 <= m <= max_degree:
        raise DegreeTooLarge(f"extension degree {m} outside 1..{max_degree}")
    for low in itertools.product(range(p), repeat=m):
        poly = low + (1,)
        # a zero constant term or a root in F_p means a linear factor; skip Rabin
        if m > 1 and (low[0] == 0 or any(_peval(poly, r, p) == 0 for r in range(p))):
            continue
        if is_irreducible(poly, p):
            return Field(p, m, poly)
    raise AssertionError("no irreducible polynomial found")  # unreachable


@dataclass(frozen=True)
class FieldElem:
    """A field element with operator overloading; wraps a code of ``field``."""

    field: Field
    value: int

    @classmethod
    def from_coords(cls, field: Field, coords) -> "FieldElem":
        return cls(field, field.from_coords(coords))

    @property
    def coords(self) -> tuple[int, ...]:
        return self.field.coords(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldMismatch(f"{other.field!r} vs {self.field!r}")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return FieldElem(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return FieldElem(self.field, self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return FieldElem(self.field, self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return FieldElem(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return FieldElem(self.field, self.field.div(self.value, o))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElem(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.field, self.field.inv(self.value))

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return self.field.format(self.value)


def frobenius(a: FieldElem, k: int) -> FieldElem:
    """a ** (p ** k); the identity when k is a multiple of the degree."""
    return FieldElem(a.field, a.field.frobenius(a.value, k))


def in_subfield(a: FieldElem, d: int) -> bool:
    return a.field.in_subfield(a.value, d)


@dataclass(frozen=True)
class Embedding:
    """Ring embedding GF(p^d) -> GF(p^m) fixed by the image of the generator."""

    source: Field
    target: Field
    image: int
    table: tuple[int, ...] | None = None

    def __call__(self, a: int) -> int:
        if self.table is not None:
            return self.table[a]
        return self._eval(a)

    def _eval(self, a: int) -> int:
        t = self.target
        acc = 0
        for c in reversed(self.source.coords(a)):
            acc = t.add(t.mul(acc, self.image), c)
        return acc


def _root_of(poly, target: Field) -> int:
    for r in target.elements():
        acc = 0
        for c in reversed(poly):
            acc = target.add(target.mul(acc, r), c)
        if acc == 0:
            return r
    raise FieldMismatch("defining polynomial has no root in the target field")


@lru_cache(maxsize=None)
def embedding(source: Field, target: Field) -> Embedding:
    """Embedding sending the source generator to its first root in the target.

    Roots are searched in increasing code order.
    """
    if source.p != target.p or target.m % source.m:
        raise FieldMismatch(f"cannot embed {source!r} into {target!r}")
    if source == target:
        return Embedding(source, target, image=_root_of(source.modulus, target),
                         table=tuple(range(source.order)) if source.order <= TABLE_LIMIT else None)
    image = _root_of(source.modulus, target)
    e = Embedding(source, target, image)
    if source.order <= TABLE_LIMIT:
        e = Embedding(source, target, image, tuple(e._eval(a) for a in source.elements()))
    return e


def embed(a: FieldElem, e: Embedding) -> FieldElem:
    if a.field != e.source:
        raise FieldMismatch(f"{a.field!r} is not the source of {e!r}")
    return FieldElem(e.target, e(a.value))


def extension(base: Field, i: int) -> Field:
    """The degree-i extension of ``base``, realised directly over the prime field."""
    return build_field(base.p, base.m * i)
