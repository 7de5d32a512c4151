"""Sparse trivariate polynomials over a finite field.

A :class:`TriPoly` maps exponent triples ``(ex, ey, ez)`` to nonzero
coefficient codes of its field.  Terms are ordered graded-lexicographically
with x > y > z.  Values are treated as immutable: every operation returns a
new polynomial.
"""
from __future__ import annotations

import heapq
from functools import reduce

import numpy as np

from .errors import FieldMismatch, IdenticalPoints, RemainderNonzero, SingularMatrix
from .gf import Embedding, Field, FieldElem, build_field, embedding
from . import matrix as mx

Exps = tuple[int, int, int]


def grlex_key(e: Exps):
    return (e[0] + e[1] + e[2], e[0], e[1], e[2])


def _coerce_scalar(field: Field, c) -> int:
    if isinstance(c, FieldElem):
        if c.field != field:
            raise FieldMismatch(f"scalar over {c.field!r}, expected {field!r}")
        return c.value
    return field.from_int(c)


def base_digits(n: int, p: int) -> list[int]:
    out = []
    while n:
        out.append(n % p)
        n //= p
    return out


def binom_mod_p(n: int, k: int, p: int) -> int:
    """C(n, k) mod p by Lucas' theorem."""
    if k < 0 or k > n:
        return 0
    r = 1
    while n or k:
        a, b = n % p, k % p
        if b > a:
            return 0
        r = r * _small_binom(a, b) % p
        n //= p
        k //= p
    return r


def _small_binom(a, b):
    r = 1
    for i in range(b):
        r = r * (a - i) // (i + 1)
    return r


def lucas_support(n: int, p: int):
    """Yield (k, C(n,k) mod p) for the k with nonzero binomial mod p."""
    digits = base_digits(n, p)
    ks = [(0, 1)]
    w = 1
    for d in digits:
        nxt = []
        for k, c in ks:
            for j in range(d + 1):
                nxt.append((k + j * w, c * _small_binom(d, j) % p))
        ks = nxt
        w *= p
    return ks


class TriPoly:
    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms=None):
        self.field = field
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[tuple(e)] = c
        self.terms: dict[Exps, int] = clean

    # -- constructors --------------------------------------------------------
    @classmethod
    def zero(cls, field):
        return cls(field)

    @classmethod
    def constant(cls, field, c):
        return cls(field, {(0, 0, 0): _coerce_scalar(field, c)})

    @classmethod
    def monomial(cls, field, exps, coeff=1):
        return cls(field, {tuple(exps): _coerce_scalar(field, coeff)})

    @classmethod
    def var(cls, field, i: int, power: int = 1):
        e = [0, 0, 0]
        e[i] = power
        return cls(field, {tuple(e): 1})

    @classmethod
    def linear(cls, field, coeffs):
        """The linear form c0 x + c1 y + c2 z; coefficients are codes."""
        return cls(field, {(1, 0, 0): coeffs[0], (0, 1, 0): coeffs[1], (0, 0, 1): coeffs[2]})

    @classmethod
    def _raw(cls, field, terms):
        obj = cls.__new__(cls)
        obj.field = field
        obj.terms = terms
        return obj

    # -- inspection ----------------------------------------------------------
    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def min_degree(self) -> int:
        if not self.terms:
            return -1
        return min(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    @property
    def homogeneous_degree(self):
        ds = {sum(e) for e in self.terms}
        return ds.pop() if len(ds) == 1 else None

    def coeff(self, e) -> int:
        return self.terms.get(tuple(e), 0)

    def sorted_terms(self):
        """Terms in decreasing graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self):
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def homogeneous_part(self, d: int) -> "TriPoly":
        return TriPoly._raw(self.field, {e: c for e, c in self.terms.items() if sum(e) == d})

    def coefficients_in_prime_field(self) -> bool:
        return all(c < self.field.p for c in self.terms.values())

    # -- comparisons ---------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, TriPoly):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, frozenset(self.terms.items())))

    def _check(self, other: "TriPoly"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    # -- ring operations -----------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, TriPoly):
            other = TriPoly.constant(self.field, other)
        self._check(other)
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = F.add(out.get(e, 0), c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return TriPoly._raw(F, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return TriPoly._raw(F, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, TriPoly):
            other = TriPoly.constant(self.field, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> "TriPoly":
        """Multiply by the field element with code c."""
        F = self.field
        if c == 0:
            return TriPoly(F)
        if c == 1:
            return self
        return TriPoly._raw(F, {e: F.mul(c, v) for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TriPoly):
            return poly_mul(self, other)
        return self.scale(_coerce_scalar(self.field, other))

    def __rmul__(self, other):
        return self.scale(_coerce_scalar(self.field, other))

    def frobenius_power(self, k: int = 1) -> "TriPoly":
        """self ** (p ** k), computed termwise (freshman's dream)."""
        F = self.field
        s = F.p**k
        return TriPoly._raw(
            F, {(e[0] * s, e[1] * s, e[2] * s): F.pow(c, s) for e, c in self.terms.items()}
        )

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        F = self.field
        result = TriPoly.constant(F, 1)
        base = self
        # write n in base p; p-th powers are cheap
        k = 0
        while n:
            d = n % F.p
            if d:
                piece = base.frobenius_power(k) if k else base
                result = result * _small_pow(piece, d)
            n //= F.p
            k += 1
        return result

    # -- other maps ----------------------------------------------------------
    def map_coeffs(self, fn, field: Field | None = None) -> "TriPoly":
        field = field or self.field
        return TriPoly(field, {e: fn(c) for e, c in self.terms.items()})

    def embed(self, e: Embedding) -> "TriPoly":
        if e.source != self.field:
            raise FieldMismatch(f"{self.field!r} is not the source of the embedding")
        return TriPoly._raw(e.target, {x: e(c) for x, c in self.terms.items()})

    def over(self, field: Field) -> "TriPoly":
        """The same polynomial regarded over a field containing this one."""
        if field == self.field:
            return self
        if field.p != self.field.p:
            raise FieldMismatch(f"{self.field!r} and {field!r} differ in characteristic")
        if self.coefficients_in_prime_field():
            return TriPoly._raw(field, dict(self.terms))
        return self.embed(embedding(self.field, field))

    def permute(self, perm) -> "TriPoly":
        """Rename variables: new exponent at position perm[i] is old exponent i."""
        out = {}
        for e, c in self.terms.items():
            ne = [0, 0, 0]
            for i in range(3):
                ne[perm[i]] = e[i]
            out[tuple(ne)] = c
        return TriPoly._raw(self.field, out)

    # -- printing ------------------------------------------------------------
    def __repr__(self):
        return f"TriPoly({self.field!r}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        F = self.field
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip("xyz", e) if k
            )
            if F.m == 1 or c < F.p:
                cs = str(c)
            else:
                cs = f"[{F.format(c)}]"
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)

    def to_text(self) -> str:
        F = self.field
        lines = [f"p={F.p} m={F.m} poly={','.join(str(c) for c in F.modulus)}"]
        for e, c in self.sorted_terms():
            lines.append(f"{F.format(c)}:{e[0]},{e[1]},{e[2]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "TriPoly":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        header = dict(kv.split("=", 1) for kv in lines[0].split())
        p, m = int(header["p"]), int(header["m"])
        modulus = tuple(int(c) for c in header["poly"].split(","))
        F = build_field(p, m)
        if F.modulus != modulus:
            from .gf import Field as _Field

            F = _Field(p, m, modulus)
        terms = {}
        for ln in lines[1:]:
            cs, es = ln.split(":")
            e = tuple(int(x) for x in es.split(","))
            terms[e] = F.parse(cs)
        return cls(F, terms)


def _small_pow(f: TriPoly, d: int) -> TriPoly:
    r = f
    for _ in range(d - 1):
        r = poly_mul(r, f)
    return r


def poly_mul(f: TriPoly, g: TriPoly) -> TriPoly:
    f._check(g)
    F = f.field
    if len(f.terms) > len(g.terms):
        f, g = g, f
    out: dict = {}
    add, mul = F.add, F.mul
    gt = list(g.terms.items())
    for (a, b, c), u in f.terms.items():
        for (d, e, h), v in gt:
            k = (a + d, b + e, c + h)
            w = add(out.get(k, 0), mul(u, v))
            if w:
                out[k] = w
            else:
                out.pop(k, None)
    return TriPoly._raw(F, out)


def poly_sum(polys, field: Field) -> TriPoly:
    return reduce(lambda a, b: a + b, polys, TriPoly.zero(field))


def exact_divide(f: TriPoly, g: TriPoly) -> TriPoly:
    """Return h with f = g*h; raise RemainderNonzero when g does not divide f.

    Single-divisor long division in graded-lex order.  If g divides f then
    every intermediate remainder is a multiple of g, so its leading term is
    divisible by the leading term of g; a failure of that test is proof of
    non-divisibility.
    """
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    F = f.field
    (ga, gb, gc), glc = g.leading_term()
    ginv = F.inv(glc)
    g_rest = [(e, c) for e, c in g.terms.items() if e != (ga, gb, gc)]
    rem = dict(f.terms)
    heap = [tuple(-k for k in grlex_key(e)) for e in rem]
    heapq.heapify(heap)
    quo = {}
    while rem:
        key = heapq.heappop(heap)
        e = (-key[1], -key[2], -key[3])
        c = rem.get(e)
        if not c:
            continue
        qe = (e[0] - ga, e[1] - gb, e[2] - gc)
        if min(qe) < 0:
            raise RemainderNonzero(f"leading term {e} not divisible by {(ga, gb, gc)}")
        qc = F.mul(c, ginv)
        quo[qe] = qc
        del rem[e]
        for (a, b, cc), v in g_rest:
            k = (qe[0] + a, qe[1] + b, qe[2] + cc)
            old = rem.get(k, 0)
            w = F.sub(old, F.mul(qc, v))
            if w:
                if not old:
                    heapq.heappush(heap, (-(k[0] + k[1] + k[2]), -k[0], -k[1], -k[2]))
                rem[k] = w
            else:
                rem.pop(k, None)
    return TriPoly._raw(F, quo)


# ---------------------------------------------------------------------------
# linear substitution


def _sub_transvection(f: TriPoly, i: int, j: int, c: int) -> TriPoly:
    """f with x_i replaced by x_i + c x_j."""
    F = f.field
    p = F.p
    out: dict = {}
    for e, v in f.terms.items():
        a = e[i]
        for k, b in lucas_support(a, p):
            coef = F.mul(v, F.mul(b, F.pow(c, k)))
            if not coef:
                continue
            ne = list(e)
            ne[i] -= k
            ne[j] += k
            ne = tuple(ne)
            w = F.add(out.get(ne, 0), coef)
            if w:
                out[ne] = w
            else:
                out.pop(ne, None)
    return TriPoly._raw(F, out)


def _apply_elementary(f: TriPoly, op) -> TriPoly:
    F = f.field
    if op[0] == "swap":
        _, i, j = op
        perm = [0, 1, 2]
        perm[i], perm[j] = j, i
        return f.permute(perm)
    if op[0] == "scale":
        _, i, c = op
        return TriPoly._raw(F, {e: F.mul(v, F.pow(c, e[i])) for e, v in f.terms.items()})
    _, i, j, c = op
    return _sub_transvection(f, i, j, c)


def substitute_linear(f: TriPoly, A) -> TriPoly:
    """Return f∘A, the polynomial v ↦ f(A v).

    A is factored into elementary matrices which are applied one at a time;
    for polynomials invariant under the group generated by such factors the
    intermediates stay as sparse as f itself.
    """
    F = f.field
    A = mx.as_codes(F, A)
    if mx.det3(F, A) == 0:
        raise SingularMatrix("substitution matrix is singular")
    g = f
    for op in mx.elementary_factors(F, A):
        g = _apply_elementary(g, op)
    return g


def substitute_linear_naive(f: TriPoly, A) -> TriPoly:
    """Reference implementation: expand f(L1, L2, L3) directly."""
    F = f.field
    A = mx.as_codes(F, A)
    L = [TriPoly.linear(F, A[i]) for i in range(3)]
    cache = [{0: TriPoly.constant(F, 1)} for _ in range(3)]

    def power(i, k):
        if k not in cache[i]:
            cache[i][k] = L[i] ** k
        return cache[i][k]

    out = TriPoly.zero(F)
    for e, c in f.terms.items():
        out = out + (power(0, e[0]) * power(1, e[1]) * power(2, e[2])).scale(c)
    return out


def compose(f: TriPoly, subs) -> TriPoly:
    """f(g0, g1, g2) for arbitrary polynomials g_i over f's field."""
    F = f.field
    cache = [{0: TriPoly.constant(F, 1)} for _ in range(3)]

    def power(i, k):
        if k not in cache[i]:
            cache[i][k] = subs[i] ** k
        return cache[i][k]

    out = TriPoly.zero(F)
    for e, c in f.sorted_terms():
        out = out + (power(0, e[0]) * power(1, e[1]) * power(2, e[2])).scale(c)
    return out


def partials(f: TriPoly) -> tuple[TriPoly, TriPoly, TriPoly]:
    F = f.field
    out = []
    for i in range(3):
        d = {}
        for e, c in f.terms.items():
            k = e[i] % F.p
            if k:
                ne = list(e)
                ne[i] -= 1
                d[tuple(ne)] = F.mul(k, c)
        out.append(TriPoly._raw(F, d))
    return tuple(out)


def dehomogenize(f: TriPoly, var: int = 2) -> TriPoly:
    """Set the given variable to 1."""
    F = f.field
    out: dict = {}
    for e, c in f.terms.items():
        ne = list(e)
        ne[var] = 0
        ne = tuple(ne)
        w = F.add(out.get(ne, 0), c)
        if w:
            out[ne] = w
        else:
            out.pop(ne, None)
    return TriPoly._raw(F, out)


def homogenize(f: TriPoly, var: int = 2) -> TriPoly:
    d = f.degree()
    out = {}
    for e, c in f.terms.items():
        ne = list(e)
        ne[var] += d - sum(e)
        out[tuple(ne)] = c
    return TriPoly._raw(f.field, out)


# ---------------------------------------------------------------------------
# univariate polynomials


class UniPoly:
    """Dense univariate polynomial, coefficients low degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs):
        self.field = field
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = cs

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self):
        """Order of vanishing at t = 0; None for the zero polynomial."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def __eq__(self, other):
        return (
            isinstance(other, UniPoly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        return f"UniPoly({self.field!r}, {self.coeffs})"

    def __call__(self, t: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, t), c)
        return acc

    def roots(self) -> list[int]:
        """All roots in the field, by exhaustive evaluation."""
        F = self.field
        if self.is_zero():
            return list(F.elements())
        if F.has_tables:
            ts = np.arange(F.order, dtype=np.int64)
            acc = np.zeros(F.order, dtype=np.int64)
            for c in reversed(self.coeffs):
                acc = F.v_add(F.v_mul(acc, ts), np.full(F.order, c, dtype=np.int64))
            return [int(t) for t in np.nonzero(acc == 0)[0]]
        return [t for t in F.elements() if self(t) == 0]


def _linear_power(F: Field, a: int, b: int, n: int, trunc: int | None) -> dict:
    """(a + b t)^n as a sparse {k: coeff} dict, optionally truncated at degree trunc."""
    if n == 0:
        return {0: 1}
    if b == 0:
        return {0: F.pow(a, n)}
    if a == 0:
        return {} if trunc is not None and n > trunc else {n: F.pow(b, n)}
    out = {}
    for k, c in lucas_support(n, F.p):
        if trunc is not None and k > trunc:
            continue
        out[k] = F.mul(c, F.mul(F.pow(a, n - k), F.pow(b, k)))
    return out


def _sparse_mul(F, u: dict, v: dict, trunc):
    out: dict = {}
    for i, a in u.items():
        for j, b in v.items():
            k = i + j
            if trunc is not None and k > trunc:
                continue
            out[k] = F.add(out.get(k, 0), F.mul(a, b))
    return out


def restrict_to_line(f: TriPoly, P0, P1, trunc: int | None = None) -> UniPoly:
    """t ↦ f(P0 + t P1) as a UniPoly over the points' field.

    P0 and P1 are projective points (anything with ``field`` and ``coords``
    attributes, coordinates as codes).  With ``trunc`` only coefficients of
    degree ≤ trunc are computed.
    """
    if P0.field != P1.field:
        raise FieldMismatch("points over different fields")
    if tuple(P0.coords) == tuple(P1.coords):
        raise IdenticalPoints("restriction needs two distinct points")
    K = P0.field
    g = f.over(K)
    a = P0.coords
    b = P1.coords
    caches = [{}, {}, {}]

    def lp(i, n):
        if n not in caches[i]:
            caches[i][n] = _linear_power(K, a[i], b[i], n, trunc)
        return caches[i][n]

    total: dict = {}
    for e, c in g.terms.items():
        prod = _sparse_mul(K, _sparse_mul(K, lp(0, e[0]), lp(1, e[1]), trunc), lp(2, e[2]), trunc)
        for k, v in prod.items():
            total[k] = K.add(total.get(k, 0), K.mul(c, v))
    if not total:
        return UniPoly(K, [])
    n = max(total) + 1
    return UniPoly(K, [total.get(k, 0) for k in range(n)])


# ---------------------------------------------------------------------------
# evaluation


def evaluate(f: TriPoly, P, e: Embedding | None = None) -> int:
    """Value of f at the stored representative of P, as a code of P's field.

    Only the zero/nonzero status is independent of the representative.
    """
    K = P.field
    if e is not None:
        if e.source != f.field or e.target != K:
            raise FieldMismatch("embedding does not map the polynomial field to the point field")
        g = f.embed(e)
    else:
        if K.p != f.field.p or K.m % f.field.m:
            raise FieldMismatch(f"cannot evaluate a polynomial over {f.field!r} at a point over {K!r}")
        g = f.over(K)
    return evaluate_coords(g, P.coords)


def evaluate_coords(g: TriPoly, v) -> int:
    K = g.field
    acc = 0
    pw = [{}, {}, {}]
    for e, c in g.terms.items():
        term = c
        for i in range(3):
            k = e[i]
            if k:
                if k not in pw[i]:
                    pw[i][k] = K.pow(v[i], k)
                term = K.mul(term, pw[i][k])
                if not term:
                    break
        if term:
            acc = K.add(acc, term)
    return acc


def evaluate_many(f: TriPoly, field: Field, pts) -> np.ndarray:
    """Vectorised evaluation of f at an (N, 3) array of coordinate codes over ``field``."""
    g = f.over(field)
    K = field
    pts = np.asarray(pts, dtype=np.int64)
    n = pts.shape[0]
    if K.m == 1:
        acc = np.zeros(n, dtype=np.int64)
        for e, c in g.terms.items():
            t = np.full(n, c, dtype=np.int64)
            for i in range(3):
                if e[i]:
                    t = t * K.v_pow(pts[:, i], e[i]) % K.p
            acc = (acc + t) % K.p
        return acc
    K._require_tables()
    N = K.mult_order
    logs = K._log_arr[pts]
    zero = pts == 0
    if K.p == 2:
        acc = np.zeros(n, dtype=np.int64)
    else:
        acc = np.zeros((n, K.m), dtype=np.int64)
    for e, c in g.terms.items():
        lg = np.full(n, K.log(c), dtype=np.int64)
        mask = np.zeros(n, dtype=bool)
        for i in range(3):
            if e[i]:
                lg += logs[:, i] * e[i]
                mask |= zero[:, i]
        val = K._exp_arr[lg % N]
        val[mask] = 0
        if K.p == 2:
            acc ^= val
        else:
            acc += K._coord_arr[val]
    if K.p == 2:
        return acc
    return K.encode_coords(acc % K.p)


# ---------------------------------------------------------------------------
# root finding over large fields (equal-degree splitting)


def _u_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _u_mul(K: Field, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = K.add(out[i + j], K.mul(x, y))
    return _u_trim(out)


def _u_divmod(K: Field, a, b):
    a = list(a)
    b = _u_trim(list(b))
    inv = K.inv(b[-1])
    quo = [0] * max(len(a) - len(b) + 1, 0)
    _u_trim(a)
    while len(a) >= len(b) and a:
        s = len(a) - len(b)
        c = K.mul(a[-1], inv)
        quo[s] = c
        for i, y in enumerate(b):
            if y:
                a[i + s] = K.sub(a[i + s], K.mul(c, y))
        _u_trim(a)
    return _u_trim(quo), a


def _u_monic(K, a):
    inv = K.inv(a[-1])
    return [K.mul(inv, c) for c in a]


def _u_gcd(K: Field, a, b):
    a = _u_trim(list(a))
    b = _u_trim(list(b))
    while b:
        a, b = b, _u_divmod(K, a, b)[1]
    return _u_monic(K, a) if a else a


def _u_powmod(K: Field, base, e: int, mod):
    result = [1]
    base = _u_divmod(K, base, mod)[1]
    while e:
        if e & 1:
            result = _u_divmod(K, _u_mul(K, result, base), mod)[1]
        e >>= 1
        if e:
            base = _u_divmod(K, _u_mul(K, base, base), mod)[1]
    return result


def _u_sub(K, a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _u_trim([K.sub(x, y) for x, y in zip(a, b)])


def _split_linear(K: Field, g, rng, out):
    """Append the roots of a monic squarefree g that splits into linear factors."""
    if len(g) == 1:
        return
    if len(g) == 2:
        out.append(K.neg(g[0]))
        return
    while True:
        d = rng.randrange(K.order)
        if K.p == 2:
            # trace of d*t over F_2
            acc = []
            term = _u_divmod(K, [0, d], g)[1]
            for _ in range(K.m):
                acc = _u_sub(K, acc, [K.neg(c) for c in term])
                term = _u_divmod(K, _u_mul(K, term, term), g)[1]
            h = acc
        else:
            h = _u_sub(K, _u_powmod(K, [d, 1], (K.order - 1) // 2, g), [1])
        f1 = _u_gcd(K, g, h)
        if 1 < len(f1) < len(g):
            f2 = _u_divmod(K, g, f1)[0]
            _split_linear(K, f1, rng, out)
            _split_linear(K, _u_monic(K, f2), rng, out)
            return


def find_roots(f: UniPoly, seed: int = 0) -> list[int]:
    """Distinct roots of f in its field, by gcd with t^|K| - t and random splitting.

    Agrees with :meth:`UniPoly.roots` (exhaustive search) but works for fields
    without tables.
    """
    import random

    K = f.field
    if f.is_zero():
        raise ValueError("zero polynomial has every element as a root")
    g = _u_monic(K, list(f.coeffs))
    if len(g) == 1:
        return []
    tq = _u_powmod(K, [0, 1], K.order, g)
    r = _u_gcd(K, g, _u_sub(K, tq, [0, 1]))
    out: list[int] = []
    _split_linear(K, r, random.Random(seed), out)
    return sorted(out)
