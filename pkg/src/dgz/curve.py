"""Construction of the curve F = D1 / D2 and its polynomial certificates."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from functools import lru_cache

from . import matrix as mx
from .checks import Report
from .errors import InvalidQ, RemainderNonzero
from .gf import Field, build_field, prime_power
from .tripoly import TriPoly, exact_divide, poly_mul, substitute_linear

MAX_Q = 9


def split_q(q: int) -> tuple[int, int]:
    """(p, h) with q = p^h, or InvalidQ."""
    ph = prime_power(q) if isinstance(q, int) else None
    if ph is None:
        raise InvalidQ(f"q={q} is not a prime power")
    return ph


def base_field(q: int) -> Field:
    p, h = split_q(q)
    return build_field(p, h)


def moore_minor(q: int, e: int) -> TriPoly:
    """det of the 3x3 matrix with rows (v, v^q, v^(q^e)) for v = x, y, z."""
    if e not in (2, 3):
        raise ValueError("e must be 2 or 3")
    K = base_field(q)
    exps = (1, q, q**e)
    minus = K.neg(1)
    terms = {}
    # permutations of the column exponents with their signs
    for perm, sign in (((0, 1, 2), 1), ((0, 2, 1), -1), ((1, 0, 2), -1),
                       ((1, 2, 0), 1), ((2, 0, 1), 1), ((2, 1, 0), -1)):
        mono = tuple(exps[perm[i]] for i in range(3))
        terms[mono] = 1 if sign > 0 else minus
    return TriPoly(K, terms)


@dataclass(frozen=True, eq=False)
class DGZCurve:
    q: int
    p: int
    h: int
    field: Field
    D1: TriPoly
    D2: TriPoly
    F: TriPoly
    G0: TriPoly
    G1: TriPoly
    G2: TriPoly
    build_seconds: float = 0.0

    @property
    def degree(self) -> int:
        return self.q**3 - self.q**2

    def __repr__(self):
        return f"DGZCurve(q={self.q}, deg F={self.F.degree()}, terms={len(self.F)})"


@lru_cache(maxsize=None)
def build(q: int) -> DGZCurve:
    p, h = split_q(q)
    K = build_field(p, h)
    t0 = time.perf_counter()
    D1 = moore_minor(q, 3)
    D2 = moore_minor(q, 2)
    F = exact_divide(D1, D2)
    Q = q * q
    minus = K.neg(1)
    G1 = TriPoly(K, {(0, 1, Q): 1, (0, Q, 1): minus})
    G2 = TriPoly(K, {(Q, 0, 1): 1, (1, 0, Q): minus})
    G0 = TriPoly(K, {(1, Q, 0): 1, (Q, 1, 0): minus})
    elapsed = time.perf_counter() - t0
    if F.degree() != q**3 - q**2 or not F.is_homogeneous():
        raise RemainderNonzero("quotient has the wrong shape")
    return DGZCurve(q, p, h, K, D1, D2, F, G0, G1, G2, elapsed)


# ---------------------------------------------------------------------------
# invariance


def gl_generators(q: int) -> list:
    """Generators of GL(3, q): transvections over an F_p-basis plus a scaling."""
    K = base_field(q)
    basis = [K.from_coords([1 if j == k else 0 for j in range(K.m)]) for k in range(K.m)]
    gens = []
    for i in range(3):
        for j in range(3):
            if i != j:
                for c in basis:
                    M = [list(r) for r in mx.identity()]
                    M[i][j] = c
                    gens.append(tuple(tuple(r) for r in M))
    g = K.primitive if K.has_tables else 1
    gens.append(((g, 0, 0), (0, 1, 0), (0, 0, 1)))
    return gens


def random_gl(q: int, rng: random.Random):
    K = base_field(q)
    while True:
        A = tuple(tuple(rng.randrange(K.order) for _ in range(3)) for _ in range(3))
        if mx.det3(K, A):
            return A


def verify_invariance(C: DGZCurve, A) -> Report:
    K = C.field
    A = mx.as_codes(K, A)
    det = mx.det3(K, A)
    r = Report(f"invariance q={C.q}")
    r.add("D1∘A = det(A)·D1", substitute_linear(C.D1, A) == C.D1.scale(det))
    r.add("D2∘A = det(A)·D2", substitute_linear(C.D2, A) == C.D2.scale(det))
    r.add("F∘A = F", substitute_linear(C.F, A) == C.F)
    return r


def verify_invariance_suite(C: DGZCurve, n_random: int = 50, seed: int = 0) -> Report:
    rng = random.Random(seed)
    r = Report(f"invariance q={C.q}")
    mats = [("gen", A) for A in gl_generators(C.q)]
    mats += [("rand", random_gl(C.q, rng)) for _ in range(n_random)]
    for k, (tag, A) in enumerate(mats):
        sub = verify_invariance(C, A)
        r.add(f"{tag}{k}", sub.passed, "; ".join(c.name for c in sub.failures()))
    return r


# ---------------------------------------------------------------------------
# non-classicality certificates


def verify_nonclassical(C: DGZCurve) -> Report:
    K = C.field
    x, y, z = (TriPoly.var(K, i) for i in range(3))
    h = C.h
    lhs = poly_mul(C.D2, C.F)
    rhs = (C.G1.frobenius_power(h) * x + C.G2.frobenius_power(h) * y
           + C.G0.frobenius_power(h) * z)
    r = Report(f"non-classical q={C.q}")
    r.add("D2·F = G1^q x + G2^q y + G0^q z", lhs == rhs)
    r.add("degree 1+q+q^3", lhs.degree() == rhs.degree() == 1 + C.q + C.q**3)
    return r


def verify_frobenius_nc(C: DGZCurve) -> Report:
    K = C.field
    x, y, z = (TriPoly.var(K, i) for i in range(3))
    Q = C.q**2
    first = C.G1 * x + C.G2 * y + C.G0 * z
    xq, yq, zq = (TriPoly.var(K, i, Q) for i in range(3))
    second = C.G1 * xq + C.G2 * yq + C.G0 * zq
    r = Report(f"Frobenius non-classical q={C.q}")
    r.add("G1 x + G2 y + G0 z = 0", first.is_zero())
    r.add("G1 x^(q^2) + G2 y^(q^2) + G0 z^(q^2) = 0", second.is_zero())
    return r


def subplane_forms(q: int) -> list[TriPoly]:
    """The q^2+q+1 normalised linear forms with F_q coefficients."""
    from .plane import enumerate_points

    K = base_field(q)
    return [TriPoly.linear(K, P.coords) for P in enumerate_points(K)]


def verify_d2_lines(C: DGZCurve) -> Report:
    """D2 is a nonzero scalar times the product of all F_q-rational linear forms."""
    K = C.field
    prod = TriPoly.constant(K, 1)
    for L in subplane_forms(C.q):
        prod = poly_mul(prod, L)
    e, c = prod.leading_term()
    d = C.D2.coeff(e)
    r = Report(f"D2 line product q={C.q}")
    ok = d != 0 and prod.scale(K.div(d, c)) == C.D2
    r.add("D2 = c · Π F_q-lines", ok)
    return r
