"""Points and lines of PG(2, K) for a finite field K."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import FieldMismatch, FieldTooLarge
from .gf import Field, build_field, embedding

ENUM_LIMIT = 1 << 10


def _normalize(K: Field, v) -> tuple[int, int, int]:
    v = tuple(int(c) for c in v)
    for c in v:
        if c:
            if c == 1:
                return v
            ci = K.inv(c)
            return tuple(K.mul(ci, a) for a in v)
    raise ValueError("the zero vector is not a projective point")


@dataclass(frozen=True)
class ProjPoint:
    field: Field
    coords: tuple[int, int, int]

    @classmethod
    def make(cls, K: Field, coords) -> "ProjPoint":
        return cls(K, _normalize(K, coords))

    def __str__(self):
        if self.field.m == 1:
            return "(" + ":".join(str(c) for c in self.coords) + ")"
        return "(" + ":".join(self.field.format(c) for c in self.coords) + ")"

    def to(self, target: Field) -> "ProjPoint":
        """The same point seen in a plane over an extension field."""
        if target == self.field:
            return self
        e = embedding(self.field, target)
        return ProjPoint(target, tuple(e(c) for c in self.coords))


@dataclass(frozen=True)
class ProjLine:
    """The line ux + vy + wz = 0; dual coordinates normalised like points."""

    field: Field
    coords: tuple[int, int, int]

    @classmethod
    def make(cls, K: Field, coords) -> "ProjLine":
        return cls(K, _normalize(K, coords))

    def contains(self, P: ProjPoint) -> bool:
        return incident(P, self)

    def __str__(self):
        return "[" + ":".join(self.field.format(c) for c in self.coords) + "]"


def incident(P: ProjPoint, L: ProjLine) -> bool:
    if P.field != L.field:
        raise FieldMismatch("point and line over different fields")
    K = P.field
    acc = 0
    for a, b in zip(P.coords, L.coords):
        acc = K.add(acc, K.mul(a, b))
    return acc == 0


def cross(K: Field, u, v) -> tuple[int, int, int]:
    m, s = K.mul, K.sub
    return (
        s(m(u[1], v[2]), m(u[2], v[1])),
        s(m(u[2], v[0]), m(u[0], v[2])),
        s(m(u[0], v[1]), m(u[1], v[0])),
    )


def join(P: ProjPoint, R: ProjPoint) -> ProjLine:
    c = cross(P.field, P.coords, R.coords)
    if c == (0, 0, 0):
        from .errors import IdenticalPoints

        raise IdenticalPoints("a line needs two distinct points")
    return ProjLine.make(P.field, c)


def plane_size(s: int) -> int:
    return s * s + s + 1


def iter_coords(K: Field):
    n = K.order
    for b in range(n):
        for c in range(n):
            yield (1, b, c)
    for c in range(n):
        yield (0, 1, c)
    yield (0, 0, 1)


def enumerate_points(K: Field, limit: int = ENUM_LIMIT):
    """All points of PG(2, K): (1:b:c), then (0:1:c), then (0:0:1)."""
    if K.order > limit:
        raise FieldTooLarge(f"|K| = {K.order} exceeds the enumeration limit {limit}")
    for v in iter_coords(K):
        yield ProjPoint(K, v)


def enumerate_lines(K: Field, limit: int = ENUM_LIMIT):
    for P in enumerate_points(K, limit):
        yield ProjLine(K, P.coords)


def point_array(K: Field, limit: int = ENUM_LIMIT) -> np.ndarray:
    """All normalised points as an (s^2+s+1, 3) array, in enumeration order."""
    if K.order > limit:
        raise FieldTooLarge(f"|K| = {K.order} exceeds the enumeration limit {limit}")
    n = K.order
    bc = np.arange(n * n, dtype=np.int64)
    first = np.stack([np.ones(n * n, dtype=np.int64), bc // n, bc % n], axis=1)
    second = np.stack(
        [np.zeros(n, dtype=np.int64), np.ones(n, dtype=np.int64), np.arange(n, dtype=np.int64)], axis=1
    )
    return np.concatenate([first, second, np.array([[0, 0, 1]], dtype=np.int64)])


def index_of(K: Field, coords) -> int:
    """Position of a normalised point in the enumeration order."""
    a, b, c = coords
    n = K.order
    if a:
        return b * n + c
    if b:
        return n * n + c
    return n * n + n


def index_array(K: Field, pts: np.ndarray) -> np.ndarray:
    n = K.order
    a, b, c = pts[:, 0], pts[:, 1], pts[:, 2]
    return np.where(a != 0, b * n + c, np.where(b != 0, n * n + c, n * n + n))


def normalize_many(K: Field, pts: np.ndarray) -> np.ndarray:
    """Normalise an (N, 3) array of nonzero vectors (first nonzero entry -> 1)."""
    pts = np.asarray(pts, dtype=np.int64)
    lead = np.where(pts[:, 0] != 0, pts[:, 0], np.where(pts[:, 1] != 0, pts[:, 1], pts[:, 2]))
    if np.any(lead == 0):
        raise ValueError("zero vector in point array")
    inv = K.v_inv(lead)
    return K.v_mul(pts, inv[:, None])


# ---------------------------------------------------------------------------


def frobenius_point(P: ProjPoint, q: int) -> ProjPoint:
    """Raise every coordinate to the q-th power and renormalise."""
    K = P.field
    return ProjPoint.make(K, tuple(K.pow(c, q) for c in P.coords))


def degree_of_point(P: ProjPoint, q: int) -> int:
    """Smallest i such that P is defined over F_{q^i}."""
    i = 1
    R = frobenius_point(P, q)
    while R != P:
        R = frobenius_point(R, q)
        i += 1
    return i


def in_subplane(P: ProjPoint, order: int) -> bool:
    """True if the normalised coordinates all lie in the subfield of given order."""
    K = P.field
    return all(K.pow(c, order) == c for c in P.coords)


class LambdaClass(enum.Enum):
    L1 = "Λ1"
    L2 = "Λ2"
    L3 = "Λ3"


def moore_det2(K: Field, q: int, v) -> int:
    """The Moore determinant det(v, v^q, v^{q^2}) at a coordinate vector."""
    from .matrix import det3

    a, b, c = v
    rows = [(t, K.pow(t, q), K.pow(t, q * q)) for t in (a, b, c)]
    return det3(K, tuple(rows))


def _check_cubic(K: Field, q: int):
    from .curve import split_q

    p, h = split_q(q)
    if K.p != p or K.m != 3 * h:
        raise FieldMismatch(f"{K!r} is not the cubic extension of F_{q}")


def classify_lambda(P: ProjPoint, q: int) -> LambdaClass:
    K = P.field
    _check_cubic(K, q)
    if in_subplane(P, q):
        return LambdaClass.L1
    if moore_det2(K, q, P.coords) == 0:
        return LambdaClass.L2
    return LambdaClass.L3


def classify_lambda_by_lines(P: ProjPoint, q: int) -> LambdaClass:
    """Oracle: Λ2 membership by testing all F_q-rational lines."""
    K = P.field
    _check_cubic(K, q)
    if in_subplane(P, q):
        return LambdaClass.L1
    for L in subplane_lines(q, K):
        if incident(P, L):
            return LambdaClass.L2
    return LambdaClass.L3


def subplane_lines(q: int, target: Field) -> list[ProjLine]:
    from .curve import split_q

    p, h = split_q(q)
    if target.p != p or target.m % h:
        raise FieldMismatch(f"F_{q} is not a subfield of {target!r}")
    base = build_field(p, h)
    e = embedding(base, target)
    return [ProjLine(target, tuple(e(c) for c in P.coords)) for P in enumerate_points(base)]


def classify_many(K: Field, q: int, pts: np.ndarray) -> np.ndarray:
    """Vectorised Λ-class (1, 2 or 3) of normalised points."""
    _check_cubic(K, q)
    pts = np.asarray(pts, dtype=np.int64)
    fixed = np.all(K.v_pow(pts, q) == pts, axis=1)
    a, b, c = pts[:, 0], pts[:, 1], pts[:, 2]
    aq, bq, cq = (K.v_pow(t, q) for t in (a, b, c))
    aQ, bQ, cQ = (K.v_pow(t, q * q) for t in (a, b, c))
    m, ad, ng = K.v_mul, K.v_add, K.v_neg
    t0 = m(a, ad(m(bq, cQ), ng(m(bQ, cq))))
    t1 = m(aq, ad(m(b, cQ), ng(m(bQ, c))))
    t2 = m(aQ, ad(m(b, cq), ng(m(bq, c))))
    det = ad(ad(t0, ng(t1)), t2)
    return np.where(fixed, 1, np.where(det == 0, 2, 3))


def lambda_sizes_formula(q: int) -> dict:
    return {
        "L1": q * q + q + 1,
        "L2": (q * q + q + 1) * (q**3 - q),
        "L3": q**6 - q**5 - q**4 + q**3,
    }


def parse_point(text: str, K: Field) -> ProjPoint:
    """Parse ``(a:b:c)`` with each coordinate in comma-separated coordinate syntax."""
    t = text.strip()
    if t.startswith("(") and t.endswith(")"):
        t = t[1:-1]
    parts = t.split(":")
    if len(parts) != 3:
        raise ValueError(f"bad point literal {text!r}")
    return ProjPoint.make(K, tuple(K.parse(s) for s in parts))
