"""Local invariants of the curve at a point: multiplicity, tangent, orders, vR, vS.

Everything is computed from the Taylor expansion of F in the affine chart
where the first nonzero coordinate of the point equals 1.  With (u, v) the
two remaining affine coordinates and P = (a, b) in them,

    F(a + U, b + V) = G_m(U, V) + G_{m+1}(U, V) + ...

where G_n is a binary form of degree n.  The multiplicity is m, and the
intersection number of the curve with the line through P in direction D is
the least n with G_n(D) != 0 (valid because every point of this curve is
the centre of a single branch, which the tangent-cone check asserts).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .checks import Report
from .curve import DGZCurve, build, split_q
from .errors import ClassificationMismatch, PointNotOnCurve, TangentConeNotPower
from .gf import LARGE_DEGREE, TABLE_LIMIT, Field, build_field
from .plane import ProjLine, ProjPoint, degree_of_point, frobenius_point, incident
from .tripoly import (
    UniPoly,
    binom_mod_p,
    evaluate,
    evaluate_coords,
    find_roots,
    lucas_support,
    partials,
    restrict_to_line,
)

# generic order sequence and Frobenius orders, from the non-classicality certificates
def epsilon(q: int) -> tuple[int, int, int]:
    return (0, 1, q)


def nu(q: int) -> tuple[int, int]:
    return (0, q)


@dataclass
class LocalData:
    point: ProjPoint
    multiplicity: int
    tangent: ProjLine
    j_sequence: tuple[int, int, int]
    vR: int
    vS: int
    point_class: str = ""
    vR_method: str = "rule"
    vS_method: str = "table"
    notes: list = field(default_factory=list)

    def to_dict(self):
        return {
            "point": str(self.point),
            "class": self.point_class,
            "multiplicity": self.multiplicity,
            "tangent": str(self.tangent),
            "j_sequence": list(self.j_sequence),
            "vR": self.vR,
            "vS": self.vS,
            "vR_method": self.vR_method,
            "vS_method": self.vS_method,
        }


# ---------------------------------------------------------------------------
# local expansion


def chart(P: ProjPoint) -> tuple[int, int, int]:
    """(k, i, j): k the dehomogenising coordinate, i and j the affine ones."""
    k = next(t for t in range(3) if P.coords[t])
    i, j = (t for t in range(3) if t != k)
    return k, i, j


def local_expansion(C: DGZCurve, P: ProjPoint, max_order: int | None = None) -> dict:
    """Coefficients {(s, r): c} of F(a + U, b + V) in P's chart, over P's field."""
    K = P.field
    g = C.F.over(K)
    k, i, j = chart(P)
    a, b = P.coords[i], P.coords[j]
    p = K.p
    pa: dict = {}
    pb: dict = {}

    def apow(n):
        if n not in pa:
            pa[n] = K.pow(a, n)
        return pa[n]

    def bpow(n):
        if n not in pb:
            pb[n] = K.pow(b, n)
        return pb[n]

    out: dict = {}
    for e, c in g.terms.items():
        ei, ej = e[i], e[j]
        for s, bs in lucas_support(ei, p):
            if max_order is not None and s > max_order:
                continue
            x = K.mul(c, K.mul(bs, apow(ei - s)))
            if not x:
                continue
            for r, br in lucas_support(ej, p):
                if max_order is not None and s + r > max_order:
                    continue
                y = K.mul(x, K.mul(br, bpow(ej - r)))
                if y:
                    out[(s, r)] = K.add(out.get((s, r), 0), y)
    return {key: v for key, v in out.items() if v}


def form_value(K: Field, coeffs: dict, n: int, d) -> int:
    """G_n evaluated at the direction d = (d1, d2)."""
    acc = 0
    for (s, r), c in coeffs.items():
        if s + r == n:
            acc = K.add(acc, K.mul(c, K.mul(K.pow(d[0], s), K.pow(d[1], r))))
    return acc


def multiplicity_from(coeffs: dict) -> int:
    if not coeffs:
        return -1  # F vanishes identically near P; impossible for this curve
    return min(s + r for s, r in coeffs)


def multiplicity_at(C: DGZCurve, P: ProjPoint) -> int:
    """Multiplicity of C at P; 0 when P is not on C."""
    if evaluate(C.F, P) != 0:
        return 0
    return multiplicity_from(local_expansion(C, P))


def direction_vector(P: ProjPoint, d) -> tuple[int, int, int]:
    """Projective vector for the chart direction d (zero in the chart coordinate)."""
    k, i, j = chart(P)
    v = [0, 0, 0]
    v[i], v[j] = d
    return tuple(v)


def _roots(K: Field, coeffs: list[int]) -> list[int]:
    f = UniPoly(K, coeffs)
    if K.has_tables and K.order <= 1 << 13:
        return f.roots()
    return find_roots(f)


def tangent_direction(C: DGZCurve, P: ProjPoint, coeffs: dict | None = None):
    """(multiplicity, tangent direction) at P, asserting the cone is a power of one line."""
    K = P.field
    if coeffs is None:
        coeffs = local_expansion(C, P, max_order=C.q)
    m = multiplicity_from(coeffs)
    if m <= 0:
        raise PointNotOnCurve(f"{P} is not on the curve")
    cone = {(s, r): c for (s, r), c in coeffs.items() if s + r == m}
    if m == 1:
        d = (cone.get((0, 1), 0), K.neg(cone.get((1, 0), 0)))
        return m, _normalise_dir(K, d)
    # directions (1:t) and (0:1)
    uni = [cone.get((m - r, r), 0) for r in range(m + 1)]
    dirs = [(1, t) for t in _roots(K, uni)]
    if cone.get((0, m), 0) == 0:
        dirs.append((0, 1))
    if len(dirs) != 1:
        raise TangentConeNotPower(f"tangent cone at {P} has {len(dirs)} rational directions")
    d = dirs[0]
    # compare with c * (d2 U - d1 V)^m
    l_u, l_v = d[1], K.neg(d[0])
    power = {}
    for s in range(m + 1):
        bc = binom_mod_p(m, s, K.p)
        if bc:
            val = K.mul(bc, K.mul(K.pow(l_u, s), K.pow(l_v, m - s)))
            if val:
                power[(s, m - s)] = val
    key = next(iter(power))
    c = K.div(cone.get(key, 0), power[key])
    if c == 0 or any(cone.get(k2, 0) != K.mul(c, v) for k2, v in power.items()) or len(cone) != len(power):
        raise TangentConeNotPower(f"tangent cone at {P} is not a power of a linear form")
    return m, d


def _normalise_dir(K, d):
    if d[0]:
        return (1, K.div(d[1], d[0]))
    return (0, 1)


def tangent_data(C: DGZCurve, P: ProjPoint) -> ProjLine:
    """Tangent line at a point of C (gradient line at nonsingular points)."""
    K = P.field
    m, d = tangent_direction(C, P)
    Q = direction_vector(P, d)
    from .plane import cross

    line = ProjLine.make(K, cross(K, P.coords, Q))
    if m == 1:
        grad = tuple(evaluate_coords(g.over(K), P.coords) for g in partials(C.F))
        gline = ProjLine.make(K, grad)
        if gline != line:
            raise TangentConeNotPower(f"gradient and tangent cone disagree at {P}")
    return line


def order_along(C: DGZCurve, P: ProjPoint, d, trunc: int | None = None) -> int:
    """Intersection number at P of C with the line through P in chart direction d."""
    R = ProjPoint(P.field, direction_vector(P, d))
    g = restrict_to_line(C.F, P, R, trunc=trunc)
    v = g.valuation()
    if v is None:
        if trunc is not None:
            return order_along(C, P, d, None)
        raise PointNotOnCurve("line is a component of the curve")
    return v


def directions(K: Field):
    yield (0, 1)
    for t in K.elements():
        yield (1, t)


def order_sequence_at(C: DGZCurve, P: ProjPoint, all_lines: bool = False):
    """(0, j1, j2): j1 over non-tangent lines, j2 along the tangent."""
    K = P.field
    if evaluate(C.F, P) != 0:
        raise PointNotOnCurve(f"{P} is not on the curve")
    m, d0 = tangent_direction(C, P)
    trunc = 2 * C.q + 2
    j2 = order_along(C, P, d0, trunc)
    j1 = None
    for d in directions(K):
        if d == d0:
            continue
        o = order_along(C, P, d, trunc)
        j1 = o if j1 is None else min(j1, o)
        if j1 == m and not all_lines:
            break
    return (0, j1, j2)


def other_line_orders(C: DGZCurve, P: ProjPoint) -> set:
    """The set of intersection numbers over all non-tangent lines through P."""
    m, d0 = tangent_direction(C, P)
    return {order_along(C, P, d, 2 * C.q + 2) for d in directions(P.field) if d != d0}


# ---------------------------------------------------------------------------
# vR and vS


def point_class(P: ProjPoint, q: int) -> str:
    i = degree_of_point(P, q)
    return {1: "Fq", 2: "Fq2", 3: "Fq3"}.get(i, "generic")


def table_values(cls: str, q: int) -> tuple[int, int]:
    vR = {"Fq2": q - 2, "Fq3": 1}.get(cls, 0)
    vS = 1 if cls == "Fq3" else 0
    return vR, vS


def binomial_det(j, eps, p) -> int:
    """det [C(j_i, eps_k)] mod p for the 3x3 case."""
    M = [[binom_mod_p(ji, ek, p) for ek in eps] for ji in j]
    a = M
    d = (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
         - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
         + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))
    return d % p


def branch_series(C: DGZCurve, P: ProjPoint, n_terms: int):
    """Power series of a nonsingular branch: (param index, a, [c_1..c_N]).

    Returns (which, a, cs) where ``which`` is 0 if the parameter is U (so
    V = sum c_k U^k) and 1 if the roles are swapped; None if P is singular.
    """
    K = P.field
    coeffs = local_expansion(C, P, max_order=n_terms)
    if multiplicity_from(coeffs) != 1:
        return None
    k, i, j = chart(P)
    c10, c01 = coeffs.get((1, 0), 0), coeffs.get((0, 1), 0)
    candidates = []
    if c01:
        candidates.append((0, P.coords[i], coeffs))
    if c10:
        swapped = {(r, s): c for (s, r), c in coeffs.items()}
        candidates.append((1, P.coords[j], swapped))
    # prefer a parameter coordinate outside F_q
    q = C.q
    candidates.sort(key=lambda t: K.pow(t[1], q) == t[1])
    which, a, co = candidates[0]
    lin = co[(0, 1)]
    inv = K.inv(K.neg(lin))
    ys = [0] * (n_terms + 1)  # ys[k] coefficient of t^k, ys[0] = 0
    for kk in range(1, n_terms + 1):
        res = _series_coeff(K, co, ys, kk)
        ys[kk] = K.mul(res, inv)
    return which, a, ys


def _series_coeff(K, co, ys, k):
    """[t^k] of G(t, Y(t)) with the current partial series (y_k still zero)."""
    # powers of Y truncated at degree k
    maxr = max(r for _, r in co)
    ypow = [[1] + [0] * k]
    for _ in range(maxr):
        prev = ypow[-1]
        nxt = [0] * (k + 1)
        for a_, x in enumerate(prev):
            if x:
                for b_, y in enumerate(ys[: k + 1]):
                    if y and a_ + b_ <= k:
                        nxt[a_ + b_] = K.add(nxt[a_ + b_], K.mul(x, y))
        ypow.append(nxt)
    acc = 0
    for (s, r), c in co.items():
        if s <= k:
            acc = K.add(acc, K.mul(c, ypow[r][k - s]))
    return acc


def wronskian_orders(C: DGZCurve, P: ProjPoint):
    """Direct (vR, vS) at a nonsingular point from the branch series, or None.

    With t = u - a a local parameter and v = sum c_k t^k, the Wronskian for
    the orders (0, 1, q) is D^(q) v and the Frobenius one is
    (u - u^q) D^(q) v, D^(q) the q-th Hasse derivative.
    """
    q = C.q
    K = P.field
    N = 2 * q + 2
    s = branch_series(C, P, N)
    if s is None:
        return None
    which, a, ys = s
    p = K.p
    w = None
    for k in range(q, N + 1):
        if binom_mod_p(k, q, p) and ys[k]:
            w = k - q
            break
    if w is None:
        return None
    extra = 0 if K.pow(a, q) != a else 1
    return w, w + extra


def vR_vS_at(C: DGZCurve, P: ProjPoint, check: bool = True) -> LocalData:
    q = C.q
    K = P.field
    m, d0 = tangent_direction(C, P)
    j = order_sequence_at(C, P)
    cls = point_class(P, q)
    eps = epsilon(q)
    tangent = tangent_data(C, P)
    data = LocalData(P, m, tangent, j, -1, -1, cls)
    if binomial_det(j, eps, K.p):
        data.vR = sum(a - b for a, b in zip(j, eps))
        data.vR_method = "rule"
    direct = wronskian_orders(C, P) if m == 1 else None
    if direct is not None:
        if data.vR < 0:
            data.vR = direct[0]
            data.vR_method = "wronskian"
        elif direct[0] != data.vR:
            data.notes.append(f"wronskian vR {direct[0]} differs from rule {data.vR}")
        data.vS = direct[1]
        data.vS_method = "wronskian"
    else:
        data.vS = table_values(cls, q)[1]
        data.vS_method = "table"
    if check:
        exp = table_values(cls, q)
        if (data.vR, data.vS) != exp or data.notes:
            raise ClassificationMismatch(
                f"{P}: computed (vR, vS) = ({data.vR}, {data.vS}), table {exp}; {data.notes}"
            )
    return data


def frobenius_tangency(C: DGZCurve, P: ProjPoint) -> bool:
    """The tangent at a nonsingular P passes through the Frobenius image of P."""
    return incident(frobenius_point(P, C.q), tangent_data(C, P))


# ---------------------------------------------------------------------------
# sampling and sweeps


def sample_generic_points(C: DGZCurve, i: int, n: int = 30, seed: int = 0) -> list[ProjPoint]:
    """n points of C defined over F_{q^i} but no smaller extension.

    Each is found by restricting F to a random line and solving.
    """
    K = build_field(C.p, C.h * i, LARGE_DEGREE)
    rng = random.Random(f"{seed}-{C.q}-{i}")
    found: dict = {}
    guard = 0
    while len(found) < n:
        guard += 1
        if guard > 200 * n:
            raise RuntimeError("could not sample enough points")
        v0 = tuple(rng.randrange(K.order) for _ in range(3))
        v1 = tuple(rng.randrange(K.order) for _ in range(3))
        if not any(v0) or not any(v1):
            continue
        P0 = ProjPoint.make(K, v0)
        P1 = ProjPoint.make(K, v1)
        if P0 == P1:
            continue
        g = restrict_to_line(C.F, P0, P1)
        if g.is_zero():
            continue
        for t in find_roots(g, seed=guard):
            w = tuple(K.add(a, K.mul(t, b)) for a, b in zip(P0.coords, P1.coords))
            if not any(w):
                continue
            R = ProjPoint.make(K, w)
            if R not in found and degree_of_point(R, C.q) == i:
                found[R] = None
                if len(found) == n:
                    break
    return list(found)


def generic_extension(C: DGZCurve, start: int = 4, probe_lines: int = 60, seed: int = 0):
    """Smallest i >= start for which random lines over F_{q^i} hit a point of exact degree i.

    Only fields with log tables are probed.  Returns None if no field up to
    degree LARGE_DEGREE over F_p qualifies.
    """
    i = start
    while C.h * i <= LARGE_DEGREE:
        if C.p ** (C.h * i) <= TABLE_LIMIT:
            K = build_field(C.p, C.h * i, LARGE_DEGREE)
            rng = random.Random(f"probe-{seed}-{C.q}-{i}")
            for _ in range(probe_lines):
                v0 = tuple(rng.randrange(K.order) for _ in range(3))
                v1 = tuple(rng.randrange(K.order) for _ in range(3))
                if not any(v0) or not any(v1):
                    continue
                P0, P1 = ProjPoint.make(K, v0), ProjPoint.make(K, v1)
                if P0 == P1:
                    continue
                g = restrict_to_line(C.F, P0, P1)
                if g.is_zero():
                    continue
                for t in find_roots(g):
                    w = tuple(K.add(a, K.mul(t, b)) for a, b in zip(P0.coords, P1.coords))
                    if any(w) and degree_of_point(ProjPoint.make(K, w), C.q) == i:
                        return i
        i += 1
    return None


def singular_locus_check(q: int, all_lines: bool = True) -> Report:
    """Singular points are exactly PG(2,F_{q^2}) minus PG(2,F_q), with the expected local data."""
    from .group import omega_points
    from .plane import point_array
    from .tripoly import evaluate_many

    C = build(q)
    p, h = split_q(q)
    K2 = build_field(p, 2 * h)
    pts = point_array(K2)
    vals = evaluate_many(C.F, K2, pts)
    on = [ProjPoint(K2, tuple(int(c) for c in v)) for v in pts[vals == 0]]
    omega = set(omega_points(q))
    r = Report(f"singular locus q={q}")
    mults = {P: multiplicity_from(local_expansion(C, P, max_order=q)) for P in on}
    singular = {P for P, m in mults.items() if m >= 2}
    if q == 2:
        r.add("no singular points", not singular, f"{len(singular)} singular")
    else:
        r.add("singular set = PG(2,F_{q²}) ∖ PG(2,F_q)", singular == omega,
              f"{len(singular)} singular, |Ω| = {len(omega)}")
    r.add("multiplicity q−1 on Ω", all(mults.get(P) == q - 1 for P in omega))
    bad_cone = bad_tan = bad_other = 0
    for P in sorted(omega, key=lambda P: P.coords):
        try:
            m, d0 = tangent_direction(C, P)
        except TangentConeNotPower:
            bad_cone += 1
            continue
        if order_along(C, P, d0, 2 * q + 2) != q:
            bad_tan += 1
        if all_lines:
            if other_line_orders(C, P) != {q - 1}:
                bad_other += 1
    r.add("tangent cone is a (q−1)-th power of one line", bad_cone == 0, f"{bad_cone} failures")
    r.add("tangent intersection number q", bad_tan == 0, f"{bad_tan} failures")
    if all_lines:
        r.add("every other line meets with multiplicity q−1", bad_other == 0, f"{bad_other} failures")
    return r


@dataclass
class ClassSweep:
    q: int
    counts: dict
    sequences: dict
    vR_sum: int
    vS_sum: int
    vS_methods: dict
    frobenius_failures: int
    generic_points: list
    generic_exts: tuple = ()

    def to_dict(self):
        return {
            "q": self.q,
            "counts": self.counts,
            "sequences": {k: sorted(map(list, v)) for k, v in self.sequences.items()},
            "vR_sum": self.vR_sum,
            "vS_sum": self.vS_sum,
            "vS_methods": self.vS_methods,
            "frobenius_failures": self.frobenius_failures,
            "generic_exts": list(self.generic_exts),
        }


def class_sweep(q: int, samples: int = 30, seed: int = 0, exts=None) -> ClassSweep:
    """Local data at every point of C(F_{q^2}) and C(F_{q^3}) plus sampled generic points.

    Generic points are drawn from the extensions ``exts``; by default from
    the first extension of degree >= 4 that contains any.
    """
    from .group import lambda3_points, omega_points

    C = build(q)
    groups = {"Fq2": omega_points(q), "Fq3": lambda3_points(q)}
    if exts is None:
        i = generic_extension(C, seed=seed)
        exts = () if i is None else (i,)
    generic = []
    for i in exts:
        generic += sample_generic_points(C, i, samples, seed)
    groups["generic"] = generic
    counts, seqs, methods = {}, {}, {}
    vR_sum = vS_sum = 0
    frob_fail = 0
    for cls, pts in groups.items():
        counts[cls] = len(pts)
        seqs[cls] = set()
        for P in pts:
            d = vR_vS_at(C, P)
            seqs[cls].add(d.j_sequence)
            vR_sum += d.vR
            vS_sum += d.vS
            methods[d.vS_method] = methods.get(d.vS_method, 0) + 1
            if d.multiplicity == 1 and not incident(frobenius_point(P, q), d.tangent):
                frob_fail += 1
    return ClassSweep(q, counts, seqs, vR_sum, vS_sum, methods, frob_fail, generic, tuple(exts))


# ---------------------------------------------------------------------------
# pure arithmetic


def genus_formula(q: int) -> int:
    return q * (q - 1) * (q**3 - 2 * q - 2) // 2 + 1


def quotient_genus_formula(q: int) -> int:
    return (q - 1) * (q * q - 2 * q - 2) // 2 + 1


def semigroup_gaps(a: int, b: int) -> list[int]:
    """Gaps of the numerical semigroup generated by coprime a, b."""
    if a == 1 or b == 1:
        return []
    bound = (a - 1) * (b - 1)
    reach = [False] * (bound + 1)
    reach[0] = True
    for n in range(1, bound + 1):
        reach[n] = (n >= a and reach[n - a]) or (n >= b and reach[n - b])
    return [n for n in range(bound) if not reach[n]]


def genus_check(q: int) -> Report:
    g = genus_formula(q)
    d = q**3 - q**2
    delta = len(semigroup_gaps(q - 1, q))
    plucker = (d - 1) * (d - 2) // 2 - (q**4 - q) * delta
    r = Report(f"genus q={q}")
    r.add("δ = (q−1)(q−2)/2", delta == (q - 1) * (q - 2) // 2, f"δ={delta}")
    r.add("g = (d−1)(d−2)/2 − (q⁴−q)δ", g == plucker, f"g={g}, plücker={plucker}")
    gY = quotient_genus_formula(q)
    hurwitz = q * q * (2 * gY - 2) + 2 * (q * q - 1) * (q * q - q)
    r.add("Hurwitz for C → C/T", 2 * g - 2 == hurwitz, f"2g−2={2 * g - 2}, rhs={hurwitz}")
    r.add("different sum over C(F_{q²}) ∩ ℓ∞",
          (q * q - q) * 2 * (q * q - 1) == 2 * (q * q - 1) * (q * q - q))
    return r


def deg_R(q: int) -> int:
    return q * (q - 1) * (q**4 + q**3 - 2 * q**2 - q - 2)


def deg_S(q: int) -> int:
    return q**6 - q**5 - q**4 + q**3


def divisor_degree_check(q: int) -> Report:
    g = genus_formula(q)
    d = q**3 - q**2
    r = Report(f"divisor degrees q={q}")
    from_genus_R = (q + 1) * (2 * g - 2) + 3 * d
    class_R = (q - 2) * (q**4 - q) + deg_S(q)
    r.add("deg R from genus = closed form", from_genus_R == deg_R(q), f"{from_genus_R} vs {deg_R(q)}")
    r.add("class sum of vR = deg R", class_R == deg_R(q), f"{class_R}")
    from_genus_S = q * (2 * g - 2) + (q + 2) * d
    r.add("deg S from genus = q⁶−q⁵−q⁴+q³", from_genus_S == deg_S(q), f"{from_genus_S}")
    r.add("class sum of vS = deg S", 1 * deg_S(q) == from_genus_S)
    return r
