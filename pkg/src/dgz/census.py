"""Exhaustive point counts, the Λ3 identity and the arc sweep in PG(2, F_{q^3})."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .checks import Report
from .curve import DGZCurve, build, split_q
from .errors import ScaleExceeded
from .gf import build_field
from .plane import (
    classify_many,
    index_array,
    lambda_sizes_formula,
    normalize_many,
    plane_size,
    point_array,
    subplane_lines,
)
from .tripoly import TriPoly, evaluate_many

CENSUS_LIMIT = 10**7
ARC_MAX_Q = 4
CHUNK = 1 << 18


def expected_count(q: int, i: int):
    return {1: 0, 2: q**4 - q, 3: q**6 - q**5 - q**4 + q**3}.get(i)


def _count_rows(F: TriPoly, p: int, m: int, b_lo: int, b_hi: int) -> int:
    """Zeros of F among the points (1:b:c) with b_lo <= b < b_hi."""
    K = build_field(p, m, 16)
    n = K.order
    cs = np.arange(n, dtype=np.int64)
    total = 0
    rows = max(1, CHUNK // n)
    for b0 in range(b_lo, b_hi, rows):
        b1 = min(b_hi, b0 + rows)
        bs = np.repeat(np.arange(b0, b1, dtype=np.int64), n)
        pts = np.stack([np.ones_like(bs), bs, np.tile(cs, b1 - b0)], axis=1)
        total += int(np.count_nonzero(evaluate_many(F, K, pts) == 0))
    return total


def count_points(C: DGZCurve, i: int, jobs: int = 1) -> int:
    """|C(F_{q^i})| by evaluating F at every point of PG(2, F_{q^i})."""
    s = C.q**i
    if plane_size(s) > CENSUS_LIMIT:
        raise ScaleExceeded(f"PG(2,{s}) has {plane_size(s)} points, limit {CENSUS_LIMIT}")
    m = C.h * i
    K = build_field(C.p, m, 16)
    n = K.order
    if jobs > 1 and n > 64:
        step = -(-n // jobs)
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            futs = [ex.submit(_count_rows, C.F, C.p, m, lo, min(n, lo + step)) for lo in range(0, n, step)]
            total = sum(f.result() for f in futs)
    else:
        total = _count_rows(C.F, C.p, m, 0, n)
    cs = np.arange(n, dtype=np.int64)
    rest = np.concatenate(
        [np.stack([np.zeros(n, dtype=np.int64), np.ones(n, dtype=np.int64), cs], axis=1),
         np.array([[0, 0, 1]], dtype=np.int64)]
    )
    total += int(np.count_nonzero(evaluate_many(C.F, K, rest) == 0))
    return total


@dataclass
class CensusReport:
    q: int
    counts: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)
    lambda_sizes: dict = field(default_factory=dict)
    report: Report | None = None

    @property
    def passed(self) -> bool:
        return self.report is None or self.report.passed

    def to_dict(self):
        return {
            "q": self.q,
            "counts": {str(k): v for k, v in self.counts.items()},
            "expected": {str(k): ("no-formula" if v is None else v) for k, v in self.expected.items()},
            "lambda_sizes": self.lambda_sizes,
            "passed": self.passed,
        }


def census(q: int, exts=(1, 2, 3), jobs: int = 1) -> CensusReport:
    C = build(q)
    rep = CensusReport(q, report=Report(f"census q={q}"))
    for i in exts:
        n = count_points(C, i, jobs)
        rep.counts[i] = n
        exp = expected_count(q, i)
        rep.expected[i] = exp
        if exp is not None:
            rep.report.add(f"N_{i} = {exp}", n == exp, f"counted {n}")
    return rep


def verify_lambda3(q: int) -> Report:
    """C(F_{q^3}) equals Λ3, with Λ2 cross-checked against the F_q-line cover."""
    C = build(q)
    p, h = split_q(q)
    K = build_field(p, 3 * h)
    pts = point_array(K)
    on = evaluate_many(C.F, K, pts) == 0
    cls = classify_many(K, q, pts)
    covered = np.zeros(len(pts), dtype=bool)
    for L in subplane_lines(q, K):
        u = np.array(L.coords, dtype=np.int64)
        dot = K.v_sum(K.v_mul(pts, u[None, :]), axis=1)
        covered |= dot == 0
    sizes = {f"L{c}": int(np.count_nonzero(cls == c)) for c in (1, 2, 3)}
    exp = lambda_sizes_formula(q)
    r = Report(f"Λ3 q={q}")
    r.add("Λ sizes", sizes == exp, f"{sizes}")
    r.add("Λ1 ∪ Λ2 = union of F_q-lines", bool(np.array_equal(covered, cls <= 2)))
    r.add("C(F_{q³}) = Λ3", bool(np.array_equal(on, cls == 3)), f"|C(F_q³)| = {int(on.sum())}")
    return r


# ---------------------------------------------------------------------------
# arc


@dataclass
class ArcReport:
    q: int
    k: int
    n: int
    histogram: dict
    complete: bool
    report: Report

    @property
    def passed(self) -> bool:
        return self.report.passed

    def to_dict(self):
        return {
            "q": self.q,
            "k": self.k,
            "n": self.n,
            "histogram": {str(a): b for a, b in sorted(self.histogram.items())},
            "complete": self.complete,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.report.checks],
        }


def line_points(K, lines: np.ndarray) -> np.ndarray:
    """(N, s+1, 3) array of the normalised points on each normalised line."""
    u, v, w = lines[:, 0], lines[:, 1], lines[:, 2]
    zero = np.zeros_like(u)
    ng = K.v_neg
    # two independent points on each line, read off from cross products with the unit vectors
    A = np.where((u != 0)[:, None], np.stack([v, ng(u), zero], 1),
                 np.where((v != 0)[:, None], np.stack([zero, w, ng(v)], 1), np.stack([zero, np.ones_like(u), zero], 1)))
    B = np.where((u != 0)[:, None], np.stack([ng(w), zero, u], 1),
                 np.where((v != 0)[:, None], np.stack([np.ones_like(u), zero, zero], 1),
                          np.stack([np.ones_like(u), zero, zero], 1)))
    ts = np.arange(K.order, dtype=np.int64)
    pts = K.v_add(A[:, None, :], K.v_mul(ts[None, :, None], B[:, None, :]))
    pts = np.concatenate([pts, B[:, None, :]], axis=1)
    N, S, _ = pts.shape
    flat = normalize_many(K, pts.reshape(N * S, 3))
    return flat.reshape(N, S, 3)


def verify_arc(q: int) -> ArcReport:
    if q > ARC_MAX_Q:
        raise ScaleExceeded(f"arc sweep capped at q ≤ {ARC_MAX_Q}")
    C = build(q)
    p, h = split_q(q)
    K = build_field(p, 3 * h)
    s = K.order
    pts = point_array(K)
    arc = evaluate_many(C.F, K, pts) == 0
    cls = classify_many(K, q, pts)
    lines = point_array(K)  # dual coordinates share the normalisation
    lp = line_points(K, lines)
    idx = index_array(K, lp.reshape(-1, 3)).reshape(lp.shape[0], lp.shape[1])
    counts = arc[idx].sum(axis=1)
    sub_counts = (cls[idx] == 1).sum(axis=1)
    k = int(arc.sum())
    n_exp = q**3 - q**2
    hist: dict = {}
    for c in counts.tolist():
        hist[c] = hist.get(c, 0) + 1
    n = int(counts.max())
    r = Report(f"arc q={q}")
    r.add("every line has s+1 distinct points",
          all(len(set(row)) == s + 1 for row in idx[: min(len(idx), 50)].tolist()))
    r.add("k = q⁶−q⁵−q⁴+q³", k == q**6 - q**5 - q**4 + q**3, f"k={k}")
    r.add("max line intersection = q³−q²", n == n_exp, f"n={n}")
    fq_lines = sub_counts == q + 1
    r.add("F_q-lines miss the arc", bool(np.all(counts[fq_lines] == 0)), f"{int(fq_lines.sum())} F_q-lines")
    one = sub_counts == 1
    r.add("lines through one F_q-point meet the arc in q³−q² points",
          bool(np.all(counts[one] == n_exp)), f"{int(one.sum())} such lines")
    r.add("Σ|ℓ∩K| = k(s+1)", int(counts.sum()) == k * (s + 1))
    covered = np.zeros(len(pts), dtype=bool)
    covered[np.unique(idx[counts == n_exp])] = True
    complete = bool(np.all(covered[~arc]))
    r.add("complete: every exterior point is on an n-secant", complete,
          f"{int(np.count_nonzero(~covered & ~arc))} uncovered")
    return ArcReport(q, k, n, hist, complete, r)
