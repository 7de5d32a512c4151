"""Projective plane enumeration, incidence and the Λ partition of PG(2, F_{q^3})."""
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dgz.curve import build
from dgz.errors import FieldMismatch, FieldTooLarge
from dgz.gf import build_field
from dgz.plane import (
    LambdaClass,
    ProjLine,
    ProjPoint,
    classify_lambda,
    classify_lambda_by_lines,
    classify_many,
    cross,
    degree_of_point,
    enumerate_lines,
    enumerate_points,
    frobenius_point,
    incident,
    index_array,
    join,
    normalize_many,
    parse_point,
    point_array,
    subplane_lines,
)
from dgz.tripoly import TriPoly, poly_mul


@pytest.mark.parametrize("p,m,n", [(2, 1, 7), (2, 3, 73), (3, 3, 757), (3, 1, 13)])
def test_point_counts(p, m, n):
    K = build_field(p, m)
    pts = list(enumerate_points(K))
    assert len(pts) == n == len(set(pts))
    assert len(point_array(K)) == n


def test_enumeration_limit():
    with pytest.raises(FieldTooLarge):
        next(enumerate_points(build_field(2, 11)))
    with pytest.raises(FieldTooLarge):
        point_array(build_field(2, 6), limit=32)
    assert len(point_array(build_field(2, 6))) == 64 * 64 + 64 + 1


def test_fano_incidence():
    K = build_field(2, 1)
    pts, lines = list(enumerate_points(K)), list(enumerate_lines(K))
    assert all(sum(incident(P, L) for P in pts) == 3 for L in lines)
    assert all(sum(incident(P, L) for L in lines) == 3 for P in pts)


@given(st.data())
def test_join_contains_both_points(data):
    K = build_field(*data.draw(st.sampled_from([(2, 2), (3, 2), (5, 1)])))
    el = st.integers(0, K.order - 1)
    v = tuple(data.draw(el) for _ in range(3))
    w = tuple(data.draw(el) for _ in range(3))
    if not any(v) or not any(w):
        return
    P, R = ProjPoint.make(K, v), ProjPoint.make(K, w)
    if P == R:
        return
    L = join(P, R)
    assert incident(P, L) and incident(R, L)


def test_index_and_normalize():
    K = build_field(3, 2)
    pts = point_array(K)
    assert index_array(K, pts).tolist() == list(range(len(pts)))
    scaled = K.v_mul(pts, np.full((len(pts), 1), 5))
    assert np.array_equal(normalize_many(K, scaled), pts)


def test_frobenius_point():
    K = build_field(2, 2)
    w = K.from_coords([0, 1])
    assert frobenius_point(ProjPoint(K, (1, w, 0)), 2) == ProjPoint(K, (1, K.add(w, 1), 0))
    assert frobenius_point(ProjPoint(K, (1, 1, 0)), 2) == ProjPoint(K, (1, 1, 0))
    K8 = build_field(2, 3)
    for P in enumerate_points(K8):
        assert frobenius_point(frobenius_point(frobenius_point(P, 2), 2), 2) == P
        assert degree_of_point(P, 2) in (1, 3)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_lambda_classes_agree_with_line_oracle(q):
    from dgz.curve import split_q

    p, h = split_q(q)
    K = build_field(p, 3 * h)
    pts = point_array(K)
    cls = classify_many(K, q, pts)
    step = 1 if q < 4 else 7
    for k in range(0, len(pts), step):
        P = ProjPoint(K, tuple(int(c) for c in pts[k]))
        a = classify_lambda(P, q)
        assert a == classify_lambda_by_lines(P, q)
        assert int(a.name[1]) == cls[k]


def test_lambda_sizes_q2():
    K = build_field(2, 3)
    counts = {c: 0 for c in LambdaClass}
    for P in enumerate_points(K):
        counts[classify_lambda(P, 2)] += 1
    assert counts == {LambdaClass.L1: 7, LambdaClass.L2: 42, LambdaClass.L3: 24}


def test_classify_needs_cubic_extension():
    with pytest.raises(FieldMismatch):
        classify_lambda(ProjPoint(build_field(2, 2), (1, 0, 0)), 2)


def test_subplane_lines():
    K = build_field(2, 3)
    lines = subplane_lines(2, K)
    assert len(lines) == 7
    l3 = [P for P in enumerate_points(K) if classify_lambda(P, 2) == LambdaClass.L3]
    assert all(not incident(P, L) for P in l3 for L in lines)
    # product of the seven F_2-linear forms is D2 up to a scalar
    F2 = build_field(2, 1)
    prod = TriPoly.constant(F2, 1)
    for L in subplane_lines(2, F2):
        prod = poly_mul(prod, TriPoly.linear(F2, L.coords))
    assert prod == build(2).D2


def test_cross_is_orthogonal():
    K = build_field(3, 2)
    u, v = (1, 2, 3), (4, 0, 7)
    w = cross(K, u, v)
    dot = lambda a, b: K.add(K.add(K.mul(a[0], b[0]), K.mul(a[1], b[1])), K.mul(a[2], b[2]))
    assert dot(w, u) == 0 and dot(w, v) == 0


def test_parse_point():
    K = build_field(2, 2)
    assert parse_point("(1:0,1:0)", K) == ProjPoint(K, (1, K.from_coords([0, 1]), 0))
    assert parse_point("(0,1:0:0)", K) == ProjPoint(K, (1, 0, 0))
    with pytest.raises(ValueError):
        parse_point("(1:0)", K)


def test_point_embedding():
    F4, F16 = build_field(2, 2), build_field(2, 4)
    P = ProjPoint(F4, (1, 2, 3))
    Q = P.to(F16)
    assert Q.field == F16 and degree_of_point(Q, 2) == 2
