"""Finite field construction, arithmetic and embeddings."""
import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dgz.errors import DegreeTooLarge, FieldMismatch, FieldTooLarge, NonDivisor, NonPrime
from dgz.gf import (
    Field,
    FieldElem,
    build_field,
    embed,
    embedding,
    frobenius,
    in_subfield,
    is_irreducible,
    prime_power,
)

SMALL = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (2, 6), (3, 3)]


# reference arithmetic on coefficient lists, kept deliberately naive
def ref_mul(a, b, mod, p):
    m = len(mod) - 1
    prod = [0] * (2 * m)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, m - 1, -1):
        c = prod[k]
        if c:
            for t in range(m + 1):
                prod[k - m + t] = (prod[k - m + t] - c * mod[t]) % p
    return prod[:m]


def brute_irreducible(poly, p):
    """No roots and no monic factor of degree <= deg/2, by trial division."""
    n = len(poly) - 1
    for d in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            g = list(low) + [1]
            r = list(poly)
            for k in range(n - d, -1, -1):
                c = r[k + d]
                for t in range(d + 1):
                    r[k + t] = (r[k + t] - c * g[t]) % p
            if not any(r[:d]):
                return False
    return True


def test_defining_polynomials():
    assert build_field(2, 2).modulus == (1, 1, 1)  # t^2+t+1
    assert build_field(3, 2).modulus == (1, 0, 1)  # t^2+1
    assert build_field(2, 1).modulus == (0, 1)  # placeholder t


def test_modulus_is_first_irreducible_in_scan_order():
    for p, m in [(2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (2, 6)]:
        K = build_field(p, m)
        for low in itertools.product(range(p), repeat=m):
            poly = low + (1,)
            if brute_irreducible(poly, p):
                assert K.modulus == poly
                break


def test_rabin_matches_trial_division():
    for p, n in [(2, 4), (2, 5), (3, 3), (5, 2)]:
        for low in itertools.product(range(p), repeat=n):
            poly = low + (1,)
            assert is_irreducible(poly, p) == brute_irreducible(poly, p), poly


def test_bad_parameters():
    with pytest.raises(NonPrime):
        build_field(6, 1)
    with pytest.raises(DegreeTooLarge):
        build_field(2, 13)
    assert build_field(2, 14, 16).order == 1 << 14


def test_prime_power():
    assert prime_power(9) == (3, 2)
    assert prime_power(8) == (2, 3)
    assert prime_power(6) is None
    assert prime_power(1) is None


@pytest.mark.parametrize("p,m", SMALL)
def test_multiplication_against_reference(p, m):
    K = build_field(p, m)
    for a in range(K.order):
        for b in range(0, K.order, max(1, K.order // 17)):
            ref = ref_mul(list(K.coords(a)), list(K.coords(b)), K.modulus, p) if m > 1 else [a * b % p]
            assert K.coords(K.mul(a, b)) == tuple(ref)


@pytest.mark.parametrize("p,m", SMALL)
def test_field_axioms(p, m):
    K = build_field(p, m)
    for a in range(1, K.order):
        assert K.mul(a, K.inv(a)) == 1
        assert K.add(a, K.neg(a)) == 0
        assert K.pow(a, K.order - 1) == 1


def test_slow_path_agrees_with_tables():
    K = build_field(3, 3)
    for a in range(K.order):
        for b in range(K.order):
            assert K._mul_slow(a, b) == K.mul(a, b)
            assert K._add_slow(a, b) == K.add(a, b)
        if a:
            assert K._inv_slow(a) == K.inv(a)


def test_large_field_without_tables():
    K = build_field(3, 11)
    assert not K.has_tables
    a, b = 12345, 99999
    assert K.mul(K.mul(a, b), K.inv(b)) == a
    assert K.pow(a, K.order - 1) == 1
    with pytest.raises(FieldTooLarge):
        K.v_mul(np.array([1]), np.array([2]))


def test_frobenius_examples():
    K = build_field(2, 2)
    w = K.from_coords([0, 1])
    assert K.frobenius(w, 1) == K.mul(w, w) == K.from_coords([1, 1])
    assert [a for a in K.elements() if K.frobenius(a, 1) == a] == [0, 1]
    for p, m in SMALL:
        F = build_field(p, m)
        assert all(F.frobenius(1, k) == 1 for k in range(4))


def test_frobenius_wrapper():
    K = build_field(3, 2)
    a = FieldElem(K, 5)
    assert frobenius(a, 2) == a
    assert frobenius(a, 1) == a**3


def test_in_subfield_counts():
    K = build_field(2, 6)
    assert in_subfield(FieldElem(K, 1), 1)
    assert sum(K.in_subfield(a, 2) for a in K.elements()) == 4
    assert sum(K.in_subfield(a, 3) for a in K.elements()) == 8
    assert sum(K.in_subfield(a, 1) for a in K.elements()) == 2
    with pytest.raises(NonDivisor):
        K.in_subfield(3, 4)


def test_embedding_first_root():
    F4, F64 = build_field(2, 2), build_field(2, 6)
    e = embedding(F4, F64)
    w = F4.from_coords([0, 1])
    roots = [a for a in F64.elements() if F64.add(F64.add(F64.mul(a, a), a), 1) == 0]
    assert e(w) == roots[0]
    assert e(0) == 0 and e(1) == 1
    assert embed(FieldElem(F4, w) * FieldElem(F4, w), e) == embed(FieldElem(F4, w), e) ** 2


def test_embedding_mismatch():
    with pytest.raises(FieldMismatch):
        embedding(build_field(2, 2), build_field(2, 3))
    with pytest.raises(FieldMismatch):
        embedding(build_field(2, 2), build_field(3, 2))


@given(st.sampled_from([(2, 2, 6), (3, 1, 3), (2, 3, 6), (3, 2, 4), (5, 1, 2)]), st.data())
def test_embedding_is_homomorphism(case, data):
    p, a, b = case
    S, T = build_field(p, a), build_field(p, b)
    e = embedding(S, T)
    x = data.draw(st.integers(0, S.order - 1))
    y = data.draw(st.integers(0, S.order - 1))
    assert e(S.add(x, y)) == T.add(e(x), e(y))
    assert e(S.mul(x, y)) == T.mul(e(x), e(y))
    assert T.in_subfield(e(x), a)


@given(st.sampled_from(SMALL), st.data())
def test_vectorised_ops_match_scalar(pm, data):
    K = build_field(*pm)
    xs = np.array(data.draw(st.lists(st.integers(0, K.order - 1), min_size=1, max_size=20)))
    ys = np.array(data.draw(st.lists(st.integers(0, K.order - 1), min_size=len(xs), max_size=len(xs))))
    assert K.v_mul(xs, ys).tolist() == [K.mul(int(a), int(b)) for a, b in zip(xs, ys)]
    assert K.v_add(xs, ys).tolist() == [K.add(int(a), int(b)) for a, b in zip(xs, ys)]
    assert K.v_neg(xs).tolist() == [K.neg(int(a)) for a in xs]
    assert K.v_pow(xs, 5).tolist() == [K.pow(int(a), 5) for a in xs]


def test_parse_and_format():
    K = build_field(3, 2)
    for a in K.elements():
        assert K.parse(K.format(a)) == a
    assert K.parse("1") == 1
    with pytest.raises(ValueError):
        K.parse("3")
    with pytest.raises(ValueError):
        K.parse("1,1,1")
