"""Construction of F = D1/D2 and its invariance and non-classicality identities."""
import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dgz.curve import (
    build,
    gl_generators,
    moore_minor,
    random_gl,
    split_q,
    verify_d2_lines,
    verify_frobenius_nc,
    verify_invariance,
    verify_invariance_suite,
    verify_nonclassical,
)
from dgz.errors import InvalidQ
from dgz.gf import build_field
from dgz.tripoly import TriPoly, substitute_linear

QUARTIC = "x^4 + x^2*y^2 + x^2*y*z + x^2*z^2 + x*y^2*z + x*y*z^2 + y^4 + y^2*z^2 + z^4"


def leibniz_det(K, A):
    """Independent determinant: sum over permutations with signs."""
    total = 0
    for perm in itertools.permutations(range(3)):
        inv = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
        term = 1
        for i in range(3):
            term = K.mul(term, A[i][perm[i]])
        total = K.add(total, term if inv % 2 == 0 else K.neg(term))
    return total


def test_moore_minor_shapes():
    D2 = moore_minor(2, 2)
    assert D2.degree() == 7 and len(D2) == 6 and D2.is_homogeneous()
    assert moore_minor(2, 3).degree() == 11
    assert moore_minor(3, 2).degree() == 13


def test_q2_quartic():
    assert str(build(2).F) == QUARTIC


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_degree_and_homogeneity(q):
    C = build(q)
    assert C.F.degree() == q**3 - q**2 and C.F.is_homogeneous()
    assert C.F.coefficients_in_prime_field()


@pytest.mark.parametrize("q", [6, 10, 1, 0, 12])
def test_invalid_q(q):
    with pytest.raises(InvalidQ):
        split_q(q)


def test_invariance_examples():
    C = build(2)
    assert verify_invariance(C, ((1, 0, 0), (0, 1, 0), (0, 0, 1))).passed
    for A in gl_generators(2):
        assert verify_invariance(C, A).passed


def test_invariance_random_q3_with_independent_det():
    C = build(3)
    K = C.field
    rng = random.Random(11)
    for _ in range(20):
        A = random_gl(3, rng)
        det = leibniz_det(K, A)
        assert det != 0
        assert substitute_linear(C.D1, A) == C.D1.scale(det)
        assert substitute_linear(C.F, A) == C.F


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_invariance_suite(q):
    assert verify_invariance_suite(build(q), 50, seed=q).passed


def test_non_invariance_of_a_non_gl_form():
    # sanity: a generic quartic is not GL(3,2)-invariant, so the check can fail
    K = build_field(2, 1)
    x, y, z = (TriPoly.var(K, i) for i in range(3))
    f = x**4 + y * z**3
    A = gl_generators(2)[0]
    assert substitute_linear(f, A) != f


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_nonclassical_identities(q):
    C = build(q)
    assert verify_nonclassical(C).passed
    assert verify_frobenius_nc(C).passed


@pytest.mark.parametrize("q", [2, 3, 4])
def test_d2_is_product_of_lines(q):
    assert verify_d2_lines(build(q)).passed


@given(st.integers(0, 10**6))
def test_random_gl_is_invertible(seed):
    K = build_field(3, 1)
    A = random_gl(3, random.Random(seed))
    assert leibniz_det(K, A) != 0
