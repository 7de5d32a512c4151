"""Quotient-curve polynomial identities and Hasse-Witt p-ranks."""
import pytest

from dgz.errors import SingularCurve
from dgz.gf import build_field
from dgz.local import genus_formula
from dgz.quotient import (
    H_poly,
    M_closed,
    M_from_H,
    M_printed,
    M_rat,
    ds_prank_relation,
    fermat,
    hasse_witt_fermat,
    hasse_witt_matrix,
    interior_monomials,
    verify_H_identity,
    verify_M_forms,
    verify_prank,
    verify_R_and_fermat,
)
from dgz.tripoly import TriPoly

QS = [2, 3, 4, 5, 7, 8, 9]


@pytest.mark.parametrize("q", QS)
def test_H_identity(q):
    r = verify_H_identity(q)
    assert r.passed, r.failures()
    assert H_poly(q).degree() == q * q - q


@pytest.mark.parametrize("q", QS)
def test_M_closed_form(q):
    assert M_rat(q) == M_closed(q) == M_from_H(q)


def test_M_q3_by_hand():
    K = build_field(3, 1)
    X, Y = TriPoly.var(K, 0), TriPoly.var(K, 1)
    assert M_rat(3) == 1 + X**2 + X**4 + X**6 + Y**6


def test_M_q2_matches_printed_form():
    r = verify_M_forms(2)
    assert r.passed
    assert M_rat(2) == M_printed(2)


@pytest.mark.parametrize("q", [3, 4, 5, 8])
def test_printed_M_form_differs_beyond_q2(q):
    # records the observed behaviour: the expanded form only agrees at q = 2
    assert M_rat(q) != M_printed(q)


def test_M_q4_explicit():
    K = build_field(2, 1)
    X, Y = TriPoly.var(K, 0), TriPoly.var(K, 1)
    assert M_rat(4).over(K) == 1 + X**3 + X**6 + X**9 + X**12 + Y**12


@pytest.mark.parametrize("q", QS)
def test_R_and_fermat(q):
    assert verify_R_and_fermat(q).passed


def test_interior_monomials():
    assert len(interior_monomials(4)) == 3  # genus of a plane quartic
    for n in range(3, 9):
        assert len(interior_monomials(n)) == (n - 1) * (n - 2) // 2


@pytest.mark.parametrize(
    "n,p,rank",
    [
        (4, 5, 3),
        (6, 7, 10),
        (10, 11, 36),
        (1, 3, 0),
        (3, 2, 0),  # supersingular cubic: 2 ≡ 2 mod 3
        (3, 5, 0),  # supersingular: 5 ≡ 2 mod 3
        (3, 7, 1),  # ordinary: 7 ≡ 1 mod 3
        (3, 13, 1),
    ],
)
def test_hasse_witt_fermat(n, p, rank):
    assert hasse_witt_fermat(n, p) == rank


def test_hasse_witt_cubic_agrees_with_point_count():
    # a plane cubic over F_p is ordinary iff its trace of Frobenius is nonzero mod p
    from dgz.plane import enumerate_points
    from dgz.tripoly import evaluate

    for p in (5, 7, 11, 13):
        f = fermat(3, p)
        N = sum(1 for P in enumerate_points(f.field) if evaluate(f, P) == 0)
        trace = p + 1 - N
        assert (hasse_witt_fermat(3, p) == 1) == (trace % p != 0)


def test_singular_fermat():
    with pytest.raises(SingularCurve):
        hasse_witt_fermat(6, 3)


def test_hasse_witt_matrix_shape():
    mons, A = hasse_witt_matrix(fermat(4, 5), 5)
    assert len(mons) == 3 and len(A) == 3 and all(len(r) == 3 for r in A)


def test_ds_relation():
    assert ds_prank_relation(5, 3) == 1131 == genus_formula(5)
    assert ds_prank_relation(7, 10) == 6868 == genus_formula(7)
    assert ds_prank_relation(2, 0) == genus_formula(2)
    assert ds_prank_relation(3, 0) == genus_formula(3)


@pytest.mark.parametrize("q", QS)
def test_verify_prank(q):
    r = verify_prank(q)
    assert r.passed
    if q == 4:
        assert any("no ordinarity claim" in c.name for c in r.checks)
