"""Subgroups of PGL(3, q), orbits and stabilisers on the special point classes."""
import pytest

from dgz.curve import build
from dgz.errors import ScaleExceeded, UnknownName
from dgz.gf import build_field
from dgz.group import (
    GroupElem,
    _order_cached,
    enumerate_group,
    generated_order,
    lambda3_points,
    omega_points,
    orbit_of,
    pgl_order,
    singer_polynomial,
    stabilizer_by_enumeration,
    subgroup,
    verify_sylow_structure,
    verify_two_short_orbits,
)
from dgz.local import sample_generic_points
from dgz.plane import degree_of_point


@pytest.mark.parametrize("q", [2, 3, 4, 5])
@pytest.mark.parametrize("name", ["T", "Q", "Phi", "Psi", "Dil", "Singer"])
def test_subgroup_orders(name, q):
    spec = subgroup(name, q)
    assert generated_order(spec) == spec.expected_order


def test_subgroup_examples():
    assert generated_order(subgroup("T", 3)) == 9
    assert generated_order(subgroup("Q", 3)) == 27
    assert generated_order(subgroup("Singer", 2)) == 7


def test_pgl_by_enumeration():
    assert generated_order(subgroup("Full", 2)) == 168 == pgl_order(2)
    assert _order_cached("Full", 3) == 5616 == pgl_order(3)


def test_bad_names_and_scale():
    with pytest.raises(UnknownName):
        subgroup("Borel", 3)
    with pytest.raises(ScaleExceeded):
        generated_order(subgroup("Full", 7))
    with pytest.raises(ScaleExceeded):
        orbit_of(omega_points(7)[0], "Full", 7)


def test_singer_generator_has_order_q2_q_1_in_pgl():
    for q in (2, 3, 4, 5):
        spec = subgroup("Singer", q)
        g = spec.generators[0]
        x, n = g, 1
        while not x.is_identity():
            x, n = x * g, n + 1
        assert n == q * q + q + 1
        assert len(singer_polynomial(q)) == 3


def test_orbit_examples():
    P = omega_points(2)[0]
    rec = orbit_of(P, "Full", 2)
    assert (rec.size, rec.stabilizer_order) == (14, 12)
    R = lambda3_points(2)[0]
    rec = orbit_of(R, "Full", 2)
    assert (rec.size, rec.stabilizer_order) == (24, 7)
    rec = orbit_of(omega_points(3)[0], "Full", 3)
    assert (rec.size, rec.stabilizer_order) == (78, 72)


def test_stabiliser_by_enumeration_matches_orbit_stabiliser():
    G = enumerate_group(subgroup("Full", 2))
    for P in (omega_points(2)[3], lambda3_points(2)[5]):
        rec = orbit_of(P, "Full", 2)
        assert stabilizer_by_enumeration(P, G) == rec.stabilizer_order


def test_group_action_is_an_action():
    G = list(enumerate_group(subgroup("Full", 2)))[:30]
    P = lambda3_points(2)[0]
    for g in G[:10]:
        for h in G[10:20]:
            assert (g * h).act(P) == g.act(h.act(P))


def test_full_group_preserves_the_curve():
    from dgz.tripoly import evaluate

    C = build(2)
    pts = lambda3_points(2)
    for g in subgroup("Full", 2).generators:
        assert all(evaluate(C.F, g.act(P)) == 0 for P in pts)


@pytest.mark.parametrize("q", [2, 3])
def test_two_short_orbits(q):
    assert verify_two_short_orbits(q).passed


def test_generic_point_has_trivial_stabiliser():
    C = build(2)
    P = sample_generic_points(C, 7, n=1, seed=3)[0]
    assert degree_of_point(P, 2) == 7
    r = verify_two_short_orbits(2, samples=[P])
    assert r.passed
    assert orbit_of(P, "Full", 2).size == 168


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_sylow_structure(q):
    assert verify_sylow_structure(q).passed


def test_group_elem_normalisation():
    K = build_field(3, 1)
    g = GroupElem.make(K, ((2, 0, 0), (0, 2, 0), (0, 0, 2)))
    assert g.is_identity()
