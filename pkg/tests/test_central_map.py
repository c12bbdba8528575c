import pytest

from heckeforge.bernstein import theta, z_basis_element
from heckeforge.central_map import (
    central_ic_class,
    dominance_leq,
    dominant_cocharacters,
    expand_in_z_basis,
    satake_structure_constants,
    spherical_crosscheck,
    verify_bernstein_iso,
    z_expansion_character,
)
from heckeforge.dual_weights import weight_multiplicities
from heckeforge.errors import NotInThetaSpan
from heckeforge.exactpoly import GroupRingElement, LaurentPoly
from heckeforge.hecke import hecke_algebra
from heckeforge.rootdata import preset

Q = LaurentPoly.monomial(1)
ONE = LaurentPoly.const(1)


def test_zmu_examples():
    rd = preset("SL2")
    H = hecke_algebra(rd)
    assert central_ic_class(rd, (0,)) == H.one
    assert central_ic_class(rd, (1,)) == theta(rd, (1,)) + theta(rd, (0,)).scale(Q) + theta(rd, (-1,))
    p = preset("PGL2")
    assert central_ic_class(p, (1,)) == z_basis_element(p, (1,))


def test_z_expansion_examples():
    rd = preset("SL2")
    assert expand_in_z_basis(rd, z_basis_element(rd, (2,))) == {(2,): ONE}
    assert expand_in_z_basis(rd, central_ic_class(rd, (1,))) == {(1,): ONE, (0,): Q}
    assert expand_in_z_basis(rd, central_ic_class(rd, (2,))) == {(2,): ONE, (1,): Q, (0,): Q**2}


def test_z_expansion_rejects_noncentral():
    rd = preset("SL2")
    H = hecke_algebra(rd)
    with pytest.raises(NotInThetaSpan):
        expand_in_z_basis(rd, H.T(1))


def test_satake_examples():
    rd = preset("SL2")
    assert satake_structure_constants(rd, (0,), (2,)) == {(2,): ONE}
    c = satake_structure_constants(rd, (1,), (1,))
    assert {k: v(1) for k, v in c.items()} == {(2,): 1, (1,): 1, (0,): 1}
    c = satake_structure_constants(preset("PGL2"), (1,), (1,))
    assert {k: v(1) for k, v in c.items() if v(1)} == {(2,): 1, (0,): 1}


@pytest.mark.parametrize("name", ["SL2", "PGL2", "GL2", "SL3", "Sp4"])
def test_q1_character(name):
    rd = preset(name)
    for mu in dominant_cocharacters(rd, 8):
        zexp = expand_in_z_basis(rd, central_ic_class(rd, mu))
        assert z_expansion_character(rd, zexp) == GroupRingElement(weight_multiplicities(rd, mu).mults)
        assert zexp[mu] == ONE
        assert all(dominance_leq(rd, nu, mu) for nu in zexp)


def test_dominant_cocharacters():
    assert dominant_cocharacters(preset("SL2"), 8) == [(0,), (1,), (2,), (3,), (4,)]
    gl2 = dominant_cocharacters(preset("GL2"), 2, central_box=1)
    assert (0, 0) in gl2 and (1, 1) in gl2 and (-1, -1) in gl2 and (2, 0) in gl2
    assert all(a >= b for a, b in gl2)


@pytest.mark.parametrize("name,bound", [("SL2", 8), ("PGL2", 6), ("G2", 8)])
def test_verify_report(name, bound):
    rep = verify_bernstein_iso(preset(name), bound)
    js = rep.to_json()
    assert js["pass"] is True and js["group"] == name and js["bound"] == bound
    assert all(set(c) >= {"mu", "central", "unitriangular", "integral"} for c in js["checks"])


def test_verify_trivial_bound():
    rep = verify_bernstein_iso(preset("SL3"), 0)
    assert rep.passed and [c["mu"] for c in rep.checks] == [[0, 0]]


def test_spherical_crosscheck():
    assert spherical_crosscheck(preset("SL2"), 6)["pass"]
