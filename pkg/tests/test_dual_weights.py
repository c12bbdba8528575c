import itertools

import pytest

from heckeforge.dual_weights import (
    Character,
    tensor_multiplicities,
    weight_multiplicities,
    weyl_character_oracle,
    weyl_dimension,
)
from heckeforge.rootdata import PRESETS, preset


def _dominants(rd, cap):
    out = []
    for lam in itertools.product(range(-cap, cap + 1), repeat=rd.rank):
        if rd.is_dominant(lam) and rd.rho_pairing(lam) <= 12:
            out.append(lam)
    return out


@pytest.mark.parametrize("name", list(PRESETS))
def test_freudenthal_matches_weyl_formula(name):
    rd = preset(name)
    for mu in _dominants(rd, 6):
        ch = weight_multiplicities(rd, mu)
        assert ch.mults == weyl_character_oracle(rd, mu).mults
        assert ch.dimension == weyl_dimension(rd, mu)
        for nu, m in ch.mults.items():
            assert m > 0
            for w in rd.weyl:
                assert ch[w.act(nu)] == m
        for lam in rd.orbit(mu):
            assert ch[lam] == 1


def test_examples():
    assert weight_multiplicities(preset("SL2"), (0,)).mults == {(0,): 1}
    for k in range(4):
        ch = weight_multiplicities(preset("SL2"), (k,))
        assert ch.mults == {(j,): 1 for j in range(-k, k + 1)}
        assert weyl_dimension(preset("SL2"), (k,)) == 2 * k + 1
    ch = weight_multiplicities(preset("SL3"), (1, 1))
    assert ch.dimension == 8 and ch[(0, 0)] == 2


def test_tensor_examples():
    sl2 = preset("SL2")
    assert tensor_multiplicities(sl2, (0,), (2,)) == {(2,): 1}
    assert tensor_multiplicities(sl2, (1,), (1,)) == {(2,): 1, (1,): 1, (0,): 1}
    assert tensor_multiplicities(preset("PGL2"), (1,), (1,)) == {(2,): 1, (0,): 1}


@pytest.mark.parametrize("name", ["SL3", "Sp4", "G2", "GL2"])
def test_tensor_dimension_and_symmetry(name):
    rd = preset(name)
    doms = [mu for mu in _dominants(rd, 3) if rd.rho_pairing(mu) <= 6]
    for mu, mu2 in itertools.combinations_with_replacement(doms, 2):
        a = tensor_multiplicities(rd, mu, mu2)
        assert a == tensor_multiplicities(rd, mu2, mu)
        assert sum(m * weyl_dimension(rd, nu) for nu, m in a.items()) == weyl_dimension(rd, mu) * weyl_dimension(
            rd, mu2
        )


def test_json_roundtrip():
    ch = weight_multiplicities(preset("Sp4"), (1, 1))
    assert Character.from_json(ch.to_json()) == ch


def test_rejects_non_dominant():
    with pytest.raises(ValueError):
        weight_multiplicities(preset("SL2"), (-1,))
