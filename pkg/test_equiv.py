import logging

import numpy as np
import pytest

from equiv import (automorphism_group, brute_force_defining_set, check_rep_set, classify_self_dual_binary,
                   count_self_dual_codes, enumerate_self_dual_codes, fpf_element_classes, is_equivalent,
                   lemma_repr, orbit_fuse, orbits_in_set, same_orbit)
from gf2codes import direct_sum, hamming8, is_self_dual, repetition_code
from permgrp import PermGroup, Permutation, act_on_code, wreath_centralizer
from prepare_desk_data import lemma_desk_degree, lemma_desk_inputs
from search_config import BudgetExceededError

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


def _random_permutation(rng, n):
    return Permutation([int(x) + 1 for x in rng.permutation(n)])


def _i2_power(k):
    code = repetition_code(2)
    for _ in range(k - 1):
        code = direct_sum(code, repetition_code(2))
    return code


def test_automorphism_orders():
    assert automorphism_group(hamming8()).order == 1344
    # 2^k * k!
    assert automorphism_group(_i2_power(3)).order == 48
    assert automorphism_group(_i2_power(4)).order == 384


def test_automorphism_generators_preserve_code():
    code = hamming8()
    aut = automorphism_group(code)
    for g in aut.generators:
        assert act_on_code(code, g) == code


def test_is_equivalent_returns_witness():
    rng = np.random.default_rng(13)
    code = hamming8()
    for _ in range(10):
        p = _random_permutation(rng, 8)
        other = act_on_code(code, p)
        phi = is_equivalent(code, other)
        assert phi is not None
        assert act_on_code(code, phi) == other
    assert is_equivalent(hamming8(), _i2_power(4)) is None


def test_fpf_involution_classes():
    aut = automorphism_group(_i2_power(3))
    reps = fpf_element_classes(aut, 2)
    assert len(reps) >= 1
    for h in reps:
        assert h.order() == 2
        assert all(h(i) != i for i in range(1, 7))
    # 类代表两两不共轭
    assert len(set(reps)) == len(reps)


@pytest.mark.parametrize('code,order', [(_i2_power(3), 2), (_i2_power(3), 4), (_i2_power(4), 2),
                                        (_i2_power(4), 4), (hamming8(), 2), (hamming8(), 4)])
def test_fpf_classes_random_path_matches_enumeration(code, order):
    aut = automorphism_group(code)
    expected = fpf_element_classes(aut, order)
    for seed in range(3):
        assert fpf_element_classes(aut, order, seed=seed, enum_limit=1) == expected


def test_fpf_classes_random_path_is_complete_on_e8_squared():
    aut = automorphism_group(direct_sum(hamming8(), hamming8()))
    assert aut.order == 2 * 1344 ** 2
    expected = fpf_element_classes(aut, 2, enum_limit=10 ** 7)
    assert len(expected) == 4
    for seed in range(6):
        assert fpf_element_classes(aut, 2, seed=seed) == expected


def test_fpf_classes_over_budget(monkeypatch):
    aut = automorphism_group(hamming8())
    monkeypatch.setenv('SDSEARCH_BUDGET', '100')
    with pytest.raises(BudgetExceededError):
        fpf_element_classes(aut, 2, enum_limit=1)


@pytest.mark.parametrize('n', [2, 4, 6, 8])
def test_self_dual_enumeration(n):
    codes = list(enumerate_self_dual_codes(n))
    assert len(codes) == count_self_dual_codes(n)
    assert len(set(codes)) == len(codes)
    assert all(is_self_dual(c) for c in codes)


def test_self_dual_enumeration_rejects_odd_length():
    with pytest.raises(ValueError):
        list(enumerate_self_dual_codes(5))


def test_binary_classification():
    expected = {2: 1, 4: 1, 6: 1, 8: 2}
    for n, classes in expected.items():
        cls = classify_self_dual_binary(n)
        assert len(cls.classes) == classes
        assert cls.mass() == cls.total == count_self_dual_codes(n)
    e8_class = [c for c in classify_self_dual_binary(8).classes if c.aut_order == 1344]
    assert len(e8_class) == 1 and e8_class[0].orbit_size == 30


def test_binary_classification_length_limit():
    with pytest.raises(ValueError):
        classify_self_dual_binary(14)


@pytest.mark.parametrize('kind', ['A4', 'D8'])
def test_lemma_representatives_match_brute_force(kind):
    wreath = wreath_centralizer(kind, lemma_desk_degree(kind))
    for name, Y in lemma_desk_inputs(kind):
        reps = lemma_repr(Y, kind, source_class=name, seed=0)
        brute = brute_force_defining_set(Y, kind, wreath.G36.generators)
        ok, msg = check_rep_set(reps, brute)
        assert ok, msg
        for rep in reps.reps:
            assert rep.check_witness(Y)


def test_lemma_rejects_unknown_kind():
    with pytest.raises(ValueError):
        lemma_repr(_i2_power(3), 'S3')


def test_orbit_fuse_counts():
    kind = 'A4'
    wreath = wreath_centralizer(kind, lemma_desk_degree(kind))
    for name, Y in lemma_desk_inputs(kind):
        reps = lemma_repr(Y, kind, source_class=name, seed=0)
        brute = brute_force_defining_set(Y, kind, wreath.G36.generators)
        expected = len(orbits_in_set(brute.members, wreath.pi1_G.generators))
        assert len(orbit_fuse(reps.codes, wreath.pi1_G, wreath.transversal)) == expected
        # 陪集代表的选取不影响结果
        u = wreath.pi1_G.random_element(seed=1)
        shifted = [t * u for t in wreath.transversal]
        assert len(orbit_fuse(reps.codes, wreath.pi1_G, shifted)) == expected


def test_same_orbit():
    code = _i2_power(3)
    swap = Permutation.parse('(1,3)(2,4)', 6)
    moved = act_on_code(code, Permutation.parse('(2,3)', 6))
    trivial = PermGroup([], 6)
    assert same_orbit(code, act_on_code(code, swap), trivial)
    assert not same_orbit(code, moved, trivial)
    assert same_orbit(code, moved, PermGroup([Permutation.parse('(2,3)', 6)], 6))


if __name__ == "__main__":
    test_automorphism_orders()
    test_automorphism_generators_preserve_code()
    test_is_equivalent_returns_witness()
    test_fpf_involution_classes()
    for code, k in [(_i2_power(3), 2), (_i2_power(3), 4), (_i2_power(4), 2), (_i2_power(4), 4),
                    (hamming8(), 2), (hamming8(), 4)]:
        test_fpf_classes_random_path_matches_enumeration(code, k)
    test_fpf_classes_random_path_is_complete_on_e8_squared()
    for n in (2, 4, 6, 8):
        test_self_dual_enumeration(n)
    test_self_dual_enumeration_rejects_odd_length()
    test_binary_classification()
    test_binary_classification_length_limit()
    for kind in ('A4', 'D8'):
        test_lemma_representatives_match_brute_force(kind)
    test_lemma_rejects_unknown_kind()
    test_orbit_fuse_counts()
    test_same_orbit()
    logger.info("equiv 测试通过")
