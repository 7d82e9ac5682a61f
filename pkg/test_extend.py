import logging

import pytest

from extend import (QuotientSpace, a4_overcode_search, build_E, code_verdict, coset_id, d8_overcode_search,
                    planted_witnesses, selfdual_submodules, sigma_split, socle)
from gf2codes import BinaryCode, golay24, hamming8, is_doubly_even, repetition_code, direct_sum
from isotropic import count_lagrangians_f2
from permgrp import act_on_code, h_generators
from prepare_desk_data import a4_desk_cases, d8_desk_cases, golay_s3_frame

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

FRAME = golay_s3_frame()


def _case(cases, name):
    return next(c for c in cases if c.name == name)


def test_code_verdict():
    assert code_verdict('t', '0', golay24(), 8).verdict == 'extremal'
    assert code_verdict('t', '0', hamming8(), 8).verdict == 'd<bound'
    assert code_verdict('t', '0', BinaryCode(8, [0b11]), 2).verdict == 'not-self-dual'
    rec = code_verdict('src', 'id', golay24(), 8)
    assert set(rec.to_dict()) == {'source', 'subspace_or_coset_id', 'dim', 'doubly_even',
                                  'min_distance_or_bound', 'verdict'}
    assert rec.to_dict()['dim'] == 12 and rec.doubly_even


def test_build_E():
    sigma = h_generators('A4', 12)['sigma']
    i2 = repetition_code(2)
    D = direct_sum(direct_sum(direct_sum(i2, i2), direct_sum(i2, i2)), direct_sum(i2, i2))
    E = build_E(D, sigma, 3)
    assert E.contains_code(D)
    assert act_on_code(E, sigma) == E
    with pytest.raises(ValueError):
        build_E(D, sigma, 2)


def test_a4_plane_routes_agree():
    case = _case(a4_desk_cases(FRAME), 'golay-plane')
    split = sigma_split(QuotientSpace(case.E, action=case.sigma))
    assert not split.fixed and len(split.moving) == 8
    direct = a4_overcode_search(case.E, case.sigma, case.bound, route='direct', source=case.name)
    staged = a4_overcode_search(case.E, case.sigma, case.bound, route='two-stage', source=case.name,
                                orbit_reduce=False)
    assert direct.subspaces_checked == 27
    assert staged.points_total == 45
    assert case.target in direct.overcodes
    assert set(direct.overcodes) == set(staged.overcodes)
    assert not direct.excluded


def test_a4_plane_sharded_direct_route():
    case = _case(a4_desk_cases(FRAME), 'golay-plane')
    checked = 0
    found = set()
    for i in range(3):
        part = a4_overcode_search(case.E, case.sigma, case.bound, route='direct', shard=(i, 3))
        checked += part.subspaces_checked
        found |= set(part.overcodes)
    assert checked == 27
    assert case.target in found


def test_a4_excluded_when_bound_too_high():
    case = _case(a4_desk_cases(FRAME), 'golay-plane')
    result = a4_overcode_search(case.E, case.sigma, case.bound + 4, route='direct')
    assert result.excluded
    assert all(r.verdict != 'extremal' for r in result.records)


def test_a4_preimage_lagrangians():
    case = _case(a4_desk_cases(FRAME), 'golay-preimage')
    V = QuotientSpace(case.E, action=case.sigma)
    split = sigma_split(V)
    assert len(split.fixed) == 6
    all_subs = selfdual_submodules(V, split.fixed, case.bound, quad_filter=False)
    assert len(all_subs) == count_lagrangians_f2(6) == 135
    filtered = selfdual_submodules(V, split.fixed, case.bound)
    assert len(filtered) == sum(1 for s in all_subs if is_doubly_even(s.code))
    result = a4_overcode_search(case.E, case.sigma, case.bound, route='two-stage', source=case.name)
    assert case.target in result.overcodes


def test_a4_unknown_route():
    case = _case(a4_desk_cases(FRAME), 'golay-plane')
    with pytest.raises(ValueError):
        a4_overcode_search(case.E, case.sigma, case.bound, route='sideways')


def test_d8_planted():
    case = _case(d8_desk_cases(), 'planted')
    assert socle(case.planted, case.k).is_free
    result = d8_overcode_search(case.E, case.k, case.bound, source=case.name)
    assert not result.killed
    assert len(result.sizes) == len(result.socle_basis) == case.E.dimension
    witnesses = planted_witnesses(case.planted, case.E, case.k, result.socle_basis)
    for j, w in enumerate(witnesses):
        assert coset_id(case.E, result.transversal, w) in result.members[j]


def test_d8_empty():
    case = _case(d8_desk_cases(), 'empty')
    result = d8_overcode_search(case.E, case.k, case.bound, source=case.name)
    assert result.sizes[0] == 0 and result.solution_counts[0] == 0
    assert result.killed
    with pytest.raises(ValueError):
        coset_id(case.E, result.transversal, 0b1)


def test_d8_selfdual():
    case = _case(d8_desk_cases(), 'selfdual')
    result = d8_overcode_search(case.E, case.k, case.bound, source=case.name)
    assert all(s == 0 for s in result.sizes)
    assert result.killed


if __name__ == "__main__":
    test_code_verdict()
    test_build_E()
    test_a4_plane_routes_agree()
    test_a4_plane_sharded_direct_route()
    test_a4_excluded_when_bound_too_high()
    test_a4_preimage_lagrangians()
    test_a4_unknown_route()
    test_d8_planted()
    test_d8_empty()
    test_d8_selfdual()
    logger.info("extend 测试通过")
