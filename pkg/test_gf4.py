import logging
from itertools import product

import numpy as np
import pytest

from gf4 import (CONJ, MUL, TRACE, AdditiveF4Code, LinearF4Code, MonomialMap, additive_min_distance,
                 all_additive_self_dual, classify_small_additive_selfdual, f4_inv, f4_min_distance,
                 format_f4_vector, hermitian_dual, hermitian_product, interleave_conjugate,
                 is_hermitian_self_dual, is_trace_hermitian_self_dual, monomial_group_order, monomial_lift,
                 omega_times, pack, parse_f4_vector, phi_lift, pi_project, s3_check_code, s3_filter,
                 sigma_action_F4, symbol_weight, trace_hermitian, trace_hermitian_dual, unpack)
from isotropic import count_lagrangians_f2
from permgrp import Permutation

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


def _random_vector(rng, n):
    return tuple(int(x) for x in rng.integers(0, 4, size=n))


def _random_monomial(rng, n, with_conjugation=True):
    perm = Permutation([int(x) + 1 for x in rng.permutation(n)])
    scalars = tuple(int(x) for x in rng.integers(1, 4, size=n))
    conj = tuple(bool(x) for x in rng.integers(0, 2, size=n)) if with_conjugation else ()
    return MonomialMap(perm, scalars, conj)


def test_field_tables():
    for a, b, c in product(range(4), repeat=3):
        assert MUL[a][MUL[b][c]] == MUL[MUL[a][b]][c]
        assert MUL[a][b ^ c] == MUL[a][b] ^ MUL[a][c]
    for a in range(1, 4):
        assert MUL[a][f4_inv(a)] == 1
    for a in range(4):
        assert CONJ[a] == MUL[a][a]
        assert TRACE[a] == a ^ CONJ[a]
    with pytest.raises(ZeroDivisionError):
        f4_inv(0)


def test_symbols():
    v = parse_f4_vector('01wW')
    assert v == (0, 1, 2, 3)
    assert format_f4_vector(v) == '01wW'
    with pytest.raises(ValueError):
        parse_f4_vector('01x')


def test_packed_forms_match_scalar():
    rng = np.random.default_rng(4)
    for _ in range(200):
        n = 5
        x, y = _random_vector(rng, n), _random_vector(rng, n)
        assert unpack(pack(x), n) == x
        assert trace_hermitian(pack(x), pack(y), n) == TRACE[hermitian_product(x, y)]
        assert omega_times(pack(x), n) == pack(tuple(MUL[2][a] for a in x))


def test_hermitian_dual():
    rng = np.random.default_rng(8)
    for _ in range(20):
        code = LinearF4Code(6, [_random_vector(rng, 6) for _ in range(3)])
        d = hermitian_dual(code)
        assert code.dimension + d.dimension == 6
        for r in code.rows:
            for s in d.rows:
                assert hermitian_product(r, s) == 0


def test_f4_min_distance_brute_force():
    rng = np.random.default_rng(9)
    for _ in range(20):
        code = LinearF4Code(7, [_random_vector(rng, 7) for _ in range(3)])
        if code.dimension == 0:
            continue
        brute = min(symbol_weight(w) for w in code.codewords() if any(w))
        assert f4_min_distance(code).value == brute


def test_f4_min_distance_abort():
    code = LinearF4Code(4, [(1, 1, 1, 1)])
    assert f4_min_distance(code).value == 4
    res = f4_min_distance(code, abort_at=1)
    assert not res.exact and res.value == 1


def test_additive_counts():
    for n in (1, 2, 3):
        codes = all_additive_self_dual(n)
        assert len(codes) == count_lagrangians_f2(2 * n)
        assert len(set(codes)) == len(codes)
        assert all(is_trace_hermitian_self_dual(c) for c in codes)
        assert all(trace_hermitian_dual(c) == c for c in codes)


def test_phi_pi_round_trip():
    for n in (1, 2, 3):
        for X in all_additive_self_dual(n):
            E = phi_lift(X)
            assert E.dimension == n and E.length == 2 * n
            assert is_hermitian_self_dual(E)
            for r in E.rows:
                assert E.contains(sigma_action_F4(r))
            assert pi_project(E) == X


def test_sigma_fixes_interleaved_vectors():
    rng = np.random.default_rng(10)
    for _ in range(50):
        v = _random_vector(rng, 4)
        assert sigma_action_F4(interleave_conjugate(v)) == interleave_conjugate(v)
    with pytest.raises(ValueError):
        sigma_action_F4((1, 2, 3))


def test_monomial_lift_commutes_with_phi():
    rng = np.random.default_rng(11)
    for X in all_additive_self_dual(3):
        M = _random_monomial(rng, 3)
        assert phi_lift(M.apply_additive(X)) == monomial_lift(M).apply_linear(phi_lift(X))


def test_monomial_composition():
    rng = np.random.default_rng(12)
    for _ in range(30):
        a, b = _random_monomial(rng, 4), _random_monomial(rng, 4)
        v = _random_vector(rng, 4)
        assert a.then(b).apply(v) == b.apply(a.apply(v))


def test_additive_classification():
    expected = {1: 1, 2: 2, 3: 3, 4: 6}
    for n, classes in expected.items():
        cls = classify_small_additive_selfdual(n)
        assert len(cls.representatives) == classes
        assert cls.mass() == cls.total == count_lagrangians_f2(2 * n)
        assert cls.group_order == monomial_group_order(n)


def test_additive_classification_without_conjugation():
    for n in (1, 2, 3):
        plain = classify_small_additive_selfdual(n, with_conjugation=False)
        full = classify_small_additive_selfdual(n, with_conjugation=True)
        assert plain.equivalence == 'monomial'
        assert plain.mass() == plain.total
        assert len(plain.representatives) >= len(full.representatives)


def test_classification_length_limit():
    with pytest.raises(ValueError):
        classify_small_additive_selfdual(9)


def test_s3_filter_small_lengths():
    codes = all_additive_self_dual(2)
    report = s3_filter(enumerate(codes), min_symbol_distance=None)
    assert len(report.records) == len(codes) == 15
    assert report.contradictions == 0 and report.rejected == 0
    assert sum(report.histogram.values()) == 15
    assert report.max_d <= 4


def test_s3_filter_reports_bad_records():
    good = all_additive_self_dual(2)[0]
    not_self_dual = AdditiveF4Code.from_vectors(2, [(1, 0), (2, 0)])
    stream = [(0, good), (1, ValueError('bad header')), (2, not_self_dual)]
    report = s3_filter(stream, min_symbol_distance=None)
    statuses = [r.status for r in report.records]
    assert statuses[0] == 'ok'
    assert statuses[1].startswith('malformed')
    assert statuses[2] == 'invalid:not self-dual'
    assert report.rejected == 2


def test_s3_check_code_distance_and_length():
    codes = all_additive_self_dual(3)
    low = next(c for c in codes if additive_min_distance(c) == 1)
    assert s3_check_code(0, low, min_symbol_distance=2).status == 'invalid:d < 2'
    assert s3_check_code(0, low, expected_length=4).status.startswith('invalid:length')


if __name__ == "__main__":
    test_field_tables()
    test_symbols()
    test_packed_forms_match_scalar()
    test_hermitian_dual()
    test_f4_min_distance_brute_force()
    test_f4_min_distance_abort()
    test_additive_counts()
    test_phi_pi_round_trip()
    test_sigma_fixes_interleaved_vectors()
    test_monomial_lift_commutes_with_phi()
    test_monomial_composition()
    test_additive_classification()
    test_additive_classification_without_conjugation()
    test_classification_length_limit()
    test_s3_filter_small_lengths()
    test_s3_filter_reports_bad_records()
    test_s3_check_code_distance_and_length()
    logger.info("gf4 测试通过")
