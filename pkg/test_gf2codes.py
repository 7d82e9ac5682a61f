import logging

import numpy as np
import pytest

from gf2codes import (BinaryCode, direct_sum, dual, even_weight_code, full_space, golay24, hamming8,
                      intersect_codes, is_doubly_even, is_self_dual, is_self_orthogonal, min_distance,
                      min_distance_result, reduce_vector, repetition_code, rref, solve_affine, sum_codes,
                      vector_from_string, vector_to_string, weight_profile, zero_code)
from search_config import BudgetExceededError

# 设置日志
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


def _random_code(rng, n, k):
    return BinaryCode(n, [int(x) for x in rng.integers(1, 1 << n, size=k)])


def test_vector_strings():
    assert vector_from_string('1100') == 0b0011
    assert vector_to_string(0b0011, 4) == '1100'
    with pytest.raises(ValueError):
        vector_from_string('10x1')


def test_rref_canonical():
    rows = [0b1011, 0b0110, 0b1101]
    a = rref(rows)
    b = rref([rows[2], rows[0] ^ rows[1], rows[1]])
    assert a == b
    # 主元 (最低位) 所在列在其它行中为 0
    for r in a:
        pm = r & -r
        assert sum(1 for s in a if s & pm) == 1


def test_code_equality_ignores_generators():
    c1 = BinaryCode(6, [0b000011, 0b001100])
    c2 = BinaryCode(6, [0b001111, 0b000011])
    assert c1 == c2 and hash(c1) == hash(c2)
    assert c1.dimension == 2


def test_dual_and_self_duality():
    rng = np.random.default_rng(7)
    for _ in range(20):
        code = _random_code(rng, 10, 4)
        d = dual(code)
        assert code.dimension + d.dimension == 10
        assert dual(d) == code
        for r in code.rows:
            for s in d.rows:
                assert bin(r & s).count('1') % 2 == 0

    assert is_self_dual(hamming8())
    assert is_doubly_even(hamming8())
    assert is_self_dual(repetition_code(2))
    assert not is_self_dual(even_weight_code(4))
    assert is_self_orthogonal(BinaryCode(8, [0b1111]))


def test_sum_and_intersection():
    a = BinaryCode(6, [0b000011, 0b001100])
    b = BinaryCode(6, [0b001100, 0b110000])
    assert sum_codes(a, b).dimension == 3
    assert intersect_codes(a, b) == BinaryCode(6, [0b001100])
    with pytest.raises(ValueError):
        sum_codes(a, zero_code(5))


def test_direct_sum():
    e16 = direct_sum(hamming8(), hamming8())
    assert e16.length == 16 and e16.dimension == 8
    assert is_self_dual(e16)
    assert min_distance(e16) == 4


def test_weight_profiles():
    assert weight_profile(hamming8()).counts == {0: 1, 4: 14, 8: 1}
    golay = golay24()
    profile = weight_profile(golay)
    assert profile.counts == {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}
    assert profile.total == 1 << 12
    assert is_self_dual(golay) and is_doubly_even(golay)


def test_min_distance_matches_profile():
    rng = np.random.default_rng(11)
    for _ in range(30):
        code = _random_code(rng, 12, 5)
        if code.dimension == 0:
            continue
        assert min_distance(code) == weight_profile(code).min_nonzero


def test_min_distance_early_abort():
    res = min_distance_result(golay24(), upper_bound=10)
    assert res.bound_hit and res.value <= 10
    exact = min_distance_result(golay24())
    assert exact.value == 8 and exact.exact


def test_min_distance_zero_code():
    with pytest.raises(ValueError):
        min_distance(zero_code(4))


def test_enumeration_budget(monkeypatch):
    monkeypatch.setenv('SDSEARCH_BUDGET', '100')
    with pytest.raises(BudgetExceededError):
        weight_profile(full_space(10))


def test_solve_affine():
    columns = [0b001, 0b010, 0b011, 0b100]
    particular, kernel = solve_affine(columns, 0b111)
    assert particular is not None
    x = 0
    for i, c in enumerate(columns):
        if (particular >> i) & 1:
            x ^= c
    assert x == 0b111
    assert len(kernel) == 1
    assert solve_affine([0b01, 0b01], 0b10)[0] is None


def test_reduce_vector():
    code = hamming8()
    for w in code.codewords():
        assert reduce_vector(code.rows, w) == 0
    assert reduce_vector(code.rows, 0b1) != 0


if __name__ == "__main__":
    test_vector_strings()
    test_rref_canonical()
    test_code_equality_ignores_generators()
    test_dual_and_self_duality()
    test_sum_and_intersection()
    test_direct_sum()
    test_weight_profiles()
    test_min_distance_matches_profile()
    test_min_distance_early_abort()
    test_min_distance_zero_code()
    test_solve_affine()
    test_reduce_vector()
    logger.info("gf2codes 测试通过")
