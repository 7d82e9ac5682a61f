import logging
from math import factorial

import numpy as np
import pytest
import sympy.core.random as sympy_random

from gf2codes import BinaryCode, hamming8
from permgrp import (PermGroup, Permutation, act_on_code, act_on_vector, block_action, centralizer_in,
                     conjugating_element, cycle_type, d8_rotation, group_closure, group_order, h_generators,
                     is_automorphism, is_fixed_point_free, natural_lift, pair_blocks, quad_blocks,
                     semiregular_centralizer, wreath_centralizer)
from search_config import BudgetExceededError

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


def _random_permutation(rng, n):
    return Permutation([int(x) + 1 for x in rng.permutation(n)])


def test_parse_and_format():
    p = Permutation.parse('(1,3,2)(4,5)', 6)
    assert p(1) == 3 and p(3) == 2 and p(2) == 1 and p(6) == 6
    assert str(p) == '(1,3,2)(4,5)'
    assert Permutation.parse(str(p), 6) == p
    assert str(Permutation.identity(4)) == '()'
    with pytest.raises(ValueError):
        Permutation.parse('(1,2', 4)
    with pytest.raises(ValueError):
        Permutation.from_cycles([(1, 2), (2, 3)], 4)


def test_product_is_left_to_right():
    x = Permutation.parse('(1,2)', 3)
    y = Permutation.parse('(2,3)', 3)
    # 先 x 再 y: 1 -> 2 -> 3
    assert (x * y)(1) == 3
    assert x.conjugate(y) == y.inverse() * x * y


def test_action_is_right_action():
    rng = np.random.default_rng(3)
    code = hamming8()
    for _ in range(10):
        p = _random_permutation(rng, 8)
        q = _random_permutation(rng, 8)
        assert act_on_code(act_on_code(code, p), q) == act_on_code(code, p * q)
    v = 0b1  # 坐标 1
    assert act_on_vector(v, Permutation.parse('(1,5)', 8)) == 1 << 4


def test_order_and_cycle_type():
    p = Permutation.parse('(1,2,3)(4,5)', 6)
    assert p.order() == 6
    assert cycle_type(p) == [1, 2, 3]
    assert not is_fixed_point_free(p)
    assert is_fixed_point_free(Permutation.parse('(1,2,3)(4,5,6)', 6))
    assert p ** 6 == Permutation.identity(6)
    assert p ** -1 == p.inverse()


def test_conjugating_element():
    rng = np.random.default_rng(5)
    a = Permutation.parse('(1,2,3)(4,5,6)(7,8)', 9)
    for _ in range(10):
        t = _random_permutation(rng, 9)
        b = a.conjugate(t)
        s = conjugating_element(a, b)
        assert s is not None and a.conjugate(s) == b
    assert conjugating_element(a, Permutation.parse('(1,2)', 9)) is None


def test_natural_lift_and_blocks():
    rho = Permutation.parse('(1,2,3)', 4)
    lifted = natural_lift(rho)
    assert lifted == Permutation.parse('(1,3,5)(2,4,6)', 8)
    assert block_action(lifted, pair_blocks(8)) == rho
    with pytest.raises(ValueError):
        block_action(Permutation.parse('(2,3)', 8), pair_blocks(8))


def test_group_orders():
    s4 = PermGroup([Permutation.parse('(1,2)', 4), Permutation.parse('(1,2,3,4)', 4)])
    assert s4.order() == group_order(s4) == 24
    assert len(list(s4.elements())) == 24
    cent = centralizer_in(s4, [Permutation.parse('(1,2)(3,4)', 4)])
    assert cent.order() == 8
    assert s4.contains(Permutation.parse('(1,3)', 4))


def test_hamming_automorphisms():
    code = hamming8()
    assert is_automorphism(code, Permutation.identity(8))
    assert not is_automorphism(code, Permutation.parse('(1,2)', 8))
    assert not is_automorphism(BinaryCode(4, [0b0011]), Permutation.parse('(1,3)', 4))


@pytest.mark.parametrize('kind,degree,order', [('A4', 12, 12), ('A4', 24, 12), ('D8', 8, 8), ('D8', 16, 8)])
def test_h_generators(kind, degree, order):
    hg = h_generators(kind, degree)
    elements = group_closure([hg['g'], hg['h'], hg['sigma']])
    assert len(elements) == order
    assert all(x.is_identity() or is_fixed_point_free(x) for x in elements)
    assert hg['g'].commutes(hg['h'])
    # pi1(h) 与 pi2(sigma) 有定义
    block_action(hg['h'], pair_blocks(degree))
    block_action(hg['sigma'], quad_blocks(degree))


def test_h_generators_degree_check():
    with pytest.raises(ValueError):
        h_generators('A4', 16)
    with pytest.raises(ValueError):
        h_generators('S3', 12)


def test_d8_rotation():
    hg = h_generators('D8', 16)
    k = d8_rotation(hg)
    assert k.order() == 4
    assert k in group_closure([hg['g'], hg['h'], hg['sigma']])


def test_semiregular_centralizer_commutes():
    hg = h_generators('A4', 24)
    gens = [hg['g'], hg['h'], hg['sigma']]
    for c in semiregular_centralizer(gens):
        for x in gens:
            assert c.commutes(x)
    # 两个正则轨道: |C| = 12^2 * 2
    assert PermGroup(semiregular_centralizer(gens), 24).order() == 12 * 12 * 2


def test_wreath_index_a4():
    data = wreath_centralizer('A4', 72)
    assert data.G36.order() == 24 ** 6 * factorial(6)
    assert data.G36.order() // data.pi1_G.order() == 64
    assert len(data.transversal) == 64
    for t in data.transversal:
        assert data.G36.contains(t)


def test_wreath_d8():
    data = wreath_centralizer('D8', 72)
    assert len(data.transversal) == 1
    assert data.G36.order() == data.pi1_G.order()


def _small_groups():
    hg = h_generators('A4', 24)
    return [PermGroup([Permutation.parse('(1,2)', 4), Permutation.parse('(1,2,3,4)', 4)]),
            PermGroup(semiregular_centralizer([hg['g'], hg['h'], hg['sigma']]), 24),
            PermGroup([Permutation.parse('(1,2,3)', 6)]),
            PermGroup([], 5)]


@pytest.mark.parametrize('block_size', [1, 4, 1 << 16])
def test_array_blocks_list_each_element_once(block_size):
    for group in _small_groups():
        rows = [tuple(int(v) + 1 for v in row) for block in group.array_blocks(block_size) for row in block]
        assert len(rows) == group.order()
        assert set(rows) == {p.images for p in group.elements()}


@pytest.mark.parametrize('order', [2, 3, 4, 6])
def test_iter_fixed_point_free(order):
    for group in _small_groups():
        expected = {p for p in group.elements() if p.order() == order and is_fixed_point_free(p)}
        found = list(group.iter_fixed_point_free(order))
        assert len(found) == len(expected)
        assert set(found) == expected


def test_iter_fixed_point_free_budget():
    group = _small_groups()[1]
    with pytest.raises(BudgetExceededError):
        list(group.iter_fixed_point_free(2, limit=10))


def test_random_element_leaves_sympy_state_alone():
    group = _small_groups()[1]
    sympy_random.seed(1)
    state = sympy_random.rng.getstate()
    first = [group.random_element(seed=3)] + [group.random_element() for _ in range(5)]
    assert sympy_random.rng.getstate() == state
    sympy_random.seed(99)
    again = [group.random_element(seed=3)] + [group.random_element() for _ in range(5)]
    assert again == first
    assert all(group.contains(x) for x in first)


if __name__ == "__main__":
    test_parse_and_format()
    test_product_is_left_to_right()
    test_action_is_right_action()
    test_order_and_cycle_type()
    test_conjugating_element()
    test_natural_lift_and_blocks()
    test_group_orders()
    test_hamming_automorphisms()
    for args in [('A4', 12, 12), ('A4', 24, 12), ('D8', 8, 8), ('D8', 16, 8)]:
        test_h_generators(*args)
    test_h_generators_degree_check()
    test_d8_rotation()
    test_semiregular_centralizer_commutes()
    test_wreath_index_a4()
    test_wreath_d8()
    for size in (1, 4, 1 << 16):
        test_array_blocks_list_each_element_once(size)
    for k in (2, 3, 4, 6):
        test_iter_fixed_point_free(k)
    test_iter_fixed_point_free_budget()
    test_random_element_leaves_sympy_state_alone()
    logger.info("permgrp 测试通过")
