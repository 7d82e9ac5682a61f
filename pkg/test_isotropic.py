import logging

import pytest

from isotropic import (FormSpace, brute_force_max_isotropic, count_lagrangians_f2, count_max_isotropic,
                       enumerate_max_isotropic, isotropic_point_count, isotropic_points,
                       max_isotropic_through, subspace_key)
from search_config import BudgetExceededError, InvariantViolation

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


def unitary_space(m):
    n = 2 * m
    return FormSpace([[1 if i == j else 0 for j in range(n)] for i in range(n)], field='F4')


def symplectic_space(m):
    n = 2 * m
    gram = [[0] * n for _ in range(n)]
    for i in range(m):
        gram[2 * i][2 * i + 1] = gram[2 * i + 1][2 * i] = 1
    return FormSpace(gram, field='F2')


def test_form_validation():
    with pytest.raises(InvariantViolation):
        FormSpace([[1, 0], [0, 0]], field='F4')
    with pytest.raises(InvariantViolation):
        FormSpace([[0, 2], [2, 0]], field='F4')
    with pytest.raises(InvariantViolation):
        FormSpace([[1, 0], [0, 1]], field='F2')
    with pytest.raises(ValueError):
        FormSpace([[1]], field='F8')


@pytest.mark.parametrize('m,expected', [(1, 3), (2, 27)])
def test_unitary_counts_brute_force(m, expected):
    space = unitary_space(m)
    streamed = list(enumerate_max_isotropic(space))
    assert len(streamed) == expected
    assert len(brute_force_max_isotropic(space)) == expected
    keys = {subspace_key(U, space.dim) for U in streamed}
    assert len(keys) == expected
    assert all(space.is_totally_isotropic(U) for U in streamed)


def test_unitary_count_m3():
    assert sum(1 for _ in enumerate_max_isotropic(unitary_space(3))) == 891


def test_count_formulas():
    assert [count_max_isotropic(m) for m in range(1, 6)] == [3, 27, 891, 114939, 58963707]
    assert [count_lagrangians_f2(2 * m) for m in range(1, 5)] == [3, 15, 135, 2295]
    with pytest.raises(ValueError):
        count_lagrangians_f2(3)


@pytest.mark.parametrize('m', [1, 2, 3])
def test_symplectic_lagrangians(m):
    space = symplectic_space(m)
    found = list(enumerate_max_isotropic(space))
    assert len(found) == count_lagrangians_f2(2 * m)
    assert len({subspace_key(U, space.dim) for U in found}) == len(found)


def test_isotropic_points():
    assert [isotropic_point_count(n) for n in (2, 4, 10)] == [3, 45, 174933]
    for m in (1, 2):
        space = unitary_space(m)
        points = list(isotropic_points(space))
        assert len(points) == isotropic_point_count(2 * m)
        assert all(space.form(p, p) == 0 for p in points)


def test_isotropic_point_shards():
    space = unitary_space(2)
    full = list(isotropic_points(space))
    merged = []
    for i in range(3):
        merged.extend(isotropic_points(space, shard=(i, 3)))
    assert sorted(merged) == sorted(full)
    assert len(merged) == len(full)


def test_max_isotropic_through_point():
    space = unitary_space(2)
    total = 0
    for p in isotropic_points(space):
        through = list(max_isotropic_through(space, p))
        assert len(through) == count_max_isotropic(1)
        for U in through:
            assert U[0] == p and space.is_totally_isotropic(U)
        total += len(through)
    # 每个二维迷向子空间含 5 个点
    assert total == 27 * 5


def test_enumeration_budget(monkeypatch):
    monkeypatch.setenv('SDSEARCH_BUDGET', '10')
    with pytest.raises(BudgetExceededError):
        next(enumerate_max_isotropic(unitary_space(2)))


if __name__ == "__main__":
    test_form_validation()
    test_unitary_counts_brute_force(1, 3)
    test_unitary_counts_brute_force(2, 27)
    test_unitary_count_m3()
    test_count_formulas()
    for m in (1, 2, 3):
        test_symplectic_lagrangians(m)
    test_isotropic_points()
    test_isotropic_point_shards()
    test_max_isotropic_through_point()
    logger.info("isotropic 测试通过")
