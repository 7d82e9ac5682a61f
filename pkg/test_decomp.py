import logging

import numpy as np
import pytest

from decomp import (averaging_image, blow_up_code, collapse_code, collapse_vector, even_subcode,
                    f4_expand, f4_identify, f4_to_binary, fixed_code, map_E_to_F4, maschke_split,
                    p_multiply, pi1, pi1_inverse, pi2, pi2_inverse, pi3)
from gf2codes import BinaryCode, direct_sum, golay24, hamming8, repetition_code
from gf4 import MUL, is_hermitian_self_dual
from permgrp import Permutation, act_on_code, act_on_vector
from prepare_desk_data import golay_s3_frame

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

G12 = Permutation.from_cycles([(1, 3, 5), (2, 4, 6), (7, 9, 11), (8, 10, 12)], 12)


def _i2_power(k):
    code = repetition_code(2)
    for _ in range(k - 1):
        code = direct_sum(code, repetition_code(2))
    return code


def _block_vector(r, g):
    return tuple(f4_identify(tuple((r >> (pt - 1)) & 1 for pt in cyc)) for cyc in g.cycles())


def test_maschke_split_i2_power():
    code = _i2_power(6)
    split = maschke_split(code, G12)
    assert split.fixed.dimension == 2
    assert split.even.dimension == 4
    assert averaging_image(code, G12) == split.fixed


def test_maschke_split_random_conjugates():
    rng = np.random.default_rng(1)
    code = _i2_power(6)
    for _ in range(20):
        p = Permutation([int(x) + 1 for x in rng.permutation(12)])
        split = maschke_split(act_on_code(code, p), G12.conjugate(p))
        assert split.fixed.dimension + split.even.dimension == 6
        assert split.even.dimension == 4


def test_fixed_code_requires_invariance():
    with pytest.raises(ValueError):
        fixed_code(hamming8(), Permutation.parse('(1,2,3)', 8))


def test_fixed_code_of_involution():
    code = _i2_power(4)
    g = Permutation.parse('(1,3)(2,4)(5,7)(6,8)', 8)
    fixed = fixed_code(code, g)
    assert fixed == BinaryCode(8, [0b00001111, 0b11110000])
    assert even_subcode(code, g).dimension == 2


def test_collapse_and_blow_up():
    code = hamming8()
    blown = blow_up_code(code, 2)
    assert blown.length == 16
    assert collapse_code(blown, 2) == code
    with pytest.raises(ValueError):
        collapse_vector(0b01, 2, 2)
    with pytest.raises(ValueError):
        collapse_vector(0b1, 3, 2)


def test_pi_maps_compose():
    rng = np.random.default_rng(2)
    for _ in range(50):
        v = int(rng.integers(0, 1 << 18))
        x = pi2_inverse(v)
        assert pi2(x) == v
        assert pi3(pi1(x)) == pi2(x)
        y = pi1_inverse(pi1(x), 36)
        assert y == x


def test_f4_identification():
    assert [f4_identify(s) for s in ('000', '011', '110', '101')] == [0, 1, 2, 3]
    with pytest.raises(ValueError):
        f4_identify('100')
    for a in range(4):
        assert f4_identify(f4_expand(a)) == a
        for b in range(4):
            prod = p_multiply(f4_expand(a), f4_expand(b))
            assert f4_identify(prod) == MUL[a][b]


def test_g_acts_as_conj_omega():
    frame = golay_s3_frame()
    split = maschke_split(frame.code, frame.g)
    for r in split.even.rows:
        before = _block_vector(r, frame.g)
        after = _block_vector(act_on_vector(r, frame.g), frame.g)
        assert after == tuple(MUL[3][a] for a in before)


def test_hexacode_from_golay():
    frame = golay_s3_frame()
    split = maschke_split(frame.code, frame.g)
    assert split.fixed.dimension == 4 and split.even.dimension == 8
    image = map_E_to_F4(split.even, frame.g)
    assert image.length == 8 and image.dimension == 4
    assert is_hermitian_self_dual(image)
    for v in image.rows:
        assert split.even.contains(f4_to_binary(v, frame.g))


def test_map_requires_order3():
    with pytest.raises(ValueError):
        map_E_to_F4(golay24(), Permutation.parse('(1,2)', 24))


if __name__ == "__main__":
    test_maschke_split_i2_power()
    test_maschke_split_random_conjugates()
    test_fixed_code_requires_invariance()
    test_fixed_code_of_involution()
    test_collapse_and_blow_up()
    test_pi_maps_compose()
    test_f4_identification()
    test_g_acts_as_conj_omega()
    test_hexacode_from_golay()
    test_map_requires_order3()
    logger.info("decomp 测试通过")
