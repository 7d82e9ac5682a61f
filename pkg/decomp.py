import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

from gf2codes import BinaryCode, combine, intersect_codes, kernel_combinations, parity
from gf4 import LinearF4Code
from permgrp import Permutation, act_on_vector, is_automorphism
from search_config import InvariantViolation

logger = logging.getLogger(__name__)

__all__ = [
    'CycleStructure', 'MaschkeSplit', 'cycle_structure', 'fixed_code', 'averaging_image',
    'even_subcode', 'maschke_split', 'collapse_vector', 'blow_up_vector', 'collapse_code',
    'blow_up_code', 'pi1', 'pi2', 'pi3', 'pi1_inverse', 'pi2_inverse', 'pi3_inverse',
    'f4_identify', 'f4_expand', 'p_multiply', 'map_E_to_F4', 'f4_to_binary',
]


@dataclass(frozen=True)
class CycleStructure:
    """g 的轮换, 每个轮换从最小点开始按 (i, g i, g^2 i, ...) 排列, 轮换按最小点排序"""
    perm: Permutation
    cycles: Tuple[Tuple[int, ...], ...]

    @property
    def cycle_length(self) -> int:
        lengths = {len(c) for c in self.cycles}
        if len(lengths) != 1:
            raise ValueError(f"轮换长度不一致: {sorted(lengths)}")
        return lengths.pop()

    @property
    def count(self) -> int:
        return len(self.cycles)


@dataclass(frozen=True)
class MaschkeSplit:
    fixed: BinaryCode
    even: BinaryCode


def cycle_structure(g: Permutation) -> CycleStructure:
    return CycleStructure(g, tuple(g.cycles(include_fixed=True)))


def _check_invariant(code: BinaryCode, g: Permutation) -> None:
    if not is_automorphism(code, g):
        raise ValueError(f"not invariant: 码在 {g} 下不变性不成立")


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p ** 0.5) + 1))


def averaging_image(code: BinaryCode, g: Permutation) -> BinaryCode:
    """C * (1 + g + ... + g^{p-1})"""
    p = g.order()
    rows = []
    for r in code.rows:
        acc, x = 0, r
        for _ in range(p):
            acc ^= x
            x = act_on_vector(x, g)
        rows.append(acc)
    return BinaryCode(code.length, rows)


def fixed_code(code: BinaryCode, g: Permutation) -> BinaryCode:
    """C(g) = {c in C | c^g = c}

    按核计算; p 为奇素数时与平均像 C*(1+g+...+g^{p-1}) 比对。
    """
    _check_invariant(code, g)
    p = g.order()
    if p > 1 and not _is_prime(p):
        raise ValueError(f"g 的阶 {p} 不是素数")
    rows = list(code.rows)
    diffs = [r ^ act_on_vector(r, g) for r in rows]
    fixed = BinaryCode(code.length, [combine(rows, m) for m in kernel_combinations(diffs)])
    if p % 2 == 1 and p > 1:
        image = averaging_image(code, g)
        if image != fixed:
            raise InvariantViolation(f"C(g) 的核与平均像不一致 (dim {fixed.dimension} vs {image.dimension})")
    return fixed


def even_subcode(code: BinaryCode, g: Permutation) -> BinaryCode:
    """E(g): 在 g 的每个轮换上重量为偶数的码字

    p 为奇素数时与 C*(g + ... + g^{p-1}) 比对。
    """
    _check_invariant(code, g)
    cs = cycle_structure(g)
    masks = [sum(1 << (pt - 1) for pt in cyc) for cyc in cs.cycles]
    rows = list(code.rows)
    # 每行在各轮换上的奇偶性拼成一个向量
    columns = []
    for r in rows:
        v = 0
        for idx, m in enumerate(masks):
            if parity(r & m):
                v |= 1 << idx
        columns.append(v)
    even = BinaryCode(code.length, [combine(rows, m) for m in kernel_combinations(columns)])
    p = g.order()
    if p % 2 == 1 and p > 1:
        image_rows = []
        for r in rows:
            acc, x = 0, act_on_vector(r, g)
            for _ in range(p - 1):
                acc ^= x
                x = act_on_vector(x, g)
            image_rows.append(acc)
        image = BinaryCode(code.length, image_rows)
        if image != even:
            raise InvariantViolation(f"E(g) 的偶重定义与 C*(g+...+g^{{p-1}}) 不一致")
    return even


def maschke_split(code: BinaryCode, g: Permutation) -> MaschkeSplit:
    """C = C(g) ⊕ E(g), g 为奇素数阶

    Raises:
        InvariantViolation: 直和分解或维数公式不成立
    """
    fixed = fixed_code(code, g)
    even = even_subcode(code, g)
    p = g.order()
    if p % 2 == 1:
        if intersect_codes(fixed, even).dimension != 0:
            raise InvariantViolation("C(g) ∩ E(g) ≠ 0")
        if fixed.dimension + even.dimension != code.dimension:
            raise InvariantViolation(
                f"dim C(g) + dim E(g) = {fixed.dimension + even.dimension} != dim C = {code.dimension}")
        cs = cycle_structure(g)
        if 2 * code.dimension == code.length and all(len(c) == p for c in cs.cycles):
            expected = (p - 1) * cs.count // 2
            if even.dimension != expected:
                raise InvariantViolation(f"dim E(g) = {even.dimension}, 期望 (p-1)c/2 = {expected}")
    return MaschkeSplit(fixed, even)


# ---------------------------------------------------------------- pi 映射

def collapse_vector(v: int, n: int, block: int) -> int:
    """把长度 n 的向量按连续的 block 个坐标收缩为一个坐标"""
    if n % block:
        raise ValueError(f"长度 {n} 不是 {block} 的倍数")
    full = (1 << block) - 1
    out = 0
    for a in range(n // block):
        chunk = (v >> (a * block)) & full
        if chunk == full:
            out |= 1 << a
        elif chunk:
            raise ValueError(f"not in fixed space: 第 {a + 1} 块不是常值")
    return out


def blow_up_vector(v: int, m: int, block: int) -> int:
    full = (1 << block) - 1
    out = 0
    for a in range(m):
        if (v >> a) & 1:
            out |= full << (a * block)
    return out


def collapse_code(code: BinaryCode, block: int) -> BinaryCode:
    n = code.length
    return BinaryCode(n // block, [collapse_vector(r, n, block) for r in code.rows])


def blow_up_code(code: BinaryCode, block: int) -> BinaryCode:
    return BinaryCode(code.length * block, [blow_up_vector(r, code.length, block) for r in code.rows])


def pi1(v: int, n: int = 72) -> int:
    """F2^72 中在 g 的轮换 {2a-1, 2a} 上为常值的向量 -> F2^36"""
    return collapse_vector(v, n, 2)


def pi2(v: int, n: int = 72) -> int:
    """在块 {4a+1, ..., 4a+4} 上为常值的向量 -> F2^18"""
    return collapse_vector(v, n, 4)


def pi3(v: int, n: int = 36) -> int:
    """F2^36 中在 {2a-1, 2a} 上为常值的向量 -> F2^18, pi2 = pi3 ∘ pi1"""
    return collapse_vector(v, n, 2)


def pi1_inverse(v: int, m: int = 36) -> int:
    return blow_up_vector(v, m, 2)


def pi2_inverse(v: int, m: int = 18) -> int:
    return blow_up_vector(v, m, 4)


def pi3_inverse(v: int, m: int = 18) -> int:
    return blow_up_vector(v, m, 2)


# ---------------------------------------------------------------- P ≅ F4

# (c_i, c_{gi}, c_{g^2 i}) -> F4, 多项式 a0 + a1 x + a2 x^2
_IDENTIFY = {(0, 0, 0): 0, (0, 1, 1): 1, (1, 1, 0): 2, (1, 0, 1): 3}
_EXPAND = {v: k for k, v in _IDENTIFY.items()}

Block = Union[str, Sequence[int]]


def _as_bits(block: Block) -> Tuple[int, int, int]:
    if isinstance(block, str):
        if len(block) != 3 or any(ch not in '01' for ch in block):
            raise ValueError(f"非法的 3 位块: {block!r}")
        return tuple(int(ch) for ch in block)
    bits = tuple(int(b) for b in block)
    if len(bits) != 3 or any(b not in (0, 1) for b in bits):
        raise ValueError(f"非法的 3 位块: {block!r}")
    return bits


def f4_identify(block: Block) -> int:
    bits = _as_bits(block)
    if sum(bits) % 2:
        raise ValueError(f"not in P: 块 {bits} 重量为奇数")
    return _IDENTIFY[bits]


def f4_expand(e: int) -> Tuple[int, int, int]:
    if e not in _EXPAND:
        raise ValueError(f"非法的 GF(4) 元素: {e}")
    return _EXPAND[e]


def p_multiply(a: Block, b: Block) -> Tuple[int, int, int]:
    """F2[x]/(x^3 - 1) 中的乘法"""
    a, b = _as_bits(a), _as_bits(b)
    out = [0, 0, 0]
    for i in range(3):
        for j in range(3):
            out[(i + j) % 3] ^= a[i] & b[j]
    return tuple(out)


def _order3_cycles(g: Permutation) -> List[Tuple[int, ...]]:
    cs = cycle_structure(g)
    if any(len(c) != 3 for c in cs.cycles):
        raise ValueError(f"g 必须是无不动点的 3 阶元, 轮换型 {[len(c) for c in cs.cycles]}")
    return list(cs.cycles)


def map_E_to_F4(even_code: BinaryCode, g: Permutation) -> LinearF4Code:
    """E(g) -> F4^c, 对每个轮换 (i, g i, g^2 i) 应用 P ≅ F4

    g 在像上作用为乘 conj(w), 因此像是 F4-线性的。
    """
    cycles = _order3_cycles(g)
    vectors = []
    for r in even_code.rows:
        vec = []
        for cyc in cycles:
            bits = tuple((r >> (pt - 1)) & 1 for pt in cyc)
            if sum(bits) % 2:
                raise ValueError(f"码字在轮换 {cyc} 上重量为奇数")
            vec.append(_IDENTIFY[bits])
        vectors.append(tuple(vec))
    image = LinearF4Code(len(cycles), vectors)
    if 2 * image.dimension != even_code.dimension:
        raise InvariantViolation(
            f"F4 维数 {image.dimension} 与 dim_F2 E(g) / 2 = {even_code.dimension / 2} 不符")
    return image


def f4_to_binary(vec: Sequence[int], g: Permutation) -> int:
    """map_E_to_F4 的逆 (逐坐标展开为 3 位块)"""
    cycles = _order3_cycles(g)
    if len(vec) != len(cycles):
        raise ValueError(f"长度 {len(vec)} != 轮换数 {len(cycles)}")
    out = 0
    for e, cyc in zip(vec, cycles):
        for bit, pt in zip(f4_expand(e), cyc):
            if bit:
                out |= 1 << (pt - 1)
    return out
