import logging
from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from operator import xor
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from search_config import SEARCH_CONFIG, BudgetExceededError, check_budget

logger = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1
# 字节 popcount 查找表 (numpy 1.24 没有 bitwise_count)
_POPCOUNT_LUT = np.array([bin(i).count('1') for i in range(256)], dtype=np.uint8)


def popcount(x: int) -> int:
    return bin(x).count('1')


def parity(x: int) -> int:
    return bin(x).count('1') & 1


def bit_positions(v: int) -> List[int]:
    """返回 v 中为 1 的位 (0-based)"""
    out = []
    while v:
        low = v & -v
        out.append(low.bit_length() - 1)
        v ^= low
    return out


def vector_from_string(text: str) -> int:
    """'0110' -> 位向量, 第 i 个字符对应坐标 i+1 (第 i 位)"""
    v = 0
    for i, ch in enumerate(text):
        if ch == '1':
            v |= 1 << i
        elif ch != '0':
            raise ValueError(f"非法字符 {ch!r}")
    return v


def vector_to_string(v: int, n: int) -> str:
    return ''.join('1' if (v >> i) & 1 else '0' for i in range(n))


def rref(rows: Iterable[int]) -> List[int]:
    """GF(2) 行简化阶梯形

    主元为每行最低的 1 位, 主元列在其它行中全为 0, 行按主元升序排列。
    对同一个行空间结果唯一。
    """
    reduced: List[Tuple[int, int]] = []
    for r in rows:
        for pm, b in reduced:
            if r & pm:
                r ^= b
        if r:
            pm = r & -r
            reduced = [(q, b ^ r) if b & pm else (q, b) for q, b in reduced]
            reduced.append((pm, r))
    reduced.sort()
    return [b for _, b in reduced]


def reduce_vector(rows: Sequence[int], v: int) -> int:
    """用 RREF 行约化 v, 返回余项 (v 在行空间中当且仅当余项为 0)"""
    for b in rows:
        pm = b & -b
        if v & pm:
            v ^= b
    return v


def solve_affine(columns: Sequence[int], target: int) -> Tuple[Optional[int], List[int]]:
    """求所有 x 使得 XOR_{i in x} columns[i] == target

    Returns:
        (特解掩码或 None, 齐次解空间的基掩码列表)
    """
    basis: List[Tuple[int, int, int]] = []
    kernel: List[int] = []
    for i, c in enumerate(columns):
        v, m = c, 1 << i
        for pm, bv, bm in basis:
            if v & pm:
                v ^= bv
                m ^= bm
        if v:
            basis.append((v & -v, v, m))
        else:
            kernel.append(m)
    v, m = target, 0
    for pm, bv, bm in basis:
        if v & pm:
            v ^= bv
            m ^= bm
    if v:
        return None, kernel
    return m, kernel


def kernel_combinations(columns: Sequence[int]) -> List[int]:
    """columns 的线性相关组合 (掩码), 即映射 x -> sum x_i columns[i] 的核"""
    return solve_affine(columns, 0)[1]


def span(basis: Sequence[int]) -> Iterator[int]:
    """按 Gray 码枚举张成空间中的全部向量 (含 0)"""
    v = 0
    yield v
    for idx in range(1, 1 << len(basis)):
        v ^= basis[(idx & -idx).bit_length() - 1]
        yield v


def combine(basis: Sequence[int], mask: int) -> int:
    v = 0
    for i in bit_positions(mask):
        v ^= basis[i]
    return v


@dataclass(frozen=True)
class WeightProfile:
    counts: Dict[int, int]
    min_nonzero: Optional[int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())


@dataclass(frozen=True)
class DistanceResult:
    """最小距离计算结果; bound_hit 表示在上界处提前终止"""
    value: int
    bound_hit: bool = False
    exact: bool = True


class BinaryCode:
    """GF(2) 上的线性码, 生成矩阵以位向量保存并规范化为 RREF

    坐标 i (1-based) 对应第 i-1 位。
    """

    __slots__ = ('length', 'rows', '_hash')

    def __init__(self, length: int, rows: Iterable[int] = (), canonical: bool = False):
        if length <= 0:
            raise ValueError(f"码长必须为正: {length}")
        rows = tuple(rows) if canonical else tuple(rref(rows))
        limit = 1 << length
        for r in rows:
            if r < 0 or r >= limit:
                raise ValueError(f"生成行超出码长 {length}")
        self.length = length
        self.rows = rows
        self._hash = hash((length, rows))

    @property
    def dimension(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> List[int]:
        return [(r & -r).bit_length() - 1 for r in self.rows]

    @classmethod
    def from_strings(cls, rows: Iterable[str]) -> 'BinaryCode':
        rows = list(rows)
        if not rows:
            raise ValueError("需要至少一行来确定码长")
        n = len(rows[0])
        return cls(n, [vector_from_string(r) for r in rows])

    @classmethod
    def from_matrix(cls, matrix) -> 'BinaryCode':
        m = np.asarray(matrix, dtype=np.int64) % 2
        n = m.shape[1]
        rows = [sum(1 << j for j in range(n) if row[j]) for row in m]
        return cls(n, rows)

    def to_matrix(self) -> np.ndarray:
        m = np.zeros((self.dimension, self.length), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in bit_positions(r):
                m[i, j] = 1
        return m

    def to_strings(self) -> List[str]:
        return [vector_to_string(r, self.length) for r in self.rows]

    def contains(self, v: int) -> bool:
        return reduce_vector(self.rows, v) == 0

    def contains_code(self, other: 'BinaryCode') -> bool:
        return other.length == self.length and all(self.contains(r) for r in other.rows)

    def reduce(self, v: int) -> int:
        return reduce_vector(self.rows, v)

    def codewords(self) -> Iterator[int]:
        return span(self.rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, BinaryCode) and self.length == other.length and self.rows == other.rows

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"BinaryCode([{self.length},{self.dimension}])"


def _check_lengths(a: BinaryCode, b: BinaryCode) -> None:
    if a.length != b.length:
        raise ValueError(f"码长不一致: {a.length} != {b.length}")


def dual(code: BinaryCode) -> BinaryCode:
    """标准内积下的对偶码"""
    n = code.length
    pivot_bits = 0
    for r in code.rows:
        pivot_bits |= r & -r
    out = []
    for f in range(n):
        fb = 1 << f
        if pivot_bits & fb:
            continue
        v = fb
        for r in code.rows:
            if r & fb:
                v |= r & -r
        out.append(v)
    return BinaryCode(n, out)


def is_self_orthogonal(code: BinaryCode) -> bool:
    rows = code.rows
    for i, r in enumerate(rows):
        if parity(r):
            return False
        for s in rows[i + 1:]:
            if parity(r & s):
                return False
    return True


def is_self_dual(code: BinaryCode) -> bool:
    return 2 * code.dimension == code.length and is_self_orthogonal(code)


def is_doubly_even(code: BinaryCode) -> bool:
    """所有生成行重量 ≡ 0 (mod 4) 且两两正交"""
    rows = code.rows
    for i, r in enumerate(rows):
        if popcount(r) % 4:
            return False
        for s in rows[i + 1:]:
            if parity(r & s):
                return False
    return True


def sum_codes(a: BinaryCode, b: BinaryCode) -> BinaryCode:
    _check_lengths(a, b)
    return BinaryCode(a.length, a.rows + b.rows)


def intersect_codes(a: BinaryCode, b: BinaryCode) -> BinaryCode:
    _check_lengths(a, b)
    return dual(sum_codes(dual(a), dual(b)))


def direct_sum(a: BinaryCode, b: BinaryCode) -> BinaryCode:
    shift = a.length
    return BinaryCode(a.length + b.length, list(a.rows) + [r << shift for r in b.rows])


def _rows_to_words(rows: Sequence[int], nwords: int) -> np.ndarray:
    return np.array([[(r >> (64 * j)) & MASK64 for j in range(nwords)] for r in rows],
                    dtype=np.uint64).reshape(len(rows), nwords)


def _popcount_rows(block: np.ndarray) -> np.ndarray:
    bytes_view = np.ascontiguousarray(block).view(np.uint8).reshape(block.shape[0], -1)
    return _POPCOUNT_LUT[bytes_view].sum(axis=1, dtype=np.int64)


def iter_weight_chunks(code: BinaryCode, chunk_bits: Optional[int] = None) -> Iterator[np.ndarray]:
    """分块枚举全部码字的重量 (含零码字)

    低 chunk_bits 个生成行预先展开成表, 高位部分按 Gray 码逐块异或。
    """
    chunk_bits = chunk_bits or SEARCH_CONFIG['gf2']['chunk_bits']
    k = code.dimension
    nwords = (code.length + 63) // 64
    arr = _rows_to_words(code.rows, nwords)
    lo = min(k, chunk_bits)
    table = np.zeros((1, nwords), dtype=np.uint64)
    for i in range(lo):
        table = np.concatenate([table, table ^ arr[i]], axis=0)
    high = arr[lo:]
    offset = np.zeros(nwords, dtype=np.uint64)
    yield _popcount_rows(table)
    for idx in range(1, 1 << (k - lo)):
        offset = offset ^ high[(idx & -idx).bit_length() - 1]
        yield _popcount_rows(table ^ offset)


def weight_profile(code: BinaryCode, limit: Optional[int] = None) -> WeightProfile:
    """完全枚举得到的重量分布

    Raises:
        BudgetExceededError: 维数超过枚举上限 ("enumeration too large")
    """
    limit = SEARCH_CONFIG['gf2']['enumeration_limit'] if limit is None else limit
    if code.dimension > limit:
        raise BudgetExceededError(
            f"enumeration too large: 维数 {code.dimension} 超过上限 {limit}",
            {'dimension': code.dimension, 'limit': limit})
    check_budget(1 << code.dimension, '码字枚举')
    counts = np.zeros(code.length + 1, dtype=np.int64)
    for weights in iter_weight_chunks(code):
        counts += np.bincount(weights, minlength=code.length + 1)
    hist = {int(w): int(c) for w, c in enumerate(counts) if c}
    nonzero = [w for w in hist if w > 0]
    return WeightProfile(hist, min(nonzero) if nonzero else None)


def min_distance_result(code: BinaryCode, upper_bound: Optional[int] = None) -> DistanceResult:
    """最小距离, 可在找到重量 ≤ upper_bound 的码字时提前返回

    小维数时直接用 numpy 全枚举; 否则在系统型生成矩阵上按组合数 t 递增枚举,
    t 个信息位非零的码字重量至少为 t, 据此剪枝。
    """
    k = code.dimension
    if k == 0:
        raise ValueError("no nonzero codewords")

    if k <= SEARCH_CONFIG['gf2']['full_enum_bits']:
        best = code.length + 1
        for weights in iter_weight_chunks(code):
            w = weights[weights > 0]
            if w.size:
                best = min(best, int(w.min()))
            if upper_bound is not None and best <= upper_bound:
                return DistanceResult(best, bound_hit=True, exact=False)
        return DistanceResult(best, bound_hit=upper_bound is not None and best <= upper_bound)

    rows = code.rows
    best = min(popcount(r) for r in rows)
    examined = 0
    budget_total = 0
    for t in range(1, k + 1):
        if best <= t:
            break
        if upper_bound is not None and best <= upper_bound:
            return DistanceResult(best, bound_hit=True, exact=False)
        budget_total += _binom(k, t)
        check_budget(budget_total, f'最小距离组合枚举 (t={t})')
        for combo in combinations(rows, t):
            w = popcount(reduce(xor, combo))
            examined += 1
            if w < best:
                best = w
                if upper_bound is not None and best <= upper_bound:
                    logger.debug(f"在 t={t} 处找到重量 {best} 的码字, 提前终止")
                    return DistanceResult(best, bound_hit=True, exact=False)
    return DistanceResult(best, bound_hit=upper_bound is not None and best <= upper_bound)


def min_distance(code: BinaryCode, upper_bound: Optional[int] = None) -> int:
    return min_distance_result(code, upper_bound).value


def has_distance_at_least(code: BinaryCode, bound: int) -> bool:
    """d(C) ≥ bound 的判定, 找到更轻的码字即返回"""
    if code.dimension == 0:
        return True
    return min_distance_result(code, bound - 1).value >= bound


def _binom(n: int, t: int) -> int:
    out = 1
    for i in range(t):
        out = out * (n - i) // (i + 1)
    return out


# ---------------------------------------------------------------- 构造

def zero_code(n: int) -> BinaryCode:
    return BinaryCode(n, [])


def full_space(n: int) -> BinaryCode:
    return BinaryCode(n, [1 << i for i in range(n)], canonical=True)


def repetition_code(n: int) -> BinaryCode:
    return BinaryCode(n, [(1 << n) - 1], canonical=True)


def even_weight_code(n: int) -> BinaryCode:
    return BinaryCode(n, [(1 << i) | (1 << (i + 1)) for i in range(n - 1)])


def hamming8() -> BinaryCode:
    """扩展 Hamming [8,4,4] 码"""
    return BinaryCode.from_strings(['11110000', '00111100', '00001111', '01010101'])


def quadratic_residues(p: int) -> List[int]:
    return sorted({(x * x) % p for x in range(1, p)})


def golay24() -> BinaryCode:
    """扩展 Golay [24,12,8] 码, 由长度 23 的二次剩余码加奇偶校验位得到

    坐标 i (1..23) 对应 Z/23 中的 i-1, 坐标 24 对应无穷远点。
    """
    p = 23
    q = set(quadratic_residues(p))
    nonres = set(range(1, p)) - q
    for support in (q, nonres, q | {0}, nonres | {0}):
        shifts = [sum(1 << ((s + t) % p) for s in support) for t in range(p)]
        cyclic = BinaryCode(p, shifts)
        if cyclic.dimension != 12:
            continue
        if min_distance(cyclic) != 7:
            continue
        extended = [r | (parity(r) << p) for r in cyclic.rows]
        code = BinaryCode(p + 1, extended)
        logger.debug(f"Golay 码由支撑集 {sorted(support)} 的循环移位生成")
        return code
    raise RuntimeError("无法构造 [23,12,7] 二次剩余码")
