import logging
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from math import factorial
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from gf2codes import BinaryCode, DistanceResult, combine, dual, kernel_combinations, parity, popcount, rref
from permgrp import Permutation
from search_config import SEARCH_CONFIG, InvariantViolation

logger = logging.getLogger(__name__)

# GF(4) 元素编码: 值 = hi*2 + lo, 元素 = lo + hi*w
ZERO, ONE, OMEGA, OMEGA_BAR = 0, 1, 2, 3
MUL = ((0, 0, 0, 0),
       (0, 1, 2, 3),
       (0, 2, 3, 1),
       (0, 3, 1, 2))
INV = (None, 1, 3, 2)
CONJ = (0, 1, 3, 2)
TRACE = (0, 0, 1, 1)
SYMBOLS = '01wW'
NONZERO = (1, 2, 3)

MUL_TABLE = np.array(MUL, dtype=np.uint8)
CONJ_TABLE = np.array(CONJ, dtype=np.uint8)


def f4_mul(a: int, b: int) -> int:
    return MUL[a][b]


def f4_inv(a: int) -> int:
    if a == 0:
        raise ZeroDivisionError("GF(4) 中 0 不可逆")
    return INV[a]


def f4_conj(a: int) -> int:
    return CONJ[a]


def parse_f4_vector(text: str) -> Tuple[int, ...]:
    try:
        return tuple(SYMBOLS.index(ch) for ch in text)
    except ValueError:
        raise ValueError(f"非法的 GF(4) 符号串: {text!r}")


def format_f4_vector(vec: Sequence[int]) -> str:
    return ''.join(SYMBOLS[x] for x in vec)


def vec_add(u: Sequence[int], v: Sequence[int]) -> Tuple[int, ...]:
    return tuple(a ^ b for a, b in zip(u, v))


def vec_scale(c: int, u: Sequence[int]) -> Tuple[int, ...]:
    row = MUL[c]
    return tuple(row[a] for a in u)


def vec_conj(u: Sequence[int]) -> Tuple[int, ...]:
    return tuple(CONJ[a] for a in u)


def hermitian_product(u: Sequence[int], v: Sequence[int]) -> int:
    """sum u_i * conj(v_i)"""
    s = 0
    for a, b in zip(u, v):
        s ^= MUL[a][CONJ[b]]
    return s


def symbol_weight(u: Sequence[int]) -> int:
    return sum(1 for a in u if a)


# ---------------------------------------------------------------- 两层打包表示
# 坐标 i 占第 2i 位 (lo) 与第 2i+1 位 (hi)

def pack(vec: Sequence[int]) -> int:
    x = 0
    for i, a in enumerate(vec):
        x |= a << (2 * i)
    return x


def unpack(x: int, n: int) -> Tuple[int, ...]:
    return tuple((x >> (2 * i)) & 3 for i in range(n))


def _lo_mask(n: int) -> int:
    return int('01' * n, 2) if n else 0


def swap_layers(x: int, n: int) -> int:
    lo = _lo_mask(n)
    return ((x & lo) << 1) | ((x >> 1) & lo)


def omega_times(x: int, n: int) -> int:
    """w*(lo + hi w) = hi + (lo+hi) w"""
    lo_m = _lo_mask(n)
    lo = x & lo_m
    hi = (x >> 1) & lo_m
    return hi | ((lo ^ hi) << 1)


def trace_hermitian(x: int, y: int, n: int) -> int:
    """sum Tr(x_i conj(y_i)) = 打包后 parity(x & swap(y))"""
    return parity(x & swap_layers(y, n))


def packed_symbol_weight(x: int, n: int) -> int:
    return popcount((x | (x >> 1)) & _lo_mask(n))


# ---------------------------------------------------------------- 线性码

def f4_rref(rows: Iterable[Sequence[int]], n: int) -> List[Tuple[int, ...]]:
    """GF(4) 上的行简化阶梯形 (主元为最左非零位并归一化为 1)"""
    basis: List[List[int]] = []
    pivots: List[int] = []
    for r in rows:
        r = list(r)
        if len(r) != n:
            raise ValueError(f"行长度 {len(r)} != {n}")
        for p, b in zip(pivots, basis):
            c = r[p]
            if c:
                r = [x ^ MUL[c][y] for x, y in zip(r, b)]
        lead = next((i for i, x in enumerate(r) if x), None)
        if lead is None:
            continue
        inv = INV[r[lead]]
        r = [MUL[inv][x] for x in r]
        for idx, b in enumerate(basis):
            c = b[lead]
            if c:
                basis[idx] = [x ^ MUL[c][y] for x, y in zip(b, r)]
        basis.append(r)
        pivots.append(lead)
    order = sorted(range(len(basis)), key=lambda i: pivots[i])
    return [tuple(basis[i]) for i in order]


class LinearF4Code:
    """GF(4)-线性码, 生成矩阵为规范 RREF"""

    __slots__ = ('length', 'rows', '_hash')

    def __init__(self, length: int, rows: Iterable[Sequence[int]] = ()):
        self.length = length
        self.rows = tuple(f4_rref(rows, length))
        self._hash = hash((length, self.rows))

    @property
    def dimension(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> List[int]:
        return [next(i for i, x in enumerate(r) if x) for r in self.rows]

    def contains(self, vec: Sequence[int]) -> bool:
        v = list(vec)
        for p, r in zip(self.pivots, self.rows):
            c = v[p]
            if c:
                v = [x ^ MUL[c][y] for x, y in zip(v, r)]
        return not any(v)

    def f2_basis(self) -> List[int]:
        """作为 GF(2) 空间的基 (打包表示): 每行 r 及 w*r"""
        out = []
        for r in self.rows:
            out.append(pack(r))
            out.append(pack(vec_scale(OMEGA, r)))
        return out

    def codewords(self) -> Iterator[Tuple[int, ...]]:
        for coeffs in product(range(4), repeat=self.dimension):
            v = (0,) * self.length
            for c, r in zip(coeffs, self.rows):
                if c:
                    v = vec_add(v, vec_scale(c, r))
            yield v

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearF4Code) and self.length == other.length and self.rows == other.rows

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"LinearF4Code([{self.length},{self.dimension}]_4)"


def hermitian_dual(code: LinearF4Code) -> LinearF4Code:
    """sum x_i conj(y_i) = 0 意义下的对偶码"""
    n = code.length
    conj_rows = f4_rref([vec_conj(r) for r in code.rows], n)
    pivots = [next(i for i, x in enumerate(r) if x) for r in conj_rows]
    out = []
    for f in range(n):
        if f in pivots:
            continue
        v = [0] * n
        v[f] = 1
        for p, r in zip(pivots, conj_rows):
            v[p] = r[f]
        out.append(v)
    return LinearF4Code(n, out)


def is_hermitian_self_dual(code: LinearF4Code) -> bool:
    if 2 * code.dimension != code.length:
        return False
    return all(hermitian_product(r, s) == 0 for r in code.rows for s in code.rows)


def f4_min_distance(code: LinearF4Code, abort_at: Optional[int] = None) -> DistanceResult:
    """GF(4) 线性码的最小 Hamming 距离

    在系统型生成矩阵上按非零信息位个数 t 递增枚举 (numpy 向量化),
    第 t 层结束后未见码字重量至少为 t+1。abort_at 给定时, 一旦下界达到
    abort_at 即停止, 此时 value = abort_at 且 exact = False (表示 d ≥ abort_at)。
    """
    k, n = code.dimension, code.length
    if k == 0:
        raise ValueError("no nonzero codewords")
    rows = np.array(code.rows, dtype=np.uint8)
    best = int(min(symbol_weight(r) for r in code.rows))
    for t in range(1, k + 1):
        if best <= t:
            return DistanceResult(best)
        if abort_at is not None and t >= abort_at:
            return DistanceResult(abort_at, exact=False)
        # 第一个系数固定为 1, 标量倍数重量相同
        scalars = np.array([(1,) + s for s in product(NONZERO, repeat=t - 1)], dtype=np.uint8)
        for combo in combinations(range(k), t):
            words = np.zeros((scalars.shape[0], n), dtype=np.uint8)
            for j, ridx in enumerate(combo):
                words ^= MUL_TABLE[scalars[:, j][:, None], rows[ridx][None, :]]
            w = int((words != 0).sum(axis=1).min())
            if w < best:
                best = w
    return DistanceResult(best)


# ---------------------------------------------------------------- 加性码

class AdditiveF4Code:
    """GF(4)^n 的 GF(2) 子空间, 打包后做 GF(2) RREF"""

    __slots__ = ('length', 'rows', '_hash')

    def __init__(self, length: int, rows: Iterable[int] = (), canonical: bool = False):
        self.length = length
        self.rows = tuple(rows) if canonical else tuple(rref(rows))
        limit = 1 << (2 * length)
        for r in self.rows:
            if r >= limit:
                raise ValueError(f"生成行超出长度 {length}")
        self._hash = hash((length, self.rows))

    @classmethod
    def from_vectors(cls, length: int, vectors: Iterable[Sequence[int]]) -> 'AdditiveF4Code':
        return cls(length, [pack(v) for v in vectors])

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def vectors(self) -> List[Tuple[int, ...]]:
        return [unpack(r, self.length) for r in self.rows]

    def contains(self, vec: Sequence[int]) -> bool:
        x = pack(vec)
        for b in self.rows:
            if x & (b & -b):
                x ^= b
        return x == 0

    def codewords(self) -> Iterator[int]:
        v = 0
        yield v
        for idx in range(1, 1 << len(self.rows)):
            v ^= self.rows[(idx & -idx).bit_length() - 1]
            yield v

    def __eq__(self, other) -> bool:
        return isinstance(other, AdditiveF4Code) and self.length == other.length and self.rows == other.rows

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"AdditiveF4Code(({self.length}, 2^{self.dimension})_4)"


def trace_hermitian_dual(code: AdditiveF4Code) -> AdditiveF4Code:
    """sum (x_i conj(y_i) + conj(x_i) y_i) = 0 意义下的 GF(2) 对偶"""
    n = code.length
    swapped = BinaryCode(2 * n, [swap_layers(r, n) for r in code.rows])
    return AdditiveF4Code(n, dual(swapped).rows, canonical=True)


def is_trace_hermitian_self_dual(code: AdditiveF4Code) -> bool:
    n = code.length
    if code.dimension != n:
        return False
    return all(trace_hermitian(r, s, n) == 0 for r in code.rows for s in code.rows)


def additive_min_distance(code: AdditiveF4Code) -> int:
    if code.dimension == 0:
        raise ValueError("no nonzero codewords")
    n = code.length
    return min(packed_symbol_weight(x, n) for x in code.codewords() if x)


# ---------------------------------------------------------------- phi / pi

def sigma_action_F4(vec: Sequence[int]) -> Tuple[int, ...]:
    """交换相邻两个坐标并取共轭: (e1, e2, ...) -> (conj e2, conj e1, ...)"""
    if len(vec) % 2:
        raise ValueError(f"长度必须为偶数: {len(vec)}")
    out = []
    for i in range(0, len(vec), 2):
        out.append(CONJ[vec[i + 1]])
        out.append(CONJ[vec[i]])
    return tuple(out)


def interleave_conjugate(vec: Sequence[int]) -> Tuple[int, ...]:
    out = []
    for a in vec:
        out.append(a)
        out.append(CONJ[a])
    return tuple(out)


def phi_lift(code: AdditiveF4Code) -> LinearF4Code:
    """(e1,...,em) -> (e1, conj e1, ..., em, conj em) 的 GF(4) 张成"""
    return LinearF4Code(2 * code.length, [interleave_conjugate(v) for v in code.vectors()])


def sigma_fixed_subcode(code: LinearF4Code) -> List[int]:
    """E 中被 sigma_action_F4 固定的 GF(2) 子空间 (打包表示的基)

    Raises:
        InvariantViolation: E 不是 sigma 不变的
    """
    n = code.length
    basis = code.f2_basis()
    images = [pack(sigma_action_F4(unpack(b, n))) for b in basis]
    for img in images:
        if not code.contains(unpack(img, n)):
            raise InvariantViolation("E 在 sigma 作用下不变性不成立")
    fixed = [combine(basis, m) for m in kernel_combinations([b ^ s for b, s in zip(basis, images)])]
    return rref(fixed)


def pi_project(code: LinearF4Code, sigma_fixed: Optional[Sequence[int]] = None) -> AdditiveF4Code:
    """E(sigma) 在奇数位置上的投影"""
    if code.length % 2:
        raise ValueError(f"长度必须为偶数: {code.length}")
    n = code.length
    fixed = list(sigma_fixed) if sigma_fixed is not None else sigma_fixed_subcode(code)
    m = n // 2
    out = []
    for x in fixed:
        v = unpack(x, n)
        out.append(tuple(v[2 * i] for i in range(m)))
    proj = AdditiveF4Code.from_vectors(m, out)
    if proj.dimension != len(fixed):
        raise InvariantViolation("奇数位置投影不是单射")
    return proj


# ---------------------------------------------------------------- 单项映射

@dataclass(frozen=True)
class MonomialMap:
    """y[p(i)] = s_i * (conj(x_i) 若 c_i 否则 x_i)"""
    perm: Permutation
    scalars: Tuple[int, ...]
    conj: Tuple[bool, ...] = ()

    def __post_init__(self):
        n = self.perm.degree
        if len(self.scalars) != n or any(s not in NONZERO for s in self.scalars):
            raise ValueError("标量必须是 n 个非零 GF(4) 元素")
        if not self.conj:
            object.__setattr__(self, 'conj', (False,) * n)
        elif len(self.conj) != n:
            raise ValueError("共轭标志长度不一致")

    @classmethod
    def identity(cls, n: int) -> 'MonomialMap':
        return cls(Permutation.identity(n), (1,) * n, (False,) * n)

    @property
    def length(self) -> int:
        return self.perm.degree

    def apply(self, vec: Sequence[int]) -> Tuple[int, ...]:
        out = [0] * self.length
        for i, a in enumerate(vec):
            if self.conj[i]:
                a = CONJ[a]
            out[self.perm(i + 1) - 1] = MUL[self.scalars[i]][a]
        return tuple(out)

    def apply_additive(self, code: AdditiveF4Code) -> AdditiveF4Code:
        return AdditiveF4Code.from_vectors(code.length, [self.apply(v) for v in code.vectors()])

    def apply_linear(self, code: LinearF4Code) -> LinearF4Code:
        if any(self.conj):
            raise ValueError("带共轭的映射不保持 GF(4)-线性")
        return LinearF4Code(code.length, [self.apply(v) for v in code.rows])

    def then(self, other: 'MonomialMap') -> 'MonomialMap':
        """先作用 self 再作用 other"""
        n = self.length
        scalars, conj = [0] * n, [False] * n
        for i in range(n):
            j = self.perm(i + 1) - 1
            s = self.scalars[i]
            c = self.conj[i]
            if other.conj[j]:
                s = CONJ[s]
                c = not c
            scalars[i] = MUL[other.scalars[j]][s]
            conj[i] = c
        return MonomialMap(self.perm * other.perm, tuple(scalars), tuple(conj))


def monomial_lift(m: MonomialMap) -> MonomialMap:
    """长度 m 上的单项映射提升到长度 2m 的 GF(4)-线性单项映射

    不带共轭的坐标: 2i-1 -> 2p(i)-1 (标量 s), 2i -> 2p(i) (标量 conj s);
    带共轭的坐标交换两个落点。
    """
    n = m.length
    images = [0] * (2 * n)
    scalars = [0] * (2 * n)
    for i in range(n):
        p = m.perm(i + 1)
        s = m.scalars[i]
        odd, even = 2 * i, 2 * i + 1
        if m.conj[i]:
            images[even], scalars[even] = 2 * p - 1, s
            images[odd], scalars[odd] = 2 * p, CONJ[s]
        else:
            images[odd], scalars[odd] = 2 * p - 1, s
            images[even], scalars[even] = 2 * p, CONJ[s]
    return MonomialMap(Permutation(images), tuple(scalars), (False,) * (2 * n))


def monomial_group_order(n: int, with_conjugation: bool = True) -> int:
    return (6 if with_conjugation else 3) ** n * factorial(n)


def monomial_generators(n: int, with_conjugation: bool = True) -> List[MonomialMap]:
    ident = Permutation.identity(n)
    gens = []
    if n >= 2:
        gens.append(MonomialMap(Permutation.from_cycles([(1, 2)], n), (1,) * n))
    if n >= 3:
        gens.append(MonomialMap(Permutation.from_cycles([tuple(range(1, n + 1))], n), (1,) * n))
    gens.append(MonomialMap(ident, (OMEGA,) + (1,) * (n - 1)))
    if with_conjugation:
        gens.append(MonomialMap(ident, (1,) * n, (True,) + (False,) * (n - 1)))
    return gens


def all_monomial_maps(n: int, with_conjugation: bool = True) -> Iterator[MonomialMap]:
    conj_choices = [(False, True)] * n if with_conjugation else [(False,)] * n
    for images in permutations(range(1, n + 1)):
        perm = Permutation(images)
        for scalars in product(NONZERO, repeat=n):
            for conj in product(*conj_choices):
                yield MonomialMap(perm, scalars, conj)


def _linear_bit_images(m: MonomialMap) -> List[int]:
    """单项映射作为 F2^{2n} 上线性映射时各基向量的像"""
    n = m.length
    out = []
    for bit in range(2 * n):
        out.append(pack(m.apply(unpack(1 << bit, n))))
    return out


def _apply_bits(images: Sequence[int], x: int) -> int:
    y = 0
    while x:
        low = x & -x
        y ^= images[low.bit_length() - 1]
        x ^= low
    return y


# ---------------------------------------------------------------- S3 筛选

@dataclass
class S3Record:
    index: int
    m: int
    d_phi: Optional[int]
    status: str

    def line(self) -> str:
        d = '-' if self.d_phi is None else str(self.d_phi)
        return f"{self.index} {self.m} {d} {self.status}"


@dataclass
class S3Report:
    records: List[S3Record] = field(default_factory=list)
    histogram: Dict[str, int] = field(default_factory=dict)
    abort_at: int = 8

    @property
    def max_d(self) -> Optional[int]:
        ds = [r.d_phi for r in self.records if r.d_phi is not None]
        return max(ds) if ds else None

    @property
    def contradictions(self) -> int:
        return sum(1 for r in self.records if r.status == 'contradiction')

    @property
    def rejected(self) -> int:
        return sum(1 for r in self.records if r.status.startswith('invalid') or r.status.startswith('malformed'))


def s3_check_code(index: int, code: AdditiveF4Code, abort_at: int = 8,
                  min_symbol_distance: Optional[int] = 4,
                  expected_length: Optional[int] = None) -> S3Record:
    """单个加性码: 有效性检查后计算 d(phi(X)), 在 abort_at 处提前终止"""
    n = code.length
    if expected_length is not None and n != expected_length:
        return S3Record(index, code.dimension, None, f"invalid:length {n} != {expected_length}")
    if not is_trace_hermitian_self_dual(code):
        return S3Record(index, code.dimension, None, "invalid:not self-dual")
    if min_symbol_distance is not None and additive_min_distance(code) < min_symbol_distance:
        return S3Record(index, code.dimension, None, f"invalid:d < {min_symbol_distance}")
    res = f4_min_distance(phi_lift(code), abort_at=abort_at)
    if not res.exact or res.value >= abort_at:
        return S3Record(index, code.dimension, abort_at, 'contradiction')
    return S3Record(index, code.dimension, res.value, 'ok')


def s3_filter(dataset: Iterable, abort_at: Optional[int] = None,
              min_symbol_distance: Optional[int] = 4,
              expected_length: Optional[int] = None,
              progress: bool = False) -> S3Report:
    """对数据集中每个加性码计算 d(phi(X))

    Args:
        dataset: (index, AdditiveF4Code 或 Exception) 的可迭代对象;
            Exception 表示格式错误的记录, 会被报告而不是丢弃
        abort_at: 提前终止阈值, 默认 8

    Returns:
        S3Report, 直方图中 'abort_at' 键表示 d ≥ abort_at
    """
    abort_at = abort_at or SEARCH_CONFIG['gf4']['s3_abort']
    report = S3Report(abort_at=abort_at)
    hist: Counter = Counter()
    for index, item in tqdm(dataset, desc='S3 filter', disable=not progress):
        if isinstance(item, Exception):
            rec = S3Record(index, 0, None, f"malformed:{item}")
        else:
            rec = s3_check_code(index, item, abort_at, min_symbol_distance, expected_length)
        report.records.append(rec)
        if rec.d_phi is not None:
            hist[str(rec.d_phi)] += 1
    report.histogram = dict(sorted(hist.items(), key=lambda kv: int(kv[0])))
    if report.contradictions:
        logger.warning(f"发现 {report.contradictions} 个 d(phi(X)) ≥ {abort_at} 的码")
    return report


# ---------------------------------------------------------------- 小长度分类

@dataclass
class AdditiveClassification:
    length: int
    with_conjugation: bool
    total: int
    group_order: int
    representatives: List[AdditiveF4Code]
    orbit_sizes: List[int]
    stabilizer_orders: List[int]

    @property
    def equivalence(self) -> str:
        return 'monomial+conjugation' if self.with_conjugation else 'monomial'

    def mass(self) -> int:
        return sum(self.group_order // s for s in self.stabilizer_orders)


def all_additive_self_dual(n: int) -> List[AdditiveF4Code]:
    """长度 n 的全部迹-Hermitian 自对偶加性码 (F2^{2n} 的 Lagrange 子空间)"""
    from isotropic import FormSpace, enumerate_max_isotropic
    dim = 2 * n
    gram = [[trace_hermitian(1 << i, 1 << j, n) for j in range(dim)] for i in range(dim)]
    space = FormSpace(gram, field='F2')
    codes = []
    for lag in enumerate_max_isotropic(space):
        rows = []
        for vec in lag:
            x = 0
            for b, c in enumerate(vec):
                if c:
                    x |= 1 << b
            rows.append(x)
        codes.append(AdditiveF4Code(n, rows))
    logger.debug(f"长度 {n}: 共 {len(codes)} 个加性自对偶码")
    return codes


def classify_small_additive_selfdual(n: int, with_conjugation: bool = True,
                                     check_stabilizers: Optional[bool] = None) -> AdditiveClassification:
    """小长度加性迹-Hermitian 自对偶码在单项映射下的分类

    显式 BFS 求轨道; n ≤ stabilizer_check_length 时另外用全部单项映射
    独立计算稳定子阶, 与轨道长度核对。
    """
    limit = SEARCH_CONFIG['gf4']['classify_max_length']
    if n < 1 or n > limit:
        raise ValueError(f"长度 {n} 超出分类上限 {limit}")
    if check_stabilizers is None:
        check_stabilizers = n <= SEARCH_CONFIG['gf4']['stabilizer_check_length']

    codes = all_additive_self_dual(n)
    index = {c.rows: i for i, c in enumerate(codes)}
    gens = [_linear_bit_images(g) for g in monomial_generators(n, with_conjugation)]
    order = monomial_group_order(n, with_conjugation)

    seen = [False] * len(codes)
    reps, sizes = [], []
    for start in range(len(codes)):
        if seen[start]:
            continue
        seen[start] = True
        frontier = [start]
        members = [start]
        while frontier:
            nxt = []
            for idx in frontier:
                rows = codes[idx].rows
                for images in gens:
                    key = tuple(rref(_apply_bits(images, r) for r in rows))
                    j = index.get(key)
                    if j is None:
                        raise InvariantViolation("单项映射的像不是自对偶码")
                    if not seen[j]:
                        seen[j] = True
                        members.append(j)
                        nxt.append(j)
            frontier = nxt
        rep = min((codes[j] for j in members), key=lambda c: c.rows)
        reps.append(rep)
        sizes.append(len(members))

    if sum(sizes) != len(codes):
        raise InvariantViolation("轨道长度之和与总数不符")
    if any(order % s for s in sizes):
        raise InvariantViolation("轨道长度不整除群阶")
    stabs = [order // s for s in sizes]

    if check_stabilizers:
        maps = [_linear_bit_images(m) for m in all_monomial_maps(n, with_conjugation)]
        for rep, stab in zip(reps, stabs):
            direct = sum(1 for images in maps
                         if tuple(rref(_apply_bits(images, r) for r in rep.rows)) == rep.rows)
            if direct != stab:
                raise InvariantViolation(f"稳定子阶不一致: 直接计数 {direct}, 轨道推算 {stab}")

    order_key = sorted(range(len(reps)), key=lambda i: reps[i].rows)
    result = AdditiveClassification(
        length=n,
        with_conjugation=with_conjugation,
        total=len(codes),
        group_order=order,
        representatives=[reps[i] for i in order_key],
        orbit_sizes=[sizes[i] for i in order_key],
        stabilizer_orders=[stabs[i] for i in order_key],
    )
    logger.info(f"长度 {n} ({result.equivalence}): {len(reps)} 类, 总数 {len(codes)}")
    return result
