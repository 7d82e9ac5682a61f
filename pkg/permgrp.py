import itertools
import logging
import random
import re
from dataclasses import dataclass
from math import gcd
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from sympy import primefactors
from sympy.combinatorics import Permutation as SymPermutation
from sympy.combinatorics import PermutationGroup

from gf2codes import BinaryCode, bit_positions, combine, rref
from search_config import SEARCH_CONFIG, BudgetExceededError, InvariantViolation, get_budget

logger = logging.getLogger(__name__)

_CYCLE_RE = re.compile(r'\(([^()]*)\)')


class Permutation:
    """{1..degree} 上的置换, images[i-1] 为点 i 的像

    乘积 x*y 表示先作用 x 再作用 y (右作用, 与 sympy 一致)。
    """

    __slots__ = ('images', '_hash')

    def __init__(self, images: Sequence[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"不是 {{1..{len(images)}}} 上的双射: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, degree: int) -> 'Permutation':
        return cls(range(1, degree + 1))

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], degree: int) -> 'Permutation':
        images = list(range(1, degree + 1))
        seen = set()
        for cycle in cycles:
            for i, point in enumerate(cycle):
                if point < 1 or point > degree or point in seen:
                    raise ValueError(f"轮换中的点非法或重复: {point}")
                seen.add(point)
                images[point - 1] = cycle[(i + 1) % len(cycle)]
        return cls(images)

    @classmethod
    def parse(cls, text: str, degree: int) -> 'Permutation':
        """解析不相交轮换记号, 如 "(1,2)(3,4)"; 恒等置换为 "()" """
        text = text.strip().replace(' ', '')
        if text in ('', '()'):
            return cls.identity(degree)
        if _CYCLE_RE.sub('', text):
            raise ValueError(f"无法解析置换: {text!r}")
        cycles = []
        for body in _CYCLE_RE.findall(text):
            if body:
                cycles.append([int(x) for x in body.split(',')])
        return cls.from_cycles(cycles, degree)

    @classmethod
    def from_sympy(cls, p: SymPermutation, degree: Optional[int] = None) -> 'Permutation':
        form = list(p.array_form)
        degree = degree or len(form)
        form += list(range(len(form), degree))
        return cls([x + 1 for x in form])

    def to_sympy(self) -> SymPermutation:
        return SymPermutation([x - 1 for x in self.images])

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def __mul__(self, other: 'Permutation') -> 'Permutation':
        if other.degree != self.degree:
            raise ValueError(f"次数不一致: {self.degree} != {other.degree}")
        oi = other.images
        return Permutation([oi[x - 1] for x in self.images])

    def __pow__(self, k: int) -> 'Permutation':
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> 'Permutation':
        inv = [0] * self.degree
        for i, x in enumerate(self.images):
            inv[x - 1] = i + 1
        return Permutation(inv)

    def conjugate(self, t: 'Permutation') -> 'Permutation':
        """t^{-1} self t"""
        return t.inverse() * self * t

    def commutes(self, other: 'Permutation') -> bool:
        return self * other == other * self

    def is_identity(self) -> bool:
        return all(x == i + 1 for i, x in enumerate(self.images))

    def cycles(self, include_fixed: bool = False) -> List[Tuple[int, ...]]:
        """不相交轮换, 每个轮换从最小点开始, 按最小点排序"""
        seen = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cycle.append(x)
                seen.add(x)
                x = self(x)
            if len(cycle) > 1 or include_fixed:
                out.append(tuple(cycle))
        return out

    def order(self) -> int:
        result = 1
        for c in self.cycles():
            result = result * len(c) // gcd(result, len(c))
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: 'Permutation') -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return '()'
        return ''.join('(' + ','.join(str(x) for x in c) + ')' for c in cycles)

    def __repr__(self) -> str:
        return f"Permutation({self})"


def act_on_vector(v: int, p: Permutation) -> int:
    """坐标 i 移到 p(i)"""
    images = p.images
    out = 0
    while v:
        low = v & -v
        out |= 1 << (images[low.bit_length() - 1] - 1)
        v ^= low
    return out


def act_on_code(code: BinaryCode, p: Permutation) -> BinaryCode:
    """置换码的坐标并重新规范化; act(act(C,p),q) = act(C, p*q)"""
    if p.degree != code.length:
        raise ValueError(f"置换次数 {p.degree} 与码长 {code.length} 不一致")
    return BinaryCode(code.length, [act_on_vector(r, p) for r in code.rows])


def is_automorphism(code: BinaryCode, p: Permutation) -> bool:
    if p.degree != code.length:
        return False
    return all(code.contains(act_on_vector(r, p)) for r in code.rows)


def is_fixed_point_free(p: Permutation) -> bool:
    return all(x != i + 1 for i, x in enumerate(p.images))


def cycle_type(p: Permutation) -> List[int]:
    return sorted(len(c) for c in p.cycles(include_fixed=True))


class PermGroup:
    """由生成元给出的置换群, 稳定子链由 sympy 的 Schreier-Sims 维护"""

    def __init__(self, generators: Sequence[Permutation], degree: Optional[int] = None):
        generators = list(generators)
        if degree is None:
            if not generators:
                raise ValueError("空生成元集需要显式给出次数")
            degree = generators[0].degree
        for g in generators:
            if g.degree != degree:
                raise ValueError(f"生成元次数 {g.degree} 与群次数 {degree} 不一致")
        self.degree = degree
        self.generators = generators
        sym_gens = [g.to_sympy() for g in generators] or [SymPermutation(list(range(degree)))]
        self._group = PermutationGroup(sym_gens)
        self._order: Optional[int] = None
        self._rng: Optional[random.Random] = None

    @classmethod
    def from_sympy(cls, group: PermutationGroup, degree: int) -> 'PermGroup':
        gens = [Permutation.from_sympy(g, degree) for g in group.generators]
        return cls(gens, degree)

    def to_sympy(self) -> PermutationGroup:
        return self._group

    def order(self) -> int:
        if self._order is None:
            self._order = int(self._group.order())
        return self._order

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            return False
        return bool(self._group.contains(p.to_sympy(), strict=False))

    def orbit(self, point: int) -> List[int]:
        return sorted(x + 1 for x in self._group.orbit(point - 1))

    def orbits(self) -> List[List[int]]:
        return sorted(sorted(x + 1 for x in orb) for orb in self._group.orbits())

    def elements(self, limit: Optional[int] = None) -> Iterator[Permutation]:
        limit = limit or SEARCH_CONFIG['equiv']['enum_order_limit']
        if self.order() > limit:
            raise BudgetExceededError(f"群阶 {self.order()} 超出枚举上限 {limit}",
                                      {'order': self.order(), 'limit': limit})
        for p in self._group.generate(af=False):
            yield Permutation.from_sympy(p, self.degree)

    def random_element(self, seed: Optional[int] = None) -> Permutation:
        """按稳定子链均匀取元; 随机源为实例自有, 不触碰 sympy 的全局随机状态"""
        if seed is not None or self._rng is None:
            self._rng = random.Random(seed)
        rank = self._rng.randrange(self.order())
        return Permutation.from_sympy(self._group.coset_unrank(rank), self.degree)

    def _transversal_arrays(self) -> List[np.ndarray]:
        n = self.degree
        self._group.schreier_sims()
        levels = []
        for orbit, transversal in zip(self._group.basic_orbits, self._group.basic_transversals):
            rows = []
            for point in orbit:
                af = list(transversal[point].array_form)
                rows.append(af + list(range(len(af), n)))
            levels.append(np.array(rows, dtype=np.int16 if n < 1 << 15 else np.int32))
        return levels

    def array_blocks(self, block_size: int = 1 << 16) -> Iterator[np.ndarray]:
        """按块枚举全部元素, 每行为 0 起的像数组, 每个元素恰好出现一次

        元素写成 a_0 a_1 ... a_{m-1} (a_i 取自第 i 层陪集代表),
        低层乘积预先展开为一块, 高层逐个组合。
        """
        n = self.degree
        levels = [lv for lv in self._transversal_arrays() if len(lv) > 1]
        low = np.arange(n, dtype=levels[0].dtype if levels else np.int16)[None, :]
        split = len(levels)
        while split > 0 and (split == len(levels) or len(low) * len(levels[split - 1]) <= block_size):
            split -= 1
            low = levels[split][:, low].reshape(-1, n)
        for choice in itertools.product(*(range(len(lv)) for lv in levels[:split])):
            prefix = np.arange(n, dtype=low.dtype)
            for lv, c in zip(levels, choice):
                prefix = prefix[lv[c]]
            yield prefix[low]

    def iter_fixed_point_free(self, order: int, limit: Optional[int] = None) -> Iterator[Permutation]:
        """确定性地列出阶恰为 order 的全部无不动点元素

        Raises:
            BudgetExceededError: 群阶超过 limit (默认当前枚举预算)
        """
        limit = limit or get_budget()
        if self.order() > limit:
            raise BudgetExceededError(f"群阶 {self.order()} 超出遍历预算 {limit}",
                                      {'order': self.order(), 'limit': limit})
        ident = np.arange(self.degree)
        for block in self.array_blocks():
            block = block[np.all(block != ident, axis=1)]
            if not len(block):
                continue
            keep = np.all(_row_power(block, order) == ident, axis=1)
            for q in primefactors(order):
                keep &= np.any(_row_power(block, order // q) != ident, axis=1)
            for row in block[keep]:
                yield Permutation((row.astype(np.int64) + 1).tolist())

    def pointwise_stabilizer(self, points: Sequence[int]) -> 'PermGroup':
        if not points:
            return self
        stab = self._group.pointwise_stabilizer([p - 1 for p in points])
        return PermGroup.from_sympy(stab, self.degree)

    def centralizer(self, elems: Sequence[Permutation]) -> 'PermGroup':
        other = PermutationGroup([e.to_sympy() for e in elems])
        return PermGroup.from_sympy(self._group.centralizer(other), self.degree)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, gens={len(self.generators)})"


def _row_power(block: np.ndarray, k: int) -> np.ndarray:
    """对每行置换求 k 次幂"""
    result = np.broadcast_to(np.arange(block.shape[1], dtype=block.dtype), block.shape).copy()
    base = block
    while k:
        if k & 1:
            result = np.take_along_axis(base, result, axis=1)
        base = np.take_along_axis(base, base, axis=1)
        k >>= 1
    return result


def group_order(group: PermGroup) -> int:
    return group.order()


def centralizer_in(group: PermGroup, elems: Sequence[Permutation]) -> PermGroup:
    """群 G 中与 elems 全部交换的元素构成的子群

    Raises:
        BudgetExceededError: |G| 超过配置的后端上限
    """
    limit = 10 ** 8
    if group.order() > limit:
        raise BudgetExceededError(f"群阶 {group.order()} 超过中心化子计算上限 {limit}, "
                                  f"请使用 wreath_centralizer",
                                  {'order': group.order(), 'limit': limit})
    cent = group.centralizer(elems)
    for c in cent.generators:
        for e in elems:
            if not c.commutes(e):
                raise InvariantViolation(f"中心化子生成元 {c} 与 {e} 不交换")
    return cent


def conjugating_element(a: Permutation, b: Permutation) -> Optional[Permutation]:
    """返回 t 使得 t^{-1} a t = b; 轮换型不同时返回 None

    按 (长度, 最小点) 对齐两边的轮换, 输出确定。
    """
    if a.degree != b.degree or cycle_type(a) != cycle_type(b):
        return None
    ca = sorted(a.cycles(include_fixed=True), key=lambda c: (len(c), c[0]))
    cb = sorted(b.cycles(include_fixed=True), key=lambda c: (len(c), c[0]))
    images = [0] * a.degree
    for x, y in zip(ca, cb):
        for i, point in enumerate(x):
            images[point - 1] = y[i]
    t = Permutation(images)
    if a.conjugate(t) != b:
        raise InvariantViolation(f"共轭元校验失败: {a} -> {b}")
    return t


def natural_lift(rho: Permutation) -> Permutation:
    """rho~(2a-1) = 2 rho(a) - 1, rho~(2a) = 2 rho(a)"""
    images = []
    for a in range(1, rho.degree + 1):
        images.append(2 * rho(a) - 1)
        images.append(2 * rho(a))
    return Permutation(images)


def pair_blocks(degree: int) -> List[List[int]]:
    return [[2 * a - 1, 2 * a] for a in range(1, degree // 2 + 1)]


def quad_blocks(degree: int) -> List[List[int]]:
    return [[4 * a + 1, 4 * a + 2, 4 * a + 3, 4 * a + 4] for a in range(degree // 4)]


def block_action(p: Permutation, blocks: Sequence[Sequence[int]]) -> Permutation:
    """p 在块系统上诱导的置换; p 不保持块系统时报错"""
    where: Dict[int, int] = {}
    for idx, block in enumerate(blocks):
        for point in block:
            where[point] = idx
    images = []
    for block in blocks:
        targets = {where[p(x)] for x in block}
        if len(targets) != 1:
            raise ValueError(f"置换 {p} 不保持块 {list(block)}")
        images.append(targets.pop() + 1)
    return Permutation(images)


class GroupHom:
    """块作用诱导的同态 (pi1, pi2, pi3 都是这种形式)"""

    def __init__(self, domain: PermGroup, blocks: Sequence[Sequence[int]]):
        self.domain = domain
        self.blocks = [list(b) for b in blocks]
        self.codomain_degree = len(self.blocks)
        self.generator_images = [self(g) for g in domain.generators]

    def __call__(self, p: Permutation) -> Permutation:
        return block_action(p, self.blocks)

    def image(self) -> PermGroup:
        return PermGroup(self.generator_images, self.codomain_degree)

    def kernel_order(self) -> int:
        return self.domain.order() // self.image().order()


# ---------------------------------------------------------------- H 的生成元与圈积结构

def h_generators(kind: str, degree: int = 72) -> Dict[str, Permutation]:
    """固定的 g, h, sigma; A4 时次数须为 12 的倍数, D8 时须为 8 的倍数"""
    kind = kind.upper()
    block = {'A4': 12, 'D8': 8}.get(kind)
    if block is None:
        raise ValueError(f"未知的群类型: {kind}")
    if degree % block:
        raise ValueError(f"{kind} 需要次数为 {block} 的倍数, 得到 {degree}")
    g = Permutation.from_cycles([(2 * a - 1, 2 * a) for a in range(1, degree // 2 + 1)], degree)
    h_cycles = []
    for a in range(degree // 4):
        h_cycles += [(4 * a + 1, 4 * a + 3), (4 * a + 2, 4 * a + 4)]
    h = Permutation.from_cycles(h_cycles, degree)
    if kind == 'A4':
        pattern = [(1, 5, 9), (2, 7, 12), (3, 8, 10), (4, 6, 11)]
    else:
        pattern = [(1, 5), (2, 8), (3, 7), (4, 6)]
    sigma_cycles = []
    for t in range(degree // block):
        sigma_cycles += [tuple(x + block * t for x in c) for c in pattern]
    sigma = Permutation.from_cycles(sigma_cycles, degree)
    return {'g': g, 'h': h, 'sigma': sigma}


def d8_rotation(h_gens: Dict[str, Permutation]) -> Permutation:
    """D8 = <g, h, sigma> 中的一个 4 阶元 k"""
    g, h, sigma = h_gens['g'], h_gens['h'], h_gens['sigma']
    for k in (g * sigma, h * sigma, g * h * sigma):
        if k.order() == 4:
            return k
    raise InvariantViolation("<g, h, sigma> 中找不到 4 阶元")


def group_closure(generators: Sequence[Permutation], limit: int = 10 ** 5) -> List[Permutation]:
    """小群的全部元素 (BFS), 按像的字典序排序"""
    if not generators:
        raise ValueError("需要至少一个生成元")
    identity = Permutation.identity(generators[0].degree)
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > limit:
                        raise BudgetExceededError(f"群元素超过 {limit}", {'limit': limit})
        frontier = nxt
    return sorted(seen)


@dataclass
class _RegularOrbits:
    elements: List[Permutation]
    bases: List[int]
    # point -> (轨道编号, 元素下标) 使得 elements[idx](bases[t]) == point
    coords: Dict[int, Tuple[int, int]]


def _regular_orbits(generators: Sequence[Permutation]) -> _RegularOrbits:
    elements = group_closure(generators)
    degree = generators[0].degree
    coords: Dict[int, Tuple[int, int]] = {}
    bases = []
    for point in range(1, degree + 1):
        if point in coords:
            continue
        t = len(bases)
        bases.append(point)
        for idx, x in enumerate(elements):
            y = x(point)
            if y in coords:
                raise InvariantViolation(f"群在点 {point} 上不是半正则的")
            coords[y] = (t, idx)
    return _RegularOrbits(elements, bases, coords)


def _left_multiplication(orb: _RegularOrbits, t: int, y: Permutation, degree: int) -> Permutation:
    """在第 t 个轨道上 x(b) -> x(y(b)), 其余点不动"""
    images = list(range(1, degree + 1))
    b = orb.bases[t]
    yb = y(b)
    for x in orb.elements:
        images[x(b) - 1] = x(yb)
    return Permutation(images)


def _orbit_permutation(orb: _RegularOrbits, mapping: Sequence[int], degree: int) -> Permutation:
    """x(b_t) -> x(b_{mapping[t]})"""
    images = list(range(1, degree + 1))
    for t, b in enumerate(orb.bases):
        target = orb.bases[mapping[t]]
        for x in orb.elements:
            images[x(b) - 1] = x(target)
    return Permutation(images)


def semiregular_centralizer(generators: Sequence[Permutation]) -> List[Permutation]:
    """半正则群 H 在对称群中的中心化子 H wr S_r 的生成元"""
    degree = generators[0].degree
    orb = _regular_orbits(generators)
    r = len(orb.bases)
    gens = []
    for t in range(r):
        for y in generators:
            gens.append(_left_multiplication(orb, t, y, degree))
    if r >= 2:
        gens.append(_orbit_permutation(orb, [1, 0] + list(range(2, r)), degree))
    if r >= 3:
        gens.append(_orbit_permutation(orb, [(t + 1) % r for t in range(r)], degree))
    return [p for p in gens if not p.is_identity()]


@dataclass
class WreathData:
    kind: str
    degree: int
    h_gens: Dict[str, Permutation]
    G: PermGroup
    G36: PermGroup
    pi1: GroupHom
    pi1_G: PermGroup
    transversal: List[Permutation]
    pi1_h: Permutation
    pi2_sigma: Permutation


def _pair_swap_vector(p: Permutation) -> int:
    """K = <(2b-1,2b)> 中的元素对应的 F2 向量; p 不在 K 中时报错"""
    v = 0
    for b in range(1, p.degree // 2 + 1):
        x = p(2 * b - 1)
        if x == 2 * b:
            v |= 1 << (b - 1)
        elif x != 2 * b - 1:
            raise InvariantViolation(f"{p} 不保持对 {{{2 * b - 1},{2 * b}}}")
    return v


def _pair_swaps(mask: int, degree: int) -> Permutation:
    cycles = [(2 * b + 1, 2 * b + 2) for b in bit_positions(mask)]
    return Permutation.from_cycles(cycles, degree)


def wreath_centralizer(kind: str, degree: int = 72) -> WreathData:
    """构造 G = C_{S_n}(H), G36 以及 pi1(G) 在 G36 中的左陪集代表系

    G36 = <(2b-1,2b)> ⋊ lift(C(pi2(sigma)))。pi1(G) 与 K = <(2b-1,2b)> 的交由
    各轨道上的 V4 左乘生成, 陪集代表取 K 中该交的一个补空间。
    """
    kind = kind.upper()
    hg = h_generators(kind, degree)
    gens_h = [hg['g'], hg['h'], hg['sigma']]
    orb = _regular_orbits(gens_h)
    expected = 12 if kind == 'A4' else 8
    if len(orb.elements) != expected:
        raise InvariantViolation(f"<g,h,sigma> 的阶为 {len(orb.elements)}, 期望 {expected}")

    G = PermGroup(semiregular_centralizer(gens_h), degree)
    pi1 = GroupHom(G, pair_blocks(degree))
    pi1_G = pi1.image()

    n36 = degree // 2
    pi1_h = block_action(hg['h'], pair_blocks(degree))
    pi2_sigma = block_action(hg['sigma'], quad_blocks(degree))
    n18 = pi2_sigma.degree

    g36_gens = [Permutation.from_cycles([(2 * b - 1, 2 * b)], n36) for b in range(1, n18 + 1)]
    g36_gens += [natural_lift(c) for c in semiregular_centralizer([pi2_sigma])]
    G36 = PermGroup(g36_gens, n36)

    # U = pi1(G) ∩ K
    u_vectors = []
    for t in range(len(orb.bases)):
        for y in (hg['g'], hg['h']):
            u_vectors.append(_pair_swap_vector(pi1(_left_multiplication(orb, t, y, degree))))
    u_basis = rref(u_vectors)
    pivot_bits = 0
    for r in u_basis:
        pivot_bits |= r & -r
    complement = [1 << b for b in range(n18) if not (pivot_bits >> b) & 1]
    transversal = [_pair_swaps(combine(complement, m), n36) for m in range(1 << len(complement))]

    for p in G.generators:
        for x in gens_h:
            if not p.commutes(x):
                raise InvariantViolation(f"中心化子生成元 {p} 与 {x} 不交换")
    logger.info(f"{kind} (n={degree}): |U|=2^{len(u_basis)}, 陪集代表 {len(transversal)} 个")
    return WreathData(kind, degree, hg, G, G36, pi1, pi1_G, transversal, pi1_h, pi2_sigma)
