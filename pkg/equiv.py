"""二元码的自同构群与等价判定 (划分细化 + 回溯), 以及 G36 轨道代表的计算

细化不变量: 若干低重量壳层的码字支撑构成的关联矩阵 (numpy)。
每个叶子得到的置换都会在码上直接验证, 不变量只用于剪枝。
"""
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from math import factorial
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from tqdm import tqdm

from decomp import collapse_code, fixed_code
from gf2codes import BinaryCode, popcount, rref, span, weight_profile
from isotropic import FormSpace, count_lagrangians_f2, enumerate_max_isotropic
from permgrp import (GroupHom, PermGroup, Permutation, act_on_code, block_action, centralizer_in,
                     conjugating_element, h_generators, is_automorphism, is_fixed_point_free,
                     natural_lift, pair_blocks, quad_blocks)
from search_config import SEARCH_CONFIG, BudgetExceededError, InvariantViolation, check_budget, get_budget

logger = logging.getLogger(__name__)


@dataclass
class AutGroup:
    code: BinaryCode
    group: PermGroup
    base: List[int] = field(default_factory=list)
    basic_orbit_sizes: List[int] = field(default_factory=list)

    @property
    def order(self) -> int:
        return self.group.order()

    @property
    def generators(self) -> List[Permutation]:
        return self.group.generators


# ---------------------------------------------------------------- 细化

class _Refiner:
    """码字壳层关联矩阵上的划分细化"""

    def __init__(self, code: BinaryCode, weights: Optional[Sequence[int]] = None,
                 max_shells: Optional[int] = None):
        self.code = code
        self.n = code.length
        self.nodes = 0
        k = code.dimension
        max_shells = max_shells or SEARCH_CONFIG['equiv']['max_shells']
        if k:
            check_budget(1 << k, '码字枚举 (细化不变量)')
            words = [w for w in span(code.rows) if w]
        else:
            words = []
        by_weight: Dict[int, List[int]] = defaultdict(list)
        for w in words:
            by_weight[popcount(w)].append(w)
        self.weight_hist = {w: len(v) for w, v in by_weight.items()}

        if weights is None:
            weights, acc = [], []
            for w in sorted(by_weight):
                weights.append(w)
                acc = rref(acc + by_weight[w])
                if len(acc) == k or len(weights) >= max_shells:
                    break
        self.weights = list(weights)
        chosen = [(idx, w) for idx, wt in enumerate(self.weights) for w in by_weight.get(wt, [])]
        self.shell_sizes = [len(by_weight.get(wt, [])) for wt in self.weights]
        if chosen:
            self.inc = np.array([[(w >> i) & 1 for i in range(self.n)] for _, w in chosen], dtype=np.int64)
            self.block_colors = np.array([idx for idx, _ in chosen], dtype=np.int64)
        else:
            self.inc = np.zeros((0, self.n), dtype=np.int64)
            self.block_colors = np.zeros(0, dtype=np.int64)

    def refine(self, colors: np.ndarray) -> Tuple[np.ndarray, bytes]:
        self.nodes += 1
        if self.nodes > get_budget():
            raise BudgetExceededError("回溯节点数超出预算",
                                      {'nodes': self.nodes, 'cells': int(colors.max()) + 1,
                                       'blocks': int(self.inc.shape[0])})
        colors = np.unique(colors, return_inverse=True)[1].reshape(-1)
        trace = []
        n, blocks = self.n, self.inc.shape[0]
        if blocks == 0:
            return colors, b''
        while True:
            ncol = int(colors.max()) + 1
            onehot = np.zeros((n, ncol), dtype=np.int64)
            onehot[np.arange(n), colors] = 1
            profile = self.inc @ onehot
            bkeys = np.column_stack([self.block_colors, profile])
            ub, binv = np.unique(bkeys, axis=0, return_inverse=True)
            binv = binv.reshape(-1)
            bon = np.zeros((blocks, ub.shape[0]), dtype=np.int64)
            bon[np.arange(blocks), binv] = 1
            psig = self.inc.T @ bon
            pkeys = np.column_stack([colors, psig])
            up, pinv = np.unique(pkeys, axis=0, return_inverse=True)
            trace.append(np.array(ub.shape, dtype=np.int64).tobytes() + ub.tobytes())
            trace.append(np.array(up.shape, dtype=np.int64).tobytes() + up.tobytes())
            pinv = pinv.reshape(-1)
            if up.shape[0] == ncol:
                return pinv, b''.join(trace)
            colors = pinv

    def root(self) -> Tuple[np.ndarray, bytes]:
        return self.refine(np.zeros(self.n, dtype=np.int64))

    def child(self, colors: np.ndarray, x: int) -> Tuple[np.ndarray, bytes]:
        new = colors * 2 + 1
        new[x] = colors[x] * 2
        return self.refine(new)


def _target_cell(colors: np.ndarray) -> Optional[List[int]]:
    counts = np.bincount(colors)
    multi = np.where(counts > 1)[0]
    if multi.size == 0:
        return None
    c = multi[np.argmin(counts[multi])]
    return [int(x) for x in np.where(colors == c)[0]]


def _leaf_map(lab_from: np.ndarray, lab_to: np.ndarray) -> Permutation:
    """p -> q 使得 lab_from[p] == lab_to[q]"""
    inv = np.argsort(lab_to)
    return Permutation([int(inv[lab_from[p]]) + 1 for p in range(len(lab_from))])


@dataclass
class _Path:
    nodes: List[Tuple[np.ndarray, List[int], int]]
    traces: List[bytes]
    root_trace: bytes
    leaf: np.ndarray


def _first_path(ref: _Refiner) -> _Path:
    colors, root_trace = ref.root()
    nodes, traces = [], []
    while True:
        cell = _target_cell(colors)
        if cell is None:
            return _Path(nodes, traces, root_trace, colors)
        x = cell[0]
        nodes.append((colors, cell, x))
        colors, tr = ref.child(colors, x)
        traces.append(tr)


def _search_leaf(ref: _Refiner, path: _Path, level: int, colors: np.ndarray, accept) -> Optional[Permutation]:
    """在 level 层已个体化的节点下 DFS, 迹须与 path 一致; accept(叶子置换) 为真时返回"""
    cell = _target_cell(colors)
    if cell is None:
        alpha = _leaf_map(path.leaf, colors)
        return alpha if accept(alpha) else None
    if level + 1 >= len(path.traces):
        return None
    for y in cell:
        c2, tr = ref.child(colors, y)
        if tr != path.traces[level + 1]:
            continue
        found = _search_leaf(ref, path, level + 1, c2, accept)
        if found is not None:
            return found
    return None


def _orbit(point: int, gens: Sequence[Permutation]) -> set:
    seen = {point}
    frontier = [point]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g.images[x] - 1
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def automorphism_group(code: BinaryCode, max_shells: Optional[int] = None) -> AutGroup:
    """码在 S_n 中的完整 (集合) 稳定子

    Raises:
        BudgetExceededError: 码字枚举或回溯节点超出预算, 附带细化统计
        InvariantViolation: 基轨道长度之积与 Schreier-Sims 群阶不一致
    """
    ref = _Refiner(code, max_shells=max_shells)
    path = _first_path(ref)

    def accept(alpha: Permutation) -> bool:
        return is_automorphism(code, alpha)

    gens: List[Permutation] = []
    orbit_sizes = [0] * len(path.nodes)
    for level in reversed(range(len(path.nodes))):
        colors, cell, v = path.nodes[level]
        orbit = _orbit(v, gens)
        for w in cell:
            if w in orbit:
                continue
            c2, tr = ref.child(colors, w)
            if tr != path.traces[level]:
                continue
            alpha = _search_leaf(ref, path, level, c2, accept)
            if alpha is not None:
                gens.append(alpha)
                orbit = _orbit(v, gens)
        orbit_sizes[level] = len(orbit)

    group = PermGroup(gens, code.length)
    expected = 1
    for s in orbit_sizes:
        expected *= s
    if group.order() != expected:
        raise InvariantViolation(f"自同构群阶不一致: 基轨道积 {expected}, Schreier-Sims {group.order()}")
    for g in gens:
        if act_on_code(code, g) != code:
            raise InvariantViolation(f"生成元 {g} 不保持码")
    logger.debug(f"|Aut| = {expected}, 回溯节点 {ref.nodes}")
    return AutGroup(code, group, [v + 1 for _, _, v in path.nodes], orbit_sizes)


def is_equivalent(a: BinaryCode, b: BinaryCode, aut_b: Optional[PermGroup] = None) -> Optional[Permutation]:
    """返回 phi 使得 act_on_code(a, phi) == b, 不等价时返回 None

    aut_b 给定时, 根节点的候选点按 Aut(b) 轨道去重。
    """
    if a.length != b.length or a.dimension != b.dimension:
        return None
    ref_a = _Refiner(a)
    ref_b = _Refiner(b, weights=ref_a.weights)
    if ref_a.weight_hist != ref_b.weight_hist:
        return None
    path = _first_path(ref_a)
    colors_b, root_b = ref_b.root()
    if root_b != path.root_trace:
        return None

    def accept(alpha: Permutation) -> bool:
        return act_on_code(a, alpha) == b

    if not path.nodes:
        alpha = _leaf_map(path.leaf, colors_b)
        return alpha if accept(alpha) else None

    _, cell_a, _ = path.nodes[0]
    cell = _target_cell(colors_b)
    if cell is None or len(cell) != len(cell_a):
        return None
    tried: set = set()
    for w in cell:
        if w in tried:
            continue
        if aut_b is not None:
            tried |= {x - 1 for x in aut_b.orbit(w + 1)}
        c2, tr = ref_b.child(colors_b, w)
        if tr != path.traces[0]:
            continue
        alpha = _search_leaf(ref_b, path, 0, c2, accept)
        if alpha is not None:
            return alpha
    return None


# ---------------------------------------------------------------- 无不动点元素的共轭类

def _conjugacy_class(x: Permutation, acting: Sequence[Permutation], cap: int) -> set:
    seen = {x}
    frontier = [x]
    while frontier:
        nxt = []
        for y in frontier:
            for t in acting:
                z = y.conjugate(t)
                if z not in seen:
                    seen.add(z)
                    nxt.append(z)
                    if len(seen) > cap:
                        raise BudgetExceededError(f"共轭类超过 {cap} 个元素", {'class_size': len(seen)})
        frontier = nxt
    return seen


def fpf_element_classes(group: Union[AutGroup, PermGroup], order: int,
                        acting: Optional[PermGroup] = None,
                        seed: Optional[int] = None,
                        enum_limit: Optional[int] = None) -> List[Permutation]:
    """group 中给定阶的无不动点元素在 acting (默认 group) 共轭作用下的类代表

    群阶不超过 enum_limit 时枚举全部元素; 否则先随机取元并取幂,
    连续 random_patience 次没有发现新类后, 再按稳定子链遍历全部无不动点元素补齐遗漏的类。
    代表取类中字典序最小者。

    Raises:
        BudgetExceededError: 群阶超过当前枚举预算, 无法证明类表完整
    """
    if isinstance(group, AutGroup):
        group = group.group
    acting = acting or group
    enum_limit = enum_limit or SEARCH_CONFIG['equiv']['enum_order_limit']
    acting_gens = [t for t in acting.generators if not t.is_identity()]
    cap = get_budget()

    def wanted(x: Permutation) -> bool:
        return x.order() == order and is_fixed_point_free(x)

    classes: List[set] = []
    known: set = set()
    if group.order() <= enum_limit:
        for x in group.elements(limit=enum_limit):
            if x in known or not wanted(x):
                continue
            cls = _conjugacy_class(x, acting_gens, cap)
            classes.append(cls)
            known |= cls
    else:
        patience = SEARCH_CONFIG['equiv']['random_patience']
        seed = SEARCH_CONFIG['runner']['seed'] if seed is None else seed
        misses = 0
        x = group.random_element(seed=seed)
        while misses < patience:
            m = x.order()
            found = False
            if m % order == 0:
                y = x ** (m // order)
                if wanted(y) and y not in known:
                    cls = _conjugacy_class(y, acting_gens, cap)
                    classes.append(cls)
                    known |= cls
                    found = True
            misses = 0 if found else misses + 1
            x = group.random_element()
        sampled = len(classes)
        for y in group.iter_fixed_point_free(order, limit=cap):
            if y not in known:
                cls = _conjugacy_class(y, acting_gens, cap)
                classes.append(cls)
                known |= cls
        if len(classes) > sampled:
            logger.warning(f"随机搜索得到 {sampled} 个类, 遍历补齐 {len(classes) - sampled} 个")
        else:
            logger.debug(f"随机搜索得到的 {sampled} 个类已完整")
    return sorted(min(cls) for cls in classes)


# ---------------------------------------------------------------- 轨道代表 (repr 引理)

@dataclass
class OrbitRep:
    code: BinaryCode
    tau: Permutation
    rho_tilde: Permutation
    h: Permutation
    sigma: Permutation

    def check_witness(self, source: BinaryCode) -> bool:
        return act_on_code(act_on_code(source, self.tau), self.rho_tilde) == self.code


@dataclass
class OrbitRepSet:
    source_class: str
    kind: str
    reps: List[OrbitRep] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.reps)

    @property
    def codes(self) -> List[BinaryCode]:
        return [r.code for r in self.reps]


def _h_targets(kind: str, n36: int) -> Tuple[Permutation, Permutation]:
    """(pi1(h), pi2(sigma)), 在长度 2*n36 的 H 上计算"""
    hg = h_generators(kind, 2 * n36)
    return block_action(hg['h'], pair_blocks(2 * n36)), block_action(hg['sigma'], quad_blocks(2 * n36))


def _sigma_order(kind: str) -> int:
    kind = kind.upper()
    if kind not in ('A4', 'D8'):
        raise ValueError(f"未知的群类型: {kind}")
    return 3 if kind == 'A4' else 2


def in_defining_set(code: BinaryCode, pi1_h: Permutation, pi2_sigma: Permutation) -> bool:
    """pi1(h) ∈ Aut(D) 且 pi2(sigma) ∈ Aut(pi3(D(pi1(h))))"""
    if not is_automorphism(code, pi1_h):
        return False
    collapsed = collapse_code(fixed_code(code, pi1_h), 2)
    return is_automorphism(collapsed, pi2_sigma)


def lemma_repr(Y: BinaryCode, kind: str, source_class: str = '0',
               aut: Optional[AutGroup] = None, seed: Optional[int] = None) -> OrbitRepSet:
    """D_k 上 G36 轨道的代表 D_{i,j} = Y^{tau_i rho~_j}

    h_i 取 Aut(Y) 中无不动点对合的共轭类代表; sigma_j 取
    pi3(C_{Aut(D_i)}(pi1(h))) 共轭作用下 Aut(pi3(D_i(pi1(h)))) 中无不动点
    sigma 阶元素 (A4 为 3, D8 为 2) 的类代表。
    """
    kind = kind.upper()
    n36 = Y.length
    pi1_h, pi2_sigma = _h_targets(kind, n36)
    sig_order = _sigma_order(kind)
    aut = aut or automorphism_group(Y)
    result = OrbitRepSet(source_class, kind)

    h_reps = fpf_element_classes(aut, 2, seed=seed)
    logger.info(f"类 {source_class}: |Aut(Y)| = {aut.order}, 无不动点对合类 {len(h_reps)} 个")
    for h in h_reps:
        tau = conjugating_element(h, pi1_h)
        D = act_on_code(Y, tau)
        if not is_automorphism(D, pi1_h):
            raise InvariantViolation("pi1(h) 不在 Aut(D_i) 中")
        aut_D = PermGroup([g.conjugate(tau) for g in aut.generators], n36)
        cent = centralizer_in(aut_D, [pi1_h])
        acting = GroupHom(cent, pair_blocks(n36)).image()
        Z = collapse_code(fixed_code(D, pi1_h), 2)
        aut_Z = automorphism_group(Z)
        sigma_reps = fpf_element_classes(aut_Z, sig_order, acting=acting, seed=seed)
        for s in sigma_reps:
            rho = conjugating_element(s, pi2_sigma)
            rho_tilde = natural_lift(rho)
            rep = OrbitRep(act_on_code(D, rho_tilde), tau, rho_tilde, h, s)
            if not in_defining_set(rep.code, pi1_h, pi2_sigma):
                raise InvariantViolation("D_{i,j} 不满足集合 D 的定义条件")
            result.reps.append(rep)
    logger.info(f"类 {source_class}: 得到 {len(result)} 个 G36 轨道代表")
    return result


# ---------------------------------------------------------------- 轨道比较

def orbits_in_set(codes: Iterable[BinaryCode], generators: Sequence[Permutation]) -> List[List[BinaryCode]]:
    """在群作用下封闭的有限码集合上做 BFS, 返回各轨道 (按首次出现排序)"""
    codes = list(codes)
    universe = set(codes)
    seen: set = set()
    orbits = []
    for c in codes:
        if c in seen:
            continue
        seen.add(c)
        orbit = [c]
        frontier = [c]
        while frontier:
            nxt = []
            for x in frontier:
                for g in generators:
                    y = act_on_code(x, g)
                    if y not in universe:
                        raise InvariantViolation("码集合在群作用下不封闭")
                    if y not in seen:
                        seen.add(y)
                        orbit.append(y)
                        nxt.append(y)
            frontier = nxt
        orbits.append(orbit)
    return orbits


def same_orbit(a: BinaryCode, b: BinaryCode, group: PermGroup,
               aut_a: Optional[AutGroup] = None) -> bool:
    """存在 g ∈ group 使 a^g = b 当且仅当某个 alpha ∈ Aut(a) 使 alpha*phi ∈ group"""
    if a == b:
        return True
    phi = is_equivalent(a, b)
    if phi is None:
        return False
    aut_a = aut_a or automorphism_group(a)
    for alpha in aut_a.group.elements(limit=get_budget()):
        if group.contains(alpha * phi):
            return True
    return False


def orbit_fuse(reps: Sequence[BinaryCode], group: PermGroup,
               transversal: Sequence[Permutation], progress: bool = False) -> List[BinaryCode]:
    """把大群 (= ∪ t_j group) 的轨道代表展开为子群 group 的轨道代表"""
    out: List[BinaryCode] = []
    auts: Dict[BinaryCode, AutGroup] = {}
    for rep in tqdm(reps, desc='orbit fuse', disable=not progress):
        for t in transversal:
            cand = act_on_code(rep, t)
            duplicate = False
            for existing in out:
                if existing not in auts:
                    auts[existing] = automorphism_group(existing)
                if same_orbit(existing, cand, group, auts[existing]):
                    duplicate = True
                    break
            if not duplicate:
                out.append(cand)
    return out


@dataclass
class BruteForceOrbits:
    members: List[BinaryCode]
    orbits: List[List[BinaryCode]]

    def orbit_index(self, code: BinaryCode) -> Optional[int]:
        for idx, orb in enumerate(self.orbits):
            if code in orb:
                return idx
        return None


def brute_force_defining_set(Y: BinaryCode, kind: str, generators: Sequence[Permutation]) -> BruteForceOrbits:
    """枚举长度 n36 的全部自对偶码, 取出 D_k 并在给定群生成元下求轨道"""
    n36 = Y.length
    pi1_h, pi2_sigma = _h_targets(kind.upper(), n36)
    members = []
    for C in enumerate_self_dual_codes(n36):
        if not in_defining_set(C, pi1_h, pi2_sigma):
            continue
        if is_equivalent(C, Y) is None:
            continue
        members.append(C)
    return BruteForceOrbits(members, orbits_in_set(members, generators))


def check_rep_set(rep_set: OrbitRepSet, brute: BruteForceOrbits) -> Tuple[bool, str]:
    """代表集合完整且两两不在同一轨道"""
    hit = []
    for rep in rep_set.reps:
        idx = brute.orbit_index(rep.code)
        if idx is None:
            return False, f"代表 {rep.code} 不在 D_k 中"
        hit.append(idx)
    if len(set(hit)) != len(hit):
        return False, "存在两个代表落在同一轨道"
    if len(hit) != len(brute.orbits):
        return False, f"代表 {len(hit)} 个, 轨道 {len(brute.orbits)} 个"
    return True, 'ok'


# ---------------------------------------------------------------- 小长度自对偶码

def enumerate_self_dual_codes(n: int, progress: bool = False):
    """长度 n 的全部自对偶码, 即 1^⊥/<1> 中的 Lagrange 子空间的原像

    商空间基取 v_i = e_i + e_n (i = 1..n-2), Gram 矩阵为 J - I。
    """
    if n % 2 or n < 2:
        raise ValueError(f"自对偶码长度必须为正偶数: {n}")
    ones = (1 << n) - 1
    m = n - 2
    basis = [(1 << i) | (1 << (n - 1)) for i in range(m)]
    if m == 0:
        yield BinaryCode(n, [ones])
        return
    gram = [[0 if i == j else 1 for j in range(m)] for i in range(m)]
    space = FormSpace(gram, field='F2')
    total = count_lagrangians_f2(m)
    for lag in tqdm(enumerate_max_isotropic(space), total=total, desc=f'self-dual n={n}', disable=not progress):
        rows = [ones]
        for vec in lag:
            x = 0
            for c, b in zip(vec, basis):
                if c:
                    x ^= b
            rows.append(x)
        yield BinaryCode(n, rows)


def count_self_dual_codes(n: int) -> int:
    """prod_{i=1}^{n/2-1} (2^i + 1)"""
    return count_lagrangians_f2(n - 2) if n > 2 else 1


@dataclass
class SelfDualClass:
    code: BinaryCode
    aut_order: int
    orbit_size: int
    weights: Dict[int, int]


@dataclass
class BinaryClassification:
    length: int
    total: int
    classes: List[SelfDualClass]

    def mass(self) -> int:
        return sum(c.orbit_size for c in self.classes)


def classify_self_dual_binary(n: int, progress: bool = False) -> BinaryClassification:
    """长度 n ≤ 12 的自对偶码在 S_n 下的分类

    先按重量分布分桶, 每桶内逐个做等价判定, 直到该桶的质量
    sum n!/|Aut| 等于桶内码的个数。
    """
    limit = SEARCH_CONFIG['equiv']['classify_max_length']
    if n > limit:
        raise ValueError(f"长度 {n} 超出分类上限 {limit}")
    codes = list(enumerate_self_dual_codes(n, progress=progress))
    expected = count_self_dual_codes(n)
    if len(codes) != expected:
        raise InvariantViolation(f"枚举得到 {len(codes)} 个自对偶码, 公式为 {expected}")

    buckets: Dict[Tuple, List[BinaryCode]] = defaultdict(list)
    for c in codes:
        buckets[tuple(sorted(weight_profile(c).counts.items()))].append(c)

    nfact = factorial(n)
    classes: List[SelfDualClass] = []
    for key in sorted(buckets):
        members = buckets[key]
        reps: List[SelfDualClass] = []
        mass = 0
        for c in members:
            if mass == len(members):
                break
            if any(is_equivalent(r.code, c) is not None for r in reps):
                continue
            order = automorphism_group(c).order
            reps.append(SelfDualClass(c, order, nfact // order, dict(key)))
            mass += nfact // order
        if mass != len(members):
            raise InvariantViolation(f"重量分布 {dict(key)} 的质量 {mass} != 码数 {len(members)}")
        classes.extend(reps)
    result = BinaryClassification(n, len(codes), classes)
    logger.info(f"长度 {n}: {len(classes)} 类, 共 {len(codes)} 个自对偶码")
    return result
