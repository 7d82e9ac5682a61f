"""E 之上的超码搜索

A4: V = E^⊥/E = V(sigma) ⊥ W, V(sigma) 上取自对偶子模, W 上取 Hermitian
GF(4) 结构下的极大迷向子空间 (直接枚举, 或先枚举迷向点再取商)。
D8: 用 F2<k>-模的基座 C(k) = C(1+k+k^2+k^3) 求集合 W_j。
"""
import logging
from dataclasses import asdict, dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from tqdm import tqdm

from decomp import averaging_image
from gf2codes import (BinaryCode, DistanceResult, bit_positions, combine, dual, is_doubly_even,
                      is_self_dual, is_self_orthogonal, kernel_combinations, min_distance_result,
                      parity, popcount, reduce_vector, rref, solve_affine, sum_codes)
from equiv import automorphism_group
from gf4 import MUL, OMEGA, OMEGA_BAR
from isotropic import (FormSpace, enumerate_max_isotropic, isotropic_points, max_isotropic_through)
from permgrp import PermGroup, Permutation, act_on_code, act_on_vector, centralizer_in, is_automorphism
from search_config import SEARCH_CONFIG, BudgetExceededError, InvariantViolation, check_budget

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------- 结果记录

@dataclass
class VerdictRecord:
    source: str
    subspace_or_coset_id: str
    dim: int
    doubly_even: bool
    min_distance_or_bound: int
    verdict: str

    def to_dict(self) -> Dict:
        return asdict(self)


def distance_verdict(code: BinaryCode, bound: int) -> DistanceResult:
    """d(code) ≥ bound 的判定; 不满足时 value 为找到的较轻码字重量"""
    if code.dimension == 0:
        return DistanceResult(code.length + 1)
    return min_distance_result(code, upper_bound=bound - 1)


def code_verdict(source: str, ident: str, code: BinaryCode, bound: int,
                 require_self_dual: bool = True) -> VerdictRecord:
    de = is_doubly_even(code)
    dist = distance_verdict(code, bound)
    if require_self_dual and not is_self_dual(code):
        verdict = 'not-self-dual'
    elif not de:
        verdict = 'not-doubly-even'
    elif dist.value < bound:
        verdict = 'd<bound'
    else:
        verdict = 'extremal'
    return VerdictRecord(source, ident, code.dimension, de, dist.value, verdict)


def _mask_id(masks: Sequence[int]) -> str:
    return ','.join(format(m, 'x') for m in rref(masks)) or '0'


# ---------------------------------------------------------------- 构造 E

def build_E(D_tilde: BinaryCode, sigma: Permutation, order: int) -> BinaryCode:
    """D~ + D~^sigma (+ D~^{sigma^2})"""
    if sigma.order() != order or order not in (2, 3):
        raise ValueError(f"sigma 的阶 {sigma.order()} 与要求的 {order} 不符")
    E = D_tilde
    image = D_tilde
    for _ in range(order - 1):
        image = act_on_code(image, sigma)
        E = sum_codes(E, image)
    return E


# ---------------------------------------------------------------- 商空间

class QuotientSpace:
    """V = E^⊥/E, 带诱导的对称双线性型 b 与二次精化 q(v) = wt(v)/2 mod 2

    坐标为 basis (E^⊥ 中 E 的补的 RREF 基) 上的掩码。长度为 8 的倍数且
    1 ∉ E 时先把 1 并入 E: 任何双偶自对偶超码都包含 1。
    """

    def __init__(self, E: BinaryCode, action: Optional[Permutation] = None, add_all_ones: bool = True):
        n = E.length
        if not is_self_orthogonal(E):
            raise ValueError("E 不是自正交码")
        if not is_doubly_even(E):
            raise ValueError("E 不是双偶码")
        ones = (1 << n) - 1
        if add_all_ones and n % 8 == 0 and not E.contains(ones):
            E = BinaryCode(n, list(E.rows) + [ones])
        self.base = E
        self.ambient = dual(E)
        self.basis = rref(reduce_vector(E.rows, r) for r in self.ambient.rows)
        self.dim = len(self.basis)
        if self.dim != self.ambient.dimension - E.dimension:
            raise InvariantViolation("商空间维数与 dim E^⊥ - dim E 不符")
        self.gram_rows = []
        for a in self.basis:
            row = 0
            for j, b in enumerate(self.basis):
                if parity(a & b):
                    row |= 1 << j
            self.gram_rows.append(row)
        if len(rref(self.gram_rows)) != self.dim:
            raise InvariantViolation("商空间上的双线性型退化")
        self.action = action
        self.action_images = self.images_of(action) if action is not None else None

    # 坐标
    def coords(self, v: int) -> int:
        r = reduce_vector(self.base.rows, v)
        mask = 0
        for i, b in enumerate(self.basis):
            if r & (b & -b):
                r ^= b
                mask |= 1 << i
        if r:
            raise ValueError("向量不在 E^⊥ 中")
        return mask

    def lift_vector(self, mask: int) -> int:
        return combine(self.basis, mask)

    def lift(self, masks: Sequence[int]) -> BinaryCode:
        """子空间 U ≤ V 的原像 E ≤ C_U ≤ E^⊥"""
        return BinaryCode(self.base.length, list(self.base.rows) + [self.lift_vector(m) for m in masks])

    # 形式
    def form(self, x: int, y: int) -> int:
        s = 0
        for i in bit_positions(x):
            s ^= parity(self.gram_rows[i] & y)
        return s

    def quad(self, x: int) -> Optional[int]:
        """q(x) = wt/2 mod 2; 奇重陪集返回 None"""
        w = popcount(self.lift_vector(x))
        if w % 2:
            return None
        return (w % 4) // 2

    # 作用
    def images_of(self, perm: Permutation) -> List[int]:
        if not is_automorphism(self.base, perm):
            raise ValueError(f"{perm} 不保持 E")
        images = [self.coords(act_on_vector(b, perm)) for b in self.basis]
        for i in range(self.dim):
            for j in range(i, self.dim):
                if self.form(images[i], images[j]) != self.form(1 << i, 1 << j):
                    raise InvariantViolation("作用不保持双线性型")
            if self.quad(images[i]) != self.quad(1 << i):
                raise InvariantViolation("作用不保持二次型")
        return images

    @staticmethod
    def apply_images(images: Sequence[int], x: int) -> int:
        y = 0
        for i in bit_positions(x):
            y ^= images[i]
        return y

    def apply(self, x: int) -> int:
        if self.action_images is None:
            raise ValueError("商空间没有给定作用")
        return self.apply_images(self.action_images, x)

    def is_invariant(self, masks: Sequence[int], images: Sequence[int]) -> bool:
        span_rows = rref(masks)
        return all(reduce_vector(span_rows, self.apply_images(images, m)) == 0 for m in masks)

    def __repr__(self) -> str:
        return f"QuotientSpace(n={self.base.length}, dim E={self.base.dimension}, dim V={self.dim})"


def quotient(E: BinaryCode, action: Optional[Permutation] = None) -> QuotientSpace:
    return QuotientSpace(E, action)


@dataclass
class SigmaSplit:
    fixed: List[int]
    moving: List[int]


def sigma_split(V: QuotientSpace) -> SigmaSplit:
    """V(sigma) = ker(A - 1), W = im(A + A^2), b-正交且 V = V(sigma) ⊕ W"""
    if V.action_images is None:
        raise ValueError("需要 sigma 在商空间上的作用")
    A = V.action_images
    for i in range(V.dim):
        x = 1 << i
        if V.apply_images(A, V.apply_images(A, V.apply_images(A, x))) != x:
            raise ValueError("action order ≠ 3: sigma 在商空间上的作用不是 3 阶的")
    fixed = [m for m in kernel_combinations([A[i] ^ (1 << i) for i in range(V.dim)])]
    fixed = rref(fixed)
    moving = rref(A[i] ^ V.apply_images(A, A[i]) for i in range(V.dim))
    if len(fixed) + len(moving) != V.dim or len(rref(fixed + moving)) != V.dim:
        raise InvariantViolation("V 不是 V(sigma) 与 W 的直和")
    for u in fixed:
        for w in moving:
            if V.form(u, w):
                raise InvariantViolation("V(sigma) 与 W 不正交")
    return SigmaSplit(fixed, moving)


# ---------------------------------------------------------------- W 上的 Hermitian 结构

@dataclass
class HermitianSpace:
    """W 上 w*u := sigma(u) 给出的 GF(4) 结构与 Hermitian 型

    f2_basis = [u_1, sigma u_1, ..., u_m, sigma u_m] (V 中的掩码)。
    """
    quotient: QuotientSpace
    f2_basis: List[int]
    space: FormSpace

    @property
    def dim_F4(self) -> int:
        return self.space.dim

    def to_quotient(self, vec: Sequence[int]) -> int:
        """F4 坐标 c_i = a_i + b_i w  ->  sum a_i u_i + b_i sigma u_i"""
        x = 0
        for i, c in enumerate(vec):
            if c & 1:
                x ^= self.f2_basis[2 * i]
            if c & 2:
                x ^= self.f2_basis[2 * i + 1]
        return x

    def from_quotient(self, x: int) -> Tuple[int, ...]:
        _, coeffs = _express(self.f2_basis, x)
        return tuple((coeffs >> (2 * i)) & 1 | (((coeffs >> (2 * i + 1)) & 1) << 1) for i in range(self.dim_F4))

    def subspace_masks(self, vectors: Sequence[Sequence[int]]) -> List[int]:
        out = []
        for v in vectors:
            out.append(self.to_quotient(v))
            out.append(self.to_quotient(tuple(MUL[OMEGA][c] for c in v)))
        return out

    def lift(self, vectors: Sequence[Sequence[int]]) -> BinaryCode:
        return self.quotient.lift(self.subspace_masks(vectors))


def _express(basis: Sequence[int], x: int) -> Tuple[bool, int]:
    """x 在 basis (线性无关) 下的系数掩码"""
    ok_mask, kernel = solve_affine(basis, x)
    if ok_mask is None:
        raise ValueError("向量不在张成空间中")
    if kernel:
        raise InvariantViolation("基向量线性相关")
    return True, ok_mask


def hermitian_form_value(V: QuotientSpace, u: int, v: int) -> int:
    """H(u,v) = b(u,v) + w b(u, sigma v) + w^2 b(u, sigma^2 v)"""
    sv = V.apply(v)
    s2v = V.apply(sv)
    h = 0
    if V.form(u, v):
        h ^= 1
    if V.form(u, sv):
        h ^= OMEGA
    if V.form(u, s2v):
        h ^= OMEGA_BAR
    return h


def hermitian_structure(V: QuotientSpace, W: Sequence[int]) -> HermitianSpace:
    """Raises: ValueError 当 sigma 在 W 上的极小多项式不是 x^2 + x + 1"""
    for w in W:
        s = V.apply(w)
        if s ^ V.apply(s) ^ w:
            raise ValueError("sigma 在 W 上的极小多项式不是 x^2 + x + 1")
    w_rows = rref(W)
    for w in W:
        if reduce_vector(w_rows, V.apply(w)):
            raise ValueError("W 不是 sigma 不变的")

    f2_basis: List[int] = []
    acc: List[int] = []
    for w in W:
        if reduce_vector(acc, w):
            f2_basis += [w, V.apply(w)]
            acc = rref(f2_basis)
    if len(f2_basis) != len(W):
        raise InvariantViolation("W 的 F4 基构造失败")
    us = f2_basis[0::2]
    m = len(us)
    gram = [[hermitian_form_value(V, us[i], us[j]) for j in range(m)] for i in range(m)]
    space = FormSpace(gram, field='F4')

    for i in range(m):
        for j in range(m):
            u, v = us[i], us[j]
            h = gram[i][j]
            if hermitian_form_value(V, V.apply(u), v) != MUL[OMEGA][h]:
                raise InvariantViolation("H(wu, v) != w H(u, v)")
            if hermitian_form_value(V, u, V.apply(v)) != MUL[OMEGA_BAR][h]:
                raise InvariantViolation("H(u, wv) != conj(w) H(u, v)")
        if gram[i][i] not in (0, 1):
            raise InvariantViolation("H(u,u) 不在 GF(2) 中")
    return HermitianSpace(V, f2_basis, space)


# ---------------------------------------------------------------- V(sigma) 上的自对偶子模

@dataclass
class SubmoduleRecord:
    basis: List[int]
    code: BinaryCode
    doubly_even: bool
    distance: DistanceResult
    record: VerdictRecord

    @property
    def admissible(self) -> bool:
        return self.doubly_even and self.record.verdict != 'd<bound'


def selfdual_submodules(V: QuotientSpace, fixed: Sequence[int], bound: int,
                        extra: Sequence[Permutation] = (), source: str = 'E',
                        quad_filter: bool = True) -> List[SubmoduleRecord]:
    """V(sigma) 中全部极大 b-迷向、q-迷向且在 extra 作用下不变的子空间

    quad_filter=False 时不按 q 过滤 (用于与直接的码层检查比对)。
    """
    limit = SEARCH_CONFIG['extend']['max_vsigma_dim']
    fixed = list(fixed)
    d = len(fixed)
    if d > limit:
        raise BudgetExceededError(f"dim V(sigma) = {d} 超过上限 {limit}", {'dim': d, 'limit': limit})
    extra_images = []
    fixed_rows = rref(fixed)
    for p in extra:
        images = V.images_of(p)
        if any(reduce_vector(fixed_rows, V.apply_images(images, u)) for u in fixed):
            raise ValueError(f"{p} 不保持 V(sigma)")
        extra_images.append(images)

    def lifts(lag) -> List[int]:
        return [combine(fixed, sum(1 << i for i, c in enumerate(vec) if c)) for vec in lag]

    if d == 0:
        candidates: Iterator[List[int]] = iter([[]])
    else:
        gram = [[V.form(a, b) for b in fixed] for a in fixed]
        space = FormSpace(gram, field='F2')
        candidates = (lifts(lag) for lag in enumerate_max_isotropic(space))

    out = []
    for U in candidates:
        if quad_filter and any(V.quad(u) != 0 for u in U):
            continue
        if any(not V.is_invariant(U, images) for images in extra_images):
            continue
        code = V.lift(U)
        rec = code_verdict(source, _mask_id(U), code, bound, require_self_dual=False)
        out.append(SubmoduleRecord(list(U), code, rec.doubly_even, distance_verdict(code, bound), rec))
    return out


# ---------------------------------------------------------------- A4 超码搜索

@dataclass
class A4Result:
    source: str
    route: str
    submodules: List[VerdictRecord] = field(default_factory=list)
    points_total: int = 0
    points_surviving: int = 0
    point_orbits: int = 0
    subspaces_checked: int = 0
    records: List[VerdictRecord] = field(default_factory=list)
    overcodes: List[BinaryCode] = field(default_factory=list)

    @property
    def excluded(self) -> bool:
        return not self.overcodes


def _point_orbit_reps(points: List[Tuple[int, ...]], herm: HermitianSpace, sigma: Permutation,
                      symmetry: Optional[PermGroup]) -> List[Tuple[int, ...]]:
    """迷向点在 C_{Aut(E1)}(sigma) 下的轨道代表 (取下标最小者)"""
    E1 = herm.quotient.base
    if symmetry is None:
        try:
            symmetry = centralizer_in(automorphism_group(E1).group, [sigma])
        except BudgetExceededError as e:
            logger.warning(f"无法计算 Aut(E1), 跳过轨道约化: {str(e)}")
            return points
    codes = [herm.lift([p]) for p in points]
    index = {c: i for i, c in enumerate(codes)}
    gens = [g for g in symmetry.generators if not g.is_identity()]
    seen = [False] * len(points)
    reps = []
    for start in range(len(points)):
        if seen[start]:
            continue
        seen[start] = True
        reps.append(points[start])
        frontier = [start]
        while frontier:
            nxt = []
            for i in frontier:
                for g in gens:
                    j = index.get(act_on_code(codes[i], g))
                    if j is None:
                        raise InvariantViolation("候选点集合在对称群作用下不封闭")
                    if not seen[j]:
                        seen[j] = True
                        nxt.append(j)
            frontier = nxt
    return reps


def _in_shard(idx: int, shard: Optional[Tuple[int, int]]) -> bool:
    return shard is None or idx % shard[1] == shard[0]


def a4_overcode_search(E: BinaryCode, sigma: Permutation, bound: Optional[int] = None,
                       route: str = 'direct', source: str = 'E',
                       shard: Optional[Tuple[int, int]] = None,
                       symmetry: Optional[PermGroup] = None,
                       orbit_reduce: bool = True,
                       progress: bool = False) -> A4Result:
    """E 的全部 sigma 不变双偶自对偶超码中最小距离 ≥ bound 的那些

    route='direct': W 上全部极大迷向子空间;
    route='two-stage': 先筛迷向点, 按对称群约化, 再取各点的 p^⊥/p。
    """
    bound = bound or SEARCH_CONFIG['extend']['distance_bound']
    if route not in ('direct', 'two-stage'):
        raise ValueError(f"未知的搜索路径: {route}")
    result = A4Result(source, route)
    V = QuotientSpace(E, action=sigma)
    split = sigma_split(V)
    logger.info(f"{source}: dim V = {V.dim}, dim V(sigma) = {len(split.fixed)}, dim W = {len(split.moving)}")

    seen_codes = set()
    for sub in selfdual_submodules(V, split.fixed, bound, source=source):
        result.submodules.append(sub.record)
        if not sub.admissible:
            continue
        V1 = QuotientSpace(sub.code, action=sigma)
        s1 = sigma_split(V1)
        if s1.fixed:
            raise InvariantViolation("E1^⊥/E1 中仍有 sigma 不动向量")
        herm = hermitian_structure(V1, s1.moving)

        if route == 'direct':
            stream = (U for idx, U in enumerate(enumerate_max_isotropic(herm.space)) if _in_shard(idx, shard))
        else:
            points = list(isotropic_points(herm.space))
            result.points_total += len(points)
            survivors = []
            for p in tqdm(points, desc=f'{source} points', disable=not progress):
                if distance_verdict(herm.lift([p]), bound).value >= bound:
                    survivors.append(p)
            result.points_surviving += len(survivors)
            reps = _point_orbit_reps(survivors, herm, sigma, symmetry) if orbit_reduce else survivors
            result.point_orbits += len(reps)
            reps = [p for idx, p in enumerate(reps) if _in_shard(idx, shard)]
            stream = (U for p in reps for U in max_isotropic_through(herm.space, p))

        for U in tqdm(stream, desc=f'{source} subspaces', disable=not progress):
            result.subspaces_checked += 1
            code = herm.lift(U)
            if code in seen_codes:
                continue
            seen_codes.add(code)
            rec = code_verdict(source, _mask_id(herm.subspace_masks(U)), code, bound)
            result.records.append(rec)
            if rec.verdict == 'extremal':
                result.overcodes.append(code)
    logger.info(f"{source} ({route}): 检查 {result.subspaces_checked} 个子空间, "
                f"满足条件的超码 {len(result.overcodes)} 个")
    return result


# ---------------------------------------------------------------- D8: 基座与 W 集合

@dataclass
class ModuleStructure:
    code: BinaryCode
    k: Permutation
    socle: BinaryCode
    free_rank: Optional[int]

    @property
    def is_free(self) -> bool:
        return self.free_rank is not None


def _check_order4(code: BinaryCode, k: Permutation) -> None:
    if k.order() != 4:
        raise ValueError(f"k 的阶为 {k.order()}, 需要 4")
    if not is_automorphism(code, k):
        raise ValueError(f"k = {k} 不是码的自同构")


def socle(code: BinaryCode, k: Permutation) -> ModuleStructure:
    """C(1+k+k^2+k^3); dim C = 4 dim socle 时为自由模"""
    _check_order4(code, k)
    soc = averaging_image(code, k)
    free = code.dimension // 4 if 4 * soc.dimension == code.dimension else None
    return ModuleStructure(code, k, soc, free)


def _orbit_sum(v: int, k: Permutation) -> int:
    acc, x = 0, v
    for _ in range(4):
        acc ^= x
        x = act_on_vector(x, k)
    return acc


def module_span(E: BinaryCode, w: int, k: Permutation) -> BinaryCode:
    """E + w F2<k>"""
    rows = list(E.rows)
    x = w
    for _ in range(4):
        rows.append(x)
        x = act_on_vector(x, k)
    return BinaryCode(E.length, rows)


@dataclass
class D8Result:
    source: str
    socle_basis: List[int]
    transversal: List[int]
    solution_counts: List[int]
    sizes: List[int]
    members: List[List[int]]
    records: List[VerdictRecord] = field(default_factory=list)

    @property
    def killed(self) -> bool:
        """某个 W_j 为空即说明 E 没有满足条件的自由超码"""
        return any(s == 0 for s in self.sizes)


def d8_overcode_search(E: BinaryCode, k: Permutation, bound: Optional[int] = None,
                       source: str = 'E', shard: Optional[Tuple[int, int]] = None,
                       progress: bool = False) -> D8Result:
    """W_j = {w + E ∈ E^⊥/E | w(1+k+k^2+k^3) = b_j, d(E + w F2<k>) ≥ bound}

    b_j 取 E(k) 的 RREF 基; 陪集代表取 E^⊥ 中 E 的固定补 t_i 的组合,
    陪集编号即组合掩码。方程 sum x_i t_i N + e N = b_j 先对 span(E N) 约化,
    再在 x 上解仿射方程组。
    """
    bound = bound or SEARCH_CONFIG['extend']['distance_bound']
    _check_order4(E, k)
    if not is_self_orthogonal(E):
        raise ValueError("E 不是自正交码")
    n = E.length
    socle_basis = list(fixed_code_order4(E, k).rows)
    ambient = dual(E)
    transversal = rref(reduce_vector(E.rows, r) for r in ambient.rows)
    image_E = rref(_orbit_sum(e, k) for e in E.rows)
    columns = [reduce_vector(image_E, _orbit_sum(t, k)) for t in transversal]

    result = D8Result(source, socle_basis, transversal, [], [], [])
    for j, b in enumerate(socle_basis):
        target = reduce_vector(image_E, b)
        particular, kernel = solve_affine(columns, target)
        members: List[int] = []
        if particular is None:
            result.solution_counts.append(0)
        else:
            check_budget(1 << len(kernel), f'W_{j + 1} 陪集枚举')
            result.solution_counts.append(1 << len(kernel))
            for idx in tqdm(range(1 << len(kernel)), desc=f'{source} W_{j + 1}', disable=not progress):
                if not _in_shard(idx, shard):
                    continue
                x = particular ^ combine(kernel, idx)
                w = combine(transversal, x)
                code = module_span(E, w, k)
                dist = distance_verdict(code, bound)
                ok = dist.value >= bound
                result.records.append(VerdictRecord(
                    source, f"j={j + 1}:{x:x}", code.dimension, is_doubly_even(code), dist.value,
                    'in-W' if ok else 'd<bound'))
                if ok:
                    members.append(x)
        result.members.append(sorted(members))
        result.sizes.append(len(members))
    logger.info(f"{source}: |W_j| = {result.sizes}" + (" (存在空集)" if result.killed else ""))
    return result


def fixed_code_order4(code: BinaryCode, k: Permutation) -> BinaryCode:
    """k (4 阶) 的不动子码, 按核计算"""
    rows = list(code.rows)
    diffs = [r ^ act_on_vector(r, k) for r in rows]
    return BinaryCode(code.length, [combine(rows, m) for m in kernel_combinations(diffs)])


def coset_id(E: BinaryCode, transversal: Sequence[int], w: int) -> int:
    """w + E 在固定补 transversal 下的编号"""
    r = reduce_vector(E.rows, w)
    mask = 0
    for i, t in enumerate(transversal):
        if r & (t & -t):
            r ^= t
            mask |= 1 << i
    if r:
        raise ValueError("向量不在 E^⊥ 中")
    return mask


def planted_witnesses(C: BinaryCode, E: BinaryCode, k: Permutation,
                      socle_basis: Sequence[int]) -> List[int]:
    """在 C 中为每个 b_j 找 w 使得 wN = b_j"""
    rows = list(C.rows)
    images = [_orbit_sum(r, k) for r in rows]
    out = []
    for b in socle_basis:
        mask, _ = solve_affine(images, b)
        if mask is None:
            raise InvariantViolation(f"b = {b:x} 不在 C N 中")
        out.append(combine(rows, mask))
    return out


__all__ = [
    'VerdictRecord', 'distance_verdict', 'code_verdict', 'build_E', 'QuotientSpace', 'quotient',
    'SigmaSplit', 'sigma_split', 'HermitianSpace', 'hermitian_form_value', 'hermitian_structure',
    'SubmoduleRecord', 'selfdual_submodules', 'A4Result', 'a4_overcode_search', 'ModuleStructure',
    'socle', 'module_span', 'D8Result', 'd8_overcode_search', 'fixed_code_order4', 'coset_id',
    'planted_witnesses',
]
