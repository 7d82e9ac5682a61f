"""交错形式 (GF(2)) 与 Hermitian 形式 (GF(4)) 下的极大全迷向子空间枚举

核心递推: 取迷向向量 e 与 H(e,f)=1 的迷向 f, V = <e,f> ⊥ V'。
包含 e 的极大迷向子空间与 V' 的极大迷向子空间一一对应; 不含 e 的由
(W, w0, a) 参数化, 其中 W 属于 V' 的极大迷向子空间, w0 取遍 W 的一个补,
a 满足 a + conj(a) = H(w0, w0)。
"""
import logging
from itertools import product
from typing import Iterator, List, Optional, Sequence, Tuple

from gf4 import CONJ, INV, MUL, f4_rref, hermitian_dual, LinearF4Code, vec_add, vec_conj, vec_scale
from search_config import InvariantViolation, check_budget

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]

FIELD_SCALARS = {'F2': (0, 1), 'F4': (0, 1, 2, 3)}


class FormSpace:
    """带非退化形式 H(u,v) = sum u_i G_ij conj(v_j) 的向量空间

    field='F2' 时 conj 为恒等, 要求 G 对称且对角线为 0 (交错形式);
    field='F4' 时要求 G_ji = conj(G_ij) (Hermitian 形式)。
    """

    def __init__(self, gram: Sequence[Sequence[int]], field: str = 'F4'):
        if field not in FIELD_SCALARS:
            raise ValueError(f"未知的域: {field}")
        self.field = field
        self.scalars = FIELD_SCALARS[field]
        self.conj = CONJ if field == 'F4' else (0, 1, 2, 3)
        self.gram = tuple(tuple(int(x) for x in row) for row in gram)
        self.dim = len(self.gram)
        for row in self.gram:
            if len(row) != self.dim or any(x not in self.scalars for x in row):
                raise ValueError("Gram 矩阵不是域上的方阵")
        self._check_form()

    def _check_form(self) -> None:
        n = self.dim
        for i in range(n):
            for j in range(n):
                if self.gram[j][i] != self.conj[self.gram[i][j]]:
                    raise InvariantViolation(f"Gram 矩阵在 ({i},{j}) 处不满足 (共轭) 对称性")
            if self.field == 'F2' and self.gram[i][i]:
                raise InvariantViolation("交错形式的 Gram 矩阵对角线必须为 0")
        if len(f4_rref(self.gram, n)) != n:
            raise InvariantViolation("形式退化")

    def form(self, u: Sequence[int], v: Sequence[int]) -> int:
        s = 0
        conj = self.conj
        for i, a in enumerate(u):
            if not a:
                continue
            row = self.gram[i]
            ma = MUL[a]
            for j, b in enumerate(v):
                g = row[j]
                if b and g:
                    s ^= ma[MUL[g][conj[b]]]
        return s

    def is_totally_isotropic(self, vectors: Sequence[Sequence[int]]) -> bool:
        return all(self.form(u, v) == 0 for i, u in enumerate(vectors) for v in vectors[i:])

    def standard_basis(self) -> List[Vector]:
        return [tuple(1 if j == i else 0 for j in range(self.dim)) for i in range(self.dim)]

    def __repr__(self) -> str:
        return f"FormSpace({self.field}, dim={self.dim})"


# ---------------------------------------------------------------- 小工具

def rank(vectors: Sequence[Sequence[int]], dim: int) -> int:
    return len(f4_rref(vectors, dim))


def in_span(vectors: Sequence[Sequence[int]], v: Sequence[int], dim: int) -> bool:
    return rank(list(vectors) + [v], dim) == rank(vectors, dim)


def subspace_key(vectors: Sequence[Sequence[int]], dim: int) -> Tuple[Vector, ...]:
    """子空间的规范形式 (RREF), 用于比较与去重"""
    return tuple(f4_rref(vectors, dim))


def span_vectors(basis: Sequence[Vector], scalars: Sequence[int], dim: int) -> Iterator[Vector]:
    for coeffs in product(scalars, repeat=len(basis)):
        v = (0,) * dim
        for c, b in zip(coeffs, basis):
            if c:
                v = vec_add(v, vec_scale(c, b))
        yield v


def extend_to_complement(sub: Sequence[Vector], ambient: Sequence[Vector], dim: int) -> List[Vector]:
    """从 ambient 中贪心选出 span(sub) 在 span(ambient) 中的补的基"""
    current = list(sub)
    r = rank(current, dim)
    out = []
    for v in ambient:
        if rank(current + [v], dim) > r:
            current.append(v)
            out.append(v)
            r += 1
    return out


def _solve_trace(space: FormSpace, value: int) -> int:
    """返回某个 t 使得 t + conj(t) = value"""
    for t in space.scalars:
        if t ^ space.conj[t] == value:
            return t
    raise InvariantViolation(f"方程 t + conj(t) = {value} 无解")


# ---------------------------------------------------------------- 双曲对与投影

def _find_isotropic(space: FormSpace, basis: Sequence[Vector]) -> Optional[Vector]:
    for v in basis:
        if space.form(v, v) == 0:
            return v
    if len(basis) < 2:
        return None
    for v in span_vectors(basis[:2], space.scalars, space.dim):
        if any(v) and space.form(v, v) == 0:
            return v
    raise InvariantViolation("二维非退化子空间中找不到迷向向量")


def hyperbolic_partner(space: FormSpace, basis: Sequence[Vector], e: Vector) -> Vector:
    """在 span(basis) 中找 f 使得 H(e,f)=1 且 H(f,f)=0"""
    for v in basis:
        h = space.form(e, v)
        if h:
            fp = vec_scale(space.conj[INV[h]], v)
            t = _solve_trace(space, space.form(fp, fp))
            f = vec_add(fp, vec_scale(t, e)) if t else fp
            if space.form(e, f) != 1 or space.form(f, f) != 0:
                raise InvariantViolation("双曲对构造失败")
            return f
    raise InvariantViolation("形式在子空间上退化: 迷向向量与所有基向量正交")


def project_off(space: FormSpace, v: Vector, e: Vector, f: Vector) -> Vector:
    """v -> v + H(v,f) e + H(v,e) f, 像落在 <e,f>^⊥ 中"""
    out = v
    a = space.form(v, f)
    if a:
        out = vec_add(out, vec_scale(a, e))
    b = space.form(v, e)
    if b:
        out = vec_add(out, vec_scale(b, f))
    return out


# ---------------------------------------------------------------- 枚举

def _max_isotropic(space: FormSpace, basis: List[Vector]) -> Iterator[List[Vector]]:
    if not basis:
        yield []
        return
    e = _find_isotropic(space, basis)
    if e is None:
        # 一维各向异性空间 (只在 GF(4) 奇数维出现)
        yield []
        return
    f = hyperbolic_partner(space, basis, e)
    dim = space.dim
    projected = [project_off(space, v, e, f) for v in basis]
    sub = [v for v in f4_rref(projected, dim)]
    if len(sub) != len(basis) - 2:
        raise InvariantViolation(f"<e,f>^⊥ 的维数 {len(sub)} != {len(basis) - 2}")

    for W in _max_isotropic(space, sub):
        yield [e] + W
        comp = extend_to_complement(W, sub, dim)
        for w0 in span_vectors(comp, space.scalars, dim):
            h00 = space.form(w0, w0)
            shifted = []
            for w in W:
                lam = space.conj[space.form(w0, w)]
                shifted.append(vec_add(w, vec_scale(lam, e)) if lam else w)
            base = vec_add(f, w0)
            for a in space.scalars:
                if a ^ space.conj[a] != h00:
                    continue
                u = vec_add(base, vec_scale(a, e)) if a else base
                yield [u] + shifted


def enumerate_max_isotropic(space: FormSpace, basis: Optional[Sequence[Vector]] = None,
                            budget_check: bool = True) -> Iterator[List[Vector]]:
    """枚举 span(basis) (默认整个空间) 的全部极大全迷向子空间, 每个以一组基给出

    Raises:
        BudgetExceededError: 预期个数超过预算
    """
    basis = list(basis) if basis is not None else space.standard_basis()
    if budget_check:
        check_budget(expected_max_isotropic(space.field, len(basis)), '极大迷向子空间枚举')
    yield from _max_isotropic(space, basis)


def count_lagrangians_f2(dim: int) -> int:
    """2m 维辛空间中 Lagrange 子空间个数 prod_{i=1}^m (2^i + 1)"""
    if dim % 2:
        raise ValueError("辛空间维数必须为偶数")
    out = 1
    for i in range(1, dim // 2 + 1):
        out *= 2 ** i + 1
    return out


def count_max_isotropic(m: int) -> int:
    """GF(4)^{2m} 上 Hermitian 形式的极大迷向子空间个数 prod_{i=1}^m (2^{2i-1} + 1)"""
    out = 1
    for i in range(1, m + 1):
        out *= 2 ** (2 * i - 1) + 1
    return out


def count_max_isotropic_odd(m: int) -> int:
    """GF(4)^{2m+1}: prod_{i=1}^m (2^{2i+1} + 1)"""
    out = 1
    for i in range(1, m + 1):
        out *= 2 ** (2 * i + 1) + 1
    return out


def expected_max_isotropic(field: str, dim: int) -> int:
    if field == 'F2':
        return count_lagrangians_f2(dim)
    if dim % 2:
        return count_max_isotropic_odd(dim // 2)
    return count_max_isotropic(dim // 2)


def isotropic_point_count(n: int) -> int:
    """GF(4)^n 上 Hermitian 形式的迷向点 (一维迷向子空间) 个数"""
    return (2 ** n - (-1) ** n) * (2 ** (n - 1) - (-1) ** (n - 1)) // 3


def normalized_vectors(dim: int) -> Iterator[Vector]:
    """GF(4)^dim 中第一个非零坐标为 1 的向量, 每个点恰一个代表"""
    for lead in range(dim):
        for tail in product(range(4), repeat=dim - lead - 1):
            yield (0,) * lead + (1,) + tail


def isotropic_points(space: FormSpace, shard: Optional[Tuple[int, int]] = None) -> Iterator[Vector]:
    """迷向点的规范代表; shard=(i, N) 时只输出下标模 N 余 i 的点"""
    if space.field != 'F4':
        raise ValueError("isotropic_points 只用于 GF(4) Hermitian 空间")
    idx = 0
    for v in normalized_vectors(space.dim):
        if space.form(v, v):
            continue
        if shard is None or idx % shard[1] == shard[0]:
            yield v
        idx += 1


def perp_complement(space: FormSpace, point: Vector) -> List[Vector]:
    """p^⊥ 中 <p> 的一个补 C 的基; C 上的形式非退化, p^⊥ = <p> ⊕ C"""
    dim = space.dim
    c = [0] * dim
    for i in range(dim):
        s = 0
        for j in range(dim):
            g = space.gram[i][j]
            if g and point[j]:
                s ^= MUL[g][space.conj[point[j]]]
        c[i] = s
    # hermitian_dual 求 sum x_i conj(r_i) = 0, 取 r = conj(c)
    perp = hermitian_dual(LinearF4Code(dim, [vec_conj(c)])).rows
    if not in_span(perp, point, dim):
        raise InvariantViolation("迷向点不在自身的正交补中")
    return extend_to_complement([point], list(perp), dim)


def restrict(space: FormSpace, basis: Sequence[Vector]) -> FormSpace:
    """形式在 span(basis) 上的限制, 以 basis 为坐标"""
    gram = [[space.form(u, v) for v in basis] for u in basis]
    return FormSpace(gram, field=space.field)


def lift_coordinates(coeffs: Sequence[int], basis: Sequence[Vector], dim: int) -> Vector:
    v = (0,) * dim
    for c, b in zip(coeffs, basis):
        if c:
            v = vec_add(v, vec_scale(c, b))
    return v


def max_isotropic_through(space: FormSpace, point: Vector) -> Iterator[List[Vector]]:
    """包含给定迷向点的全部极大迷向子空间"""
    comp = perp_complement(space, point)
    quotient = restrict(space, comp)
    for U in enumerate_max_isotropic(quotient):
        yield [point] + [lift_coordinates(u, comp, space.dim) for u in U]


def brute_force_max_isotropic(space: FormSpace) -> List[Tuple[Vector, ...]]:
    """按 RREF 形状直接枚举全部 k 维子空间并检查迷向性 (仅用于校验小维数)

    k 取 Witt 指数 dim // 2; 逐行填充自由元并在行完成时剪枝。
    """
    from itertools import combinations
    dim = space.dim
    k = dim // 2
    found = []
    for pivots in combinations(range(dim), k):
        free_cols = [[j for j in range(p + 1, dim) if j not in pivots] for p in pivots]

        def extend(rows: List[Vector], level: int):
            if level == k:
                found.append(tuple(rows))
                return
            p = pivots[level]
            for vals in product(space.scalars, repeat=len(free_cols[level])):
                row = [0] * dim
                row[p] = 1
                for j, x in zip(free_cols[level], vals):
                    row[j] = x
                row = tuple(row)
                if space.form(row, row) or any(space.form(row, r) for r in rows):
                    continue
                extend(rows + [row], level + 1)

        extend([], 0)
    return found
