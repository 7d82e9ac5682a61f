"""桌面规模的类比数据

长度 72 的计算依赖外部数据集 (41 个 [36,18,8] 码与 195,520 个加性码),
这里构造同一套流程可以在几秒到几分钟内跑完的小规模输入:

* Golay 码上的 S3 坐标系 (g 为无不动点 3 阶元, sigma 为反转 g 的对合)
* A4 超码搜索的 E (Golay 码的子码)
* D8 W 集合搜索的 E (长度 16, 含植入的超码)
* repr 引理的小长度 Y
* S3 筛选用的长度 4 加性码数据集
"""
import os
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from tqdm import tqdm

from decomp import f4_to_binary, fixed_code, map_E_to_F4, maschke_split
from equiv import enumerate_self_dual_codes
from extend import fixed_code_order4, socle
from gf2codes import BinaryCode, direct_sum, golay24, hamming8, min_distance, repetition_code
from gf4 import MUL, OMEGA, LinearF4Code, all_additive_self_dual
from permgrp import Permutation, act_on_code, is_automorphism, is_fixed_point_free
from search_config import SEARCH_CONFIG, InvariantViolation

logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

DESK_DIR = os.path.join(SEARCH_CONFIG['data']['root_dir'], 'desk')


# ---------------------------------------------------------------- PSL(2,23) 与 Golay 码

def mobius_permutation(a: int, b: int, c: int, d: int, p: int = 23) -> Permutation:
    """x -> (ax + b)/(cx + d) 在射影直线上的作用; 坐标 i ≤ p 对应 i-1, 坐标 p+1 对应无穷远点"""
    inf = p
    images = []
    for x in list(range(p)) + [inf]:
        if x == inf:
            y = inf if c == 0 else (a * pow(c, -1, p)) % p
        else:
            num = (a * x + b) % p
            den = (c * x + d) % p
            y = inf if den == 0 else (num * pow(den, -1, p)) % p
        images.append(y + 1)
    return Permutation(images)


def psl2_elements(p: int = 23) -> List[Permutation]:
    seen = set()
    for a in range(p):
        for b in range(p):
            for c in range(p):
                for d in range(p):
                    if (a * d - b * c) % p == 1:
                        seen.add(mobius_permutation(a, b, c, d, p))
    return sorted(seen)


@dataclass
class GolayFrame:
    """重新编号后的 Golay 码: g = (1,2,3)(4,5,6)..., sigma = (1,4)(2,6)(3,5)..."""
    code: BinaryCode
    g: Permutation
    sigma: Permutation
    relabel: Permutation


def _frame_relabel(g0: Permutation, s0: Permutation) -> Permutation:
    n = g0.degree
    images = [0] * n
    done = set()
    label = 1
    for a in range(1, n + 1):
        if a in done:
            continue
        b = s0(a)
        for pt in (a, g0(a), g0(g0(a)), b, g0(b), g0(g0(b))):
            if pt in done:
                raise InvariantViolation(f"sigma 把 g 的轮换映到自身: {a}")
            done.add(pt)
            images[pt - 1] = label
            label += 1
    return Permutation(images)


def golay_s3_frame() -> GolayFrame:
    """在 PSL(2,23) 中找 S3 = <g0, s0> 并把坐标重新编号"""
    code = golay24()
    elems = psl2_elements(23)
    order3 = [x for x in elems if x.order() == 3 and is_fixed_point_free(x)]
    involutions = [x for x in elems if x.order() == 2 and is_fixed_point_free(x)]
    if not order3 or not involutions:
        raise InvariantViolation("PSL(2,23) 中找不到无不动点的 3 阶元或对合")
    g0 = order3[0]
    inv_g0 = g0.inverse()
    for s0 in involutions:
        if g0.conjugate(s0) == inv_g0:
            break
    else:
        raise InvariantViolation(f"找不到反转 {g0} 的对合")
    for x in (g0, s0):
        if not is_automorphism(code, x):
            raise InvariantViolation(f"{x} 不是 Golay 码的自同构")

    relabel = _frame_relabel(g0, s0)
    frame = GolayFrame(act_on_code(code, relabel), g0.conjugate(relabel), s0.conjugate(relabel), relabel)
    cycles_g = [(6 * t + 1, 6 * t + 2, 6 * t + 3) for t in range(4)] + \
               [(6 * t + 4, 6 * t + 5, 6 * t + 6) for t in range(4)]
    cycles_s = []
    for t in range(4):
        cycles_s += [(6 * t + 1, 6 * t + 4), (6 * t + 2, 6 * t + 6), (6 * t + 3, 6 * t + 5)]
    if frame.g != Permutation.from_cycles(cycles_g, 24) or frame.sigma != Permutation.from_cycles(cycles_s, 24):
        raise InvariantViolation("重新编号后的 g, sigma 形式不对")
    if not (is_automorphism(frame.code, frame.g) and is_automorphism(frame.code, frame.sigma)):
        raise InvariantViolation("重新编号后的 g, sigma 不保持 Golay 码")
    logger.info(f"Golay S3 坐标系: g0 = {g0}, s0 = {s0}")
    return frame


def hexacode_image(frame: Optional[GolayFrame] = None) -> LinearF4Code:
    """E(g) 在 P ≅ F4 下的像, [8,4,4] Hermitian 自对偶码"""
    frame = frame or golay_s3_frame()
    split = maschke_split(frame.code, frame.g)
    return map_E_to_F4(split.even, frame.g)


# ---------------------------------------------------------------- A4 桌面输入

@dataclass
class A4DeskCase:
    name: str
    E: BinaryCode
    sigma: Permutation
    bound: int
    target: BinaryCode


def _f4_plane_preimage(image: LinearF4Code, g: Permutation, dim: int = 2) -> List[int]:
    rows = []
    for v in image.rows[:dim]:
        rows.append(f4_to_binary(v, g))
        rows.append(f4_to_binary(tuple(MUL[OMEGA][c] for c in v), g))
    return rows


def a4_desk_cases(frame: Optional[GolayFrame] = None) -> List[A4DeskCase]:
    """Golay 码上的两个 E, g 起 A4 中 sigma 的作用

    plane:     C(g) + f^{-1}(T), V(sigma) = 0, W ≅ F4^4
    preimage:  f^{-1}(T), 补上全 1 后 V(sigma) ≅ F2^6
    T 取 hexacode 像的前两行张成的平面。
    """
    frame = frame or golay_s3_frame()
    g = frame.g
    image = hexacode_image(frame)
    pre = _f4_plane_preimage(image, g)
    fixed = fixed_code(frame.code, g)
    bound = min_distance(frame.code)
    plane = BinaryCode(24, list(fixed.rows) + pre)
    preimage = BinaryCode(24, pre)
    for E in (plane, preimage):
        if not frame.code.contains_code(E):
            raise InvariantViolation("E 不是 Golay 码的子码")
    return [
        A4DeskCase('golay-plane', plane, g, bound, frame.code),
        A4DeskCase('golay-preimage', preimage, g, bound, frame.code),
    ]


# ---------------------------------------------------------------- D8 桌面输入

@dataclass
class D8DeskCase:
    name: str
    E: BinaryCode
    k: Permutation
    bound: int
    planted: Optional[BinaryCode] = None


def d8_k(degree: int) -> Permutation:
    return Permutation.from_cycles([tuple(range(4 * a + 1, 4 * a + 5)) for a in range(degree // 4)], degree)


def free_length8_code() -> BinaryCode:
    """长度 8 的自对偶码中在 k = (1,2,3,4)(5,6,7,8) 下为自由 F2<k>-模且最小距离最大者"""
    k = d8_k(8)
    best, best_d = None, -1
    for C in enumerate_self_dual_codes(8):
        if not is_automorphism(C, k):
            continue
        if not socle(C, k).is_free:
            continue
        d = min_distance(C)
        if d > best_d:
            best, best_d = C, d
    if best is None:
        raise InvariantViolation("长度 8 中没有 k 下自由的自对偶码")
    return best


def d8_desk_cases() -> List[D8DeskCase]:
    """planted: E = C16(k), C16 给出每个 W_j 的成员
    empty:   E = <1111 0^12>, W_1 无解
    selfdual: E = C16, 界取 d(C16)+1, 每个 W_j 为空
    """
    C8 = free_length8_code()
    C16 = direct_sum(C8, C8)
    k16 = d8_k(16)
    if not is_automorphism(C16, k16):
        raise InvariantViolation("k16 不保持 C8 ⊕ C8")
    d16 = min_distance(C16)
    E = fixed_code_order4(C16, k16)
    return [
        D8DeskCase('planted', E, k16, d16, C16),
        D8DeskCase('empty', BinaryCode(16, [0b1111]), k16, d16),
        D8DeskCase('selfdual', C16, k16, d16 + 1),
    ]


# ---------------------------------------------------------------- repr 引理的 Y

def lemma_desk_inputs(kind: str) -> List[Tuple[str, BinaryCode]]:
    """A4: 长度 6 (H 作用在 12 个点上); D8: 长度 8 (H 作用在 16 个点上)"""
    kind = kind.upper()
    i2 = repetition_code(2)
    if kind == 'A4':
        return [('i2^3', direct_sum(direct_sum(i2, i2), i2))]
    if kind == 'D8':
        i2_4 = direct_sum(direct_sum(i2, i2), direct_sum(i2, i2))
        return [('i2^4', i2_4), ('e8', hamming8())]
    raise ValueError(f"未知的群类型: {kind}")


def lemma_desk_degree(kind: str) -> int:
    key = {'A4': 'a4_lemma_degree', 'D8': 'd8_lemma_degree'}[kind.upper()]
    return SEARCH_CONFIG['desk'][key]


# ---------------------------------------------------------------- 写出文件

def prepare_desk_datasets(out_dir: str = DESK_DIR, additive_length: int = 4) -> Dict[str, str]:
    """把桌面规模的数据写成与外部数据集相同的格式"""
    from dataset import write_additive_records, write_code_file

    try:
        paths = {}
        for kind in ('A4', 'D8'):
            kdir = os.path.join(out_dir, f'lemma_{kind.lower()}')
            for name, Y in lemma_desk_inputs(kind):
                write_code_file(os.path.join(kdir, f'{name.replace("^", "_")}.txt'), Y, comment=name)
            paths[f'lemma_{kind.lower()}'] = kdir

        frame = golay_s3_frame()
        write_code_file(os.path.join(out_dir, 'golay_frame.txt'), frame.code, comment=f"g = {frame.g}")
        paths['golay'] = os.path.join(out_dir, 'golay_frame.txt')

        codes = all_additive_self_dual(additive_length)
        additive_path = os.path.join(out_dir, f'additive{additive_length}.txt')
        write_additive_records(additive_path, list(tqdm(codes, desc='加性码')))
        paths['additive'] = additive_path

        logger.info(f"桌面数据已写入 {out_dir}")
        return paths
    except Exception as e:
        logger.error(f"桌面数据准备失败: {str(e)}")
        raise


if __name__ == "__main__":
    logging.getLogger().setLevel(logging.INFO)
    written = prepare_desk_datasets()
    for key, path in written.items():
        logger.info(f"- {key}: {path}")
