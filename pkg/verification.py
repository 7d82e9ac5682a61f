"""命名的校验套件: core, golay, counts, lemma-repr, d8-socle

每个检查返回一段说明文字, 失败时抛出 AssertionError 或 SearchError。
"""
import time
import logging
from dataclasses import dataclass, field
from math import factorial
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from decomp import f4_identify, maschke_split, p_multiply
from equiv import (automorphism_group, brute_force_defining_set, check_rep_set, classify_self_dual_binary,
                   count_self_dual_codes, enumerate_self_dual_codes, lemma_repr, orbit_fuse, orbits_in_set)
from extend import (QuotientSpace, a4_overcode_search, coset_id, d8_overcode_search, planted_witnesses,
                    selfdual_submodules, sigma_split)
from gf2codes import (BinaryCode, direct_sum, dual, golay24, hamming8, is_doubly_even, is_self_dual,
                      min_distance, repetition_code, weight_profile)
from gf4 import (MonomialMap, all_additive_self_dual, classify_small_additive_selfdual, f4_min_distance,
                 hermitian_dual, is_hermitian_self_dual, is_trace_hermitian_self_dual, monomial_lift,
                 phi_lift, pi_project)
from isotropic import (FormSpace, brute_force_max_isotropic, count_lagrangians_f2, count_max_isotropic,
                       enumerate_max_isotropic, isotropic_point_count, isotropic_points)
from permgrp import Permutation, act_on_code, conjugating_element, natural_lift, wreath_centralizer
from prepare_desk_data import (a4_desk_cases, d8_desk_cases, golay_s3_frame, hexacode_image,
                               lemma_desk_degree, lemma_desk_inputs)
from search_config import SEARCH_CONFIG

logger = logging.getLogger(__name__)

SUITES = ('core', 'golay', 'counts', 'lemma-repr', 'd8-socle')

HAMMING_AUT_ORDER = 1344
GOLAY_AUT_ORDER = 244823040
UNITARY_COUNTS = {1: 3, 2: 27, 3: 891, 4: 114939, 5: 58963707}
ADDITIVE_CLASSES = {1: 1, 2: 2, 3: 3, 4: 6, 5: 11}


@dataclass
class CheckResult:
    suite: str
    check: str
    status: str
    detail: str
    seconds: float

    def to_dict(self) -> Dict:
        return {'suite': self.suite, 'check': self.check, 'status': self.status,
                'detail': self.detail, 'seconds': round(self.seconds, 3)}


@dataclass
class VerificationReport:
    suite: str
    results: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.status == 'pass' for r in self.results)

    @property
    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if r.status != 'pass']


def _unitary_space(m: int) -> FormSpace:
    """GF(4)^{2m} 上的标准 Hermitian 型 sum x_i conj(y_i)"""
    n = 2 * m
    return FormSpace([[1 if i == j else 0 for j in range(n)] for i in range(n)], field='F4')


def _random_permutation(rng: np.random.Generator, n: int) -> Permutation:
    return Permutation([int(x) + 1 for x in rng.permutation(n)])


def _random_monomial(rng: np.random.Generator, n: int) -> MonomialMap:
    perm = _random_permutation(rng, n)
    scalars = tuple(int(x) for x in rng.integers(1, 4, size=n))
    conj = tuple(bool(x) for x in rng.integers(0, 2, size=n))
    return MonomialMap(perm, scalars, conj)


class SuiteRunner:
    """按名字运行一个套件"""

    def __init__(self, seed: Optional[int] = None, progress: bool = False):
        self.seed = SEARCH_CONFIG['runner']['seed'] if seed is None else seed
        self.progress = progress
        self._frame = None

    @property
    def frame(self):
        if self._frame is None:
            self._frame = golay_s3_frame()
        return self._frame

    def checks(self, suite: str) -> List[Tuple[str, Callable[[], str]]]:
        table = {
            'core': [
                ('gf2-basics', self.check_gf2_basics),
                ('hamming-aut', self.check_hamming_aut),
                ('maschke', self.check_maschke),
                ('permutations', self.check_permutations),
                ('f4-identify', self.check_f4_identify),
            ],
            'golay': [
                ('golay-code', self.check_golay_code),
                ('golay-aut', self.check_golay_aut),
                ('hexacode', self.check_hexacode),
                ('a4-desk-plane', self.check_a4_plane),
                ('a4-desk-preimage', self.check_a4_preimage),
            ],
            'counts': [
                ('unitary-max-isotropic', self.check_unitary_counts),
                ('isotropic-points', self.check_isotropic_points),
                ('self-dual-mass', self.check_self_dual_mass),
                ('additive-classes', self.check_additive_classes),
                ('phi-pi-roundtrip', self.check_phi_pi),
                ('wreath-index', self.check_wreath_index),
            ],
            'lemma-repr': [
                ('lemma-a4', lambda: self.check_lemma('A4')),
                ('lemma-d8', lambda: self.check_lemma('D8')),
                ('orbit-fuse-a4', self.check_orbit_fuse),
            ],
            'd8-socle': [
                ('d8-planted', self.check_d8_planted),
                ('d8-empty', self.check_d8_empty),
                ('d8-selfdual', self.check_d8_selfdual),
            ],
        }
        if suite not in table:
            raise ValueError(f"未知的校验套件: {suite}, 可选 {', '.join(SUITES)}")
        return table[suite]

    def run(self, suite: str) -> VerificationReport:
        report = VerificationReport(suite)
        for name, check in tqdm(self.checks(suite), desc=f'verify {suite}', disable=not self.progress):
            start = time.time()
            try:
                detail = check()
                status = 'pass'
            except AssertionError as e:
                detail, status = str(e) or 'assertion failed', 'fail'
            except Exception as e:
                logger.error(f"检查 {name} 出错: {str(e)}")
                detail, status = f"{type(e).__name__}: {e}", 'error'
            result = CheckResult(suite, name, status, detail, time.time() - start)
            report.results.append(result)
            log = logger.info if status == 'pass' else logger.error
            log(f"[{suite}] {name}: {status} ({detail})")
        return report

    # ------------------------------------------------------------ core

    def check_gf2_basics(self) -> str:
        e8 = hamming8()
        assert is_self_dual(e8) and is_doubly_even(e8), "e8 应为双偶自对偶码"
        assert weight_profile(e8).counts == {0: 1, 4: 14, 8: 1}, "e8 的重量分布不对"
        c = BinaryCode.from_strings(['110000', '001100'])
        assert dual(dual(c)) == c, "对偶的对偶不等于自身"
        assert dual(c).dimension == 4
        return "e8 [8,4,4], dual(dual(C)) = C"

    def check_hamming_aut(self) -> str:
        order = automorphism_group(hamming8()).order
        assert order == HAMMING_AUT_ORDER, f"|Aut(e8)| = {order}"
        return f"|Aut(e8)| = {order}"

    def _planted_order3_codes(self, count: int = 100) -> List[Tuple[BinaryCode, Permutation]]:
        """由已知的 (码, 无不动点 3 阶自同构) 随机重排坐标得到"""
        i2 = repetition_code(2)
        i2_3 = direct_sum(direct_sum(i2, i2), i2)
        i2_6 = direct_sum(i2_3, i2_3)
        g12 = Permutation.from_cycles([(1, 3, 5), (2, 4, 6), (7, 9, 11), (8, 10, 12)], 12)
        bases = [(i2_6, g12)]
        i2_9 = direct_sum(i2_6, i2_3)
        g18 = Permutation.from_cycles([(1, 3, 5), (2, 4, 6), (7, 9, 11), (8, 10, 12),
                                       (13, 15, 17), (14, 16, 18)], 18)
        bases.append((i2_9, g18))
        bases.append((self.frame.code, self.frame.g))
        rng = np.random.default_rng(self.seed)
        out = []
        for t in range(count):
            code, g = bases[t % len(bases)]
            p = _random_permutation(rng, code.length)
            out.append((act_on_code(code, p), g.conjugate(p)))
        return out

    def check_maschke(self) -> str:
        codes = self._planted_order3_codes()
        for code, g in codes:
            split = maschke_split(code, g)
            c = code.length // 3
            assert split.even.dimension == c, f"dim E(g) = {split.even.dimension}, 期望 {c}"
        return f"{len(codes)} 个码满足 C = C(g) ⊕ E(g), dim E(g) = c"

    def check_permutations(self) -> str:
        rho = Permutation.parse('(1,2)', 18)
        assert natural_lift(rho) == Permutation.parse('(1,3)(2,4)', 36), "natural_lift 不对"
        a = Permutation.parse('(1,2,3)(4,5,6)', 6)
        b = Permutation.parse('(1,4,5)(2,3,6)', 6)
        t = conjugating_element(a, b)
        assert t is not None and a.conjugate(t) == b
        return "natural_lift, conjugating_element"

    def check_f4_identify(self) -> str:
        assert [f4_identify(s) for s in ('000', '011', '110', '101')] == [0, 1, 2, 3]
        # (x + x^2)^2 = x + x^2
        assert p_multiply('011', '011') == (0, 1, 1)
        return "P ≅ F4"

    # ------------------------------------------------------------ golay

    def check_golay_code(self) -> str:
        code = golay24()
        assert is_self_dual(code) and is_doubly_even(code)
        assert min_distance(code) == 8
        assert weight_profile(code).counts == {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}
        return "[24,12,8], 759 个 8 重码字"

    def check_golay_aut(self) -> str:
        order = automorphism_group(golay24()).order
        assert order == GOLAY_AUT_ORDER, f"|Aut(G24)| = {order}"
        return f"|Aut(G24)| = {order}"

    def check_hexacode(self) -> str:
        image = hexacode_image(self.frame)
        assert image.length == 8 and image.dimension == 4, f"像为 [{image.length},{image.dimension}]"
        assert is_hermitian_self_dual(image), "像不是 Hermitian 自对偶码"
        assert hermitian_dual(image) == image
        d = f4_min_distance(image).value
        assert d == 4, f"d = {d}"
        X = pi_project(image)
        assert X.length == 4 and X.dimension == 4
        assert is_trace_hermitian_self_dual(X), "pi(E) 不是迹-Hermitian 自对偶的"
        assert phi_lift(X) == image, "phi(pi(E)) != E"
        return "[8,4,4] Hermitian 自对偶, pi 给出 (4, 2^4) 加性码, phi∘pi = id"

    def check_a4_plane(self) -> str:
        case = a4_desk_cases(self.frame)[0]
        V = QuotientSpace(case.E, action=case.sigma)
        split = sigma_split(V)
        assert not split.fixed and len(split.moving) == 8, f"V(sigma) {len(split.fixed)}, W {len(split.moving)}"
        direct = a4_overcode_search(case.E, case.sigma, case.bound, route='direct', source=case.name)
        staged = a4_overcode_search(case.E, case.sigma, case.bound, route='two-stage', source=case.name,
                                    orbit_reduce=False)
        assert direct.subspaces_checked == 27, f"直接枚举 {direct.subspaces_checked} 个子空间"
        assert staged.points_total == 45, f"迷向点 {staged.points_total} 个"
        assert case.target in direct.overcodes, "直接路径没有找到 Golay 码"
        assert set(direct.overcodes) == set(staged.overcodes), "两条路径结果不一致"
        return f"27 个子空间, 45 个迷向点, 超码 {len(direct.overcodes)} 个"

    def check_a4_preimage(self) -> str:
        case = a4_desk_cases(self.frame)[1]
        V = QuotientSpace(case.E, action=case.sigma)
        split = sigma_split(V)
        assert len(split.fixed) == 6, f"dim V(sigma) = {len(split.fixed)}"
        all_subs = selfdual_submodules(V, split.fixed, case.bound, quad_filter=False)
        assert len(all_subs) == count_lagrangians_f2(6) == 135
        filtered = selfdual_submodules(V, split.fixed, case.bound)
        assert len(filtered) == sum(1 for s in all_subs if is_doubly_even(s.code)), "q 过滤与双偶检查不一致"
        result = a4_overcode_search(case.E, case.sigma, case.bound, route='two-stage', source=case.name)
        assert case.target in result.overcodes, "两阶段路径没有找到 Golay 码"
        return f"135 个 Lagrange 子空间, q-迷向 {len(filtered)} 个, 超码 {len(result.overcodes)} 个"

    # ------------------------------------------------------------ counts

    def check_unitary_counts(self) -> str:
        for m in (1, 2, 3):
            brute = len(brute_force_max_isotropic(_unitary_space(m)))
            streamed = sum(1 for _ in enumerate_max_isotropic(_unitary_space(m)))
            assert brute == streamed == UNITARY_COUNTS[m], f"m'={m}: brute {brute}, stream {streamed}"
        for m in (4, 5):
            assert count_max_isotropic(m) == UNITARY_COUNTS[m]
        return "3, 27, 891, 114939, 58963707"

    def check_isotropic_points(self) -> str:
        for m in (1, 2):
            pts = sum(1 for _ in isotropic_points(_unitary_space(m)))
            assert pts == isotropic_point_count(2 * m), f"dim {2 * m}: {pts}"
        assert isotropic_point_count(10) == 174933
        return "3, 45, 174933"

    def check_self_dual_mass(self) -> str:
        for n in range(2, 13, 2):
            got = sum(1 for _ in enumerate_self_dual_codes(n))
            assert got == count_self_dual_codes(n), f"n={n}: {got}"
        for n in (2, 4, 6, 8):
            cls = classify_self_dual_binary(n)
            assert cls.mass() == cls.total, f"n={n}: mass {cls.mass()} != {cls.total}"
            assert sum(factorial(n) // c.aut_order for c in cls.classes) == cls.total
        return "n = 2..12 计数, n ≤ 8 质量公式"

    def check_additive_classes(self) -> str:
        for n in range(1, 5):
            cls = classify_small_additive_selfdual(n)
            expected_total = count_lagrangians_f2(2 * n)
            assert cls.total == expected_total, f"n={n}: total {cls.total}"
            assert len(cls.representatives) == ADDITIVE_CLASSES[n], f"n={n}: {len(cls.representatives)} 类"
            assert cls.mass() == cls.total
        return "1, 2, 3, 6 类 (n = 1..4)"

    def check_phi_pi(self) -> str:
        rng = np.random.default_rng(self.seed)
        checked = 0
        for n in range(1, 5):
            for X in all_additive_self_dual(n):
                E = phi_lift(X)
                assert E.dimension == n and is_hermitian_self_dual(E)
                assert pi_project(E) == X, "pi(phi(X)) != X"
                M = _random_monomial(rng, n)
                assert phi_lift(M.apply_additive(X)) == monomial_lift(M).apply_linear(E)
                checked += 1
        assert checked >= 1000
        return f"{checked} 个加性码"

    def check_wreath_index(self) -> str:
        a4 = wreath_centralizer('A4', 72)
        index = a4.G36.order() // a4.pi1_G.order()
        assert a4.G36.order() == 24 ** 6 * factorial(6), f"|G36| = {a4.G36.order()}"
        assert index == 64 == len(a4.transversal), f"指数 {index}, 代表 {len(a4.transversal)}"
        d8 = wreath_centralizer('D8', 72)
        assert len(d8.transversal) == 1 and d8.G36.order() == d8.pi1_G.order()
        return "A4 指数 64, D8 G36 = pi1(G)"

    # ------------------------------------------------------------ lemma-repr

    def check_lemma(self, kind: str) -> str:
        degree = lemma_desk_degree(kind)
        wreath = wreath_centralizer(kind, degree)
        parts = []
        for name, Y in lemma_desk_inputs(kind):
            reps = lemma_repr(Y, kind, source_class=name, seed=self.seed)
            brute = brute_force_defining_set(Y, kind, wreath.G36.generators)
            ok, msg = check_rep_set(reps, brute)
            assert ok, f"{kind} {name}: {msg}"
            for rep in reps.reps:
                assert rep.check_witness(Y), f"{kind} {name}: 代表的见证置换不对"
            parts.append(f"{name}: {len(reps)}")
        return f"{kind} " + ', '.join(parts)

    def check_orbit_fuse(self) -> str:
        kind = 'A4'
        wreath = wreath_centralizer(kind, lemma_desk_degree(kind))
        parts = []
        for name, Y in lemma_desk_inputs(kind):
            reps = lemma_repr(Y, kind, source_class=name, seed=self.seed)
            brute = brute_force_defining_set(Y, kind, wreath.G36.generators)
            expected = len(orbits_in_set(brute.members, wreath.pi1_G.generators))
            fused = orbit_fuse(reps.codes, wreath.pi1_G, wreath.transversal)
            assert len(fused) == expected, f"{name}: 融合 {len(fused)}, 穷举 {expected}"
            # 陪集代表右乘 pi1(G) 中的元素不改变结果
            u = wreath.pi1_G.random_element(seed=self.seed)
            shifted = [t * u for t in wreath.transversal]
            assert len(orbit_fuse(reps.codes, wreath.pi1_G, shifted)) == expected
            parts.append(f"{name}: {expected}")
        return ', '.join(parts)

    # ------------------------------------------------------------ d8-socle

    def check_d8_planted(self) -> str:
        case = next(c for c in d8_desk_cases() if c.name == 'planted')
        result = d8_overcode_search(case.E, case.k, case.bound, source=case.name)
        assert not result.killed, f"|W_j| = {result.sizes}"
        witnesses = planted_witnesses(case.planted, case.E, case.k, result.socle_basis)
        for j, w in enumerate(witnesses):
            cid = coset_id(case.E, result.transversal, w)
            assert cid in result.members[j], f"植入的 w 不在 W_{j + 1} 中"
        return f"|W_j| = {result.sizes}"

    def check_d8_empty(self) -> str:
        case = next(c for c in d8_desk_cases() if c.name == 'empty')
        result = d8_overcode_search(case.E, case.k, case.bound, source=case.name)
        assert result.sizes[0] == 0 and result.solution_counts[0] == 0, f"|W_1| = {result.sizes[0]}"
        assert result.killed
        return "W_1 为空"

    def check_d8_selfdual(self) -> str:
        case = next(c for c in d8_desk_cases() if c.name == 'selfdual')
        result = d8_overcode_search(case.E, case.k, case.bound, source=case.name)
        assert all(s == 0 for s in result.sizes), f"|W_j| = {result.sizes}"
        return f"全部 {len(result.sizes)} 个 W_j 为空"


def run_suite(suite: str, seed: Optional[int] = None, progress: bool = False) -> VerificationReport:
    return SuiteRunner(seed=seed, progress=progress).run(suite)
