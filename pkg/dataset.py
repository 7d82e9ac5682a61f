"""外部数据集与中间结果的读写

所有读取函数都是流式的; 格式错误以 InputFormatError(path, line) 报告。

码文件:       第一行 "n k", 随后 k 行 {0,1} 串; '#' 开头为注释
F4 码文件:    第一行 "n k_F2", 随后若干行 {0,1,w,W} 串
加性码记录:   "n m" + m 行 {0,1,w,W} 串, 记录之间以空行分隔
置换/群文件:  每行一个不相交轮换记号的置换
轨道代表文件: JSON-lines, 每行一个代表
"""
import os
import json
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from tqdm import tqdm

from equiv import OrbitRep, OrbitRepSet
from gf2codes import BinaryCode, is_self_dual, min_distance_result, vector_from_string
from gf4 import (AdditiveF4Code, LinearF4Code, format_f4_vector, is_trace_hermitian_self_dual,
                 parse_f4_vector)
from permgrp import Permutation
from search_config import InputFormatError

logger = logging.getLogger(__name__)


def _content_lines(path: str) -> Iterator[Tuple[int, str]]:
    """(行号, 去掉首尾空白的内容), 跳过注释"""
    with open(path, 'r', encoding='utf-8') as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if line.startswith('#'):
                continue
            yield lineno, line


def _parse_header(text: str, path: str, lineno: int) -> Tuple[int, int]:
    parts = text.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise InputFormatError(f"头部应为两个非负整数 'n k', 实际为 {text!r}", path, lineno)
    n, k = int(parts[0]), int(parts[1])
    if n == 0:
        raise InputFormatError("码长必须为正", path, lineno)
    return n, k


# ---------------------------------------------------------------- 二元码

def parse_code_lines(lines: Sequence[Tuple[int, str]], path: str = '<string>') -> BinaryCode:
    """从 (行号, 内容) 序列解析一个二元码"""
    lines = [(no, text) for no, text in lines if text]
    if not lines:
        raise InputFormatError("文件为空", path)
    n, k = _parse_header(lines[0][1], path, lines[0][0])
    body = lines[1:]
    if len(body) != k:
        last = body[-1][0] if body else lines[0][0]
        raise InputFormatError(f"头部声明 {k} 行, 实际 {len(body)} 行", path, last)
    rows = []
    for lineno, text in body:
        if len(text) != n:
            raise InputFormatError(f"行长 {len(text)} != n = {n}", path, lineno)
        if any(ch not in '01' for ch in text):
            raise InputFormatError(f"非法字符: {text!r}", path, lineno)
        rows.append(vector_from_string(text))
    code = BinaryCode(n, rows)
    if code.dimension != k:
        raise InputFormatError(f"生成行线性相关: 秩 {code.dimension} < {k}", path, lines[0][0])
    return code


def read_code_file(path: str) -> BinaryCode:
    try:
        return parse_code_lines(list(_content_lines(path)), path)
    except InputFormatError:
        raise
    except Exception as e:
        logger.error(f"读取码文件失败: {str(e)}")
        raise InputFormatError(str(e), path)


def format_code(code: BinaryCode) -> List[str]:
    return [f"{code.length} {code.dimension}"] + code.to_strings()


def write_code_file(path: str, code: BinaryCode, comment: Optional[str] = None) -> None:
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        if comment:
            f.write(f"# {comment}\n")
        for line in format_code(code):
            f.write(line + '\n')


def list_code_files(path: str) -> List[str]:
    """目录下的码文件 (按名字排序); path 为文件时返回自身"""
    if os.path.isfile(path):
        return [path]
    if not os.path.isdir(path):
        raise InputFormatError("路径不存在", path)
    names = sorted(p for p in os.listdir(path) if not p.startswith('.'))
    return [os.path.join(path, p) for p in names if os.path.isfile(os.path.join(path, p))]


def iter_code_dir(path: str, progress: bool = False) -> Iterator[Tuple[str, Union[BinaryCode, InputFormatError]]]:
    """逐个读取目录下的码; 格式错误的文件以异常对象返回"""
    for file in tqdm(list_code_files(path), desc='读取码文件', disable=not progress):
        name = os.path.splitext(os.path.basename(file))[0]
        try:
            yield name, read_code_file(file)
        except InputFormatError as e:
            logger.warning(f"跳过格式错误的文件: {e}")
            yield name, e


# ---------------------------------------------------------------- GF(4) 码

def _parse_f4_row(text: str, n: int, path: str, lineno: int) -> Tuple[int, ...]:
    if len(text) != n:
        raise InputFormatError(f"行长 {len(text)} != n = {n}", path, lineno)
    try:
        return parse_f4_vector(text)
    except ValueError as e:
        raise InputFormatError(str(e), path, lineno)


def read_f4_code_file(path: str) -> LinearF4Code:
    """F4 线性码文件; 头部的 k 为生成集的 GF(2) 维数"""
    lines = [(no, text) for no, text in _content_lines(path) if text]
    if not lines:
        raise InputFormatError("文件为空", path)
    n, k_f2 = _parse_header(lines[0][1], path, lines[0][0])
    rows = [_parse_f4_row(text, n, path, no) for no, text in lines[1:]]
    code = LinearF4Code(n, rows)
    if 2 * code.dimension != k_f2:
        raise InputFormatError(f"GF(2) 维数 {2 * code.dimension} 与头部 {k_f2} 不符", path, lines[0][0])
    return code


def write_f4_code_file(path: str, code: LinearF4Code) -> None:
    with open(path, 'w', encoding='utf-8') as f:
        f.write(f"{code.length} {2 * code.dimension}\n")
        for row in code.rows:
            f.write(format_f4_vector(row) + '\n')


# ---------------------------------------------------------------- 加性码记录

def _records(path: str) -> Iterator[List[Tuple[int, str]]]:
    block: List[Tuple[int, str]] = []
    for lineno, text in _content_lines(path):
        if not text:
            if block:
                yield block
                block = []
            continue
        block.append((lineno, text))
    if block:
        yield block


def _parse_additive(block: List[Tuple[int, str]], path: str) -> AdditiveF4Code:
    n, m = _parse_header(block[0][1], path, block[0][0])
    body = block[1:]
    if len(body) != m:
        raise InputFormatError(f"头部声明 {m} 行, 实际 {len(body)} 行", path, block[0][0])
    rows = [_parse_f4_row(text, n, path, no) for no, text in body]
    code = AdditiveF4Code.from_vectors(n, rows)
    if code.dimension != m:
        raise InputFormatError(f"生成行在 GF(2) 上线性相关: 秩 {code.dimension} < {m}", path, block[0][0])
    return code


def iter_additive_records(path: str, shard: Optional[Tuple[int, int]] = None
                          ) -> Iterator[Tuple[int, Union[AdditiveF4Code, InputFormatError]]]:
    """流式读取加性码记录, 返回 (记录下标, 码或格式错误)

    shard = (i, N) 时只解析下标 ≡ i (mod N) 的记录。
    """
    for index, block in enumerate(_records(path)):
        if shard is not None and index % shard[1] != shard[0]:
            continue
        try:
            yield index, _parse_additive(block, path)
        except InputFormatError as e:
            logger.warning(f"记录 {index} 格式错误: {e}")
            yield index, e


def format_additive(code: AdditiveF4Code) -> List[str]:
    return [f"{code.length} {code.dimension}"] + [format_f4_vector(v) for v in code.vectors()]


def write_additive_records(path: str, codes: Sequence[AdditiveF4Code]) -> None:
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        for idx, code in enumerate(codes):
            if idx:
                f.write('\n')
            for line in format_additive(code):
                f.write(line + '\n')
    logger.info(f"写出 {len(codes)} 条加性码记录到 {path}")


# ---------------------------------------------------------------- 置换与群

def read_group_file(path: str, degree: int) -> List[Permutation]:
    perms = []
    for lineno, text in _content_lines(path):
        if not text:
            continue
        try:
            perms.append(Permutation.parse(text, degree))
        except ValueError as e:
            raise InputFormatError(str(e), path, lineno)
    return perms


def write_group_file(path: str, perms: Sequence[Permutation]) -> None:
    with open(path, 'w', encoding='utf-8') as f:
        for p in perms:
            f.write(f"{p}\n")


# ---------------------------------------------------------------- 轨道代表

def rep_to_dict(rep: OrbitRep, rep_set: OrbitRepSet) -> Dict:
    return {
        'source_class': rep_set.source_class,
        'kind': rep_set.kind,
        'code': format_code(rep.code),
        'tau': str(rep.tau),
        'rho_tilde': str(rep.rho_tilde),
        'h': str(rep.h),
        'sigma': str(rep.sigma),
    }


def save_orbit_reps(path: str, rep_sets: Sequence[OrbitRepSet]) -> int:
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    count = 0
    with open(path, 'w', encoding='utf-8') as f:
        for rep_set in rep_sets:
            for rep in rep_set.reps:
                f.write(json.dumps(rep_to_dict(rep, rep_set), sort_keys=True) + '\n')
                count += 1
    logger.info(f"写出 {count} 个轨道代表到 {path}")
    return count


def load_orbit_reps(path: str) -> List[OrbitRepSet]:
    """按来源类分组读回轨道代表, 保持文件中的顺序"""
    sets: Dict[Tuple[str, str], OrbitRepSet] = {}
    for lineno, text in _content_lines(path):
        if not text:
            continue
        try:
            obj = json.loads(text)
            code = parse_code_lines([(lineno, t) for t in obj['code']], path)
            n = code.length
            rep = OrbitRep(code,
                           Permutation.parse(obj['tau'], n),
                           Permutation.parse(obj['rho_tilde'], n),
                           Permutation.parse(obj['h'], n),
                           Permutation.parse(obj['sigma'], n // 2))
        except InputFormatError:
            raise
        except (KeyError, ValueError, TypeError) as e:
            raise InputFormatError(f"轨道代表记录无法解析: {e}", path, lineno)
        key = (str(obj['source_class']), obj['kind'])
        if key not in sets:
            sets[key] = OrbitRepSet(key[0], key[1])
        sets[key].reps.append(rep)
    return list(sets.values())


# ---------------------------------------------------------------- 导入校验

@dataclass
class IngestSummary:
    path: str
    accepted: List[str] = field(default_factory=list)
    rejected: List[Tuple[str, str]] = field(default_factory=list)
    per_class: Dict[str, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return len(self.accepted) + len(self.rejected)

    def describe(self) -> str:
        if not self.total:
            return "0 codes"
        if self.rejected:
            return f"{len(self.accepted)} codes accepted, {len(self.rejected)} rejected"
        classes = ', '.join(f"[{k}]" for k in sorted(self.per_class))
        return f"{len(self.accepted)} codes, all self-dual {classes}"


def validate_binary_code(code: BinaryCode, length: Optional[int] = None,
                         min_distance: Optional[int] = None) -> Tuple[Optional[str], Optional[int]]:
    """返回 (拒绝原因或 None, 最小距离或 None)"""
    if length is not None and code.length != length:
        return f"length {code.length} != {length}", None
    if not is_self_dual(code):
        return "not self-dual", None
    res = min_distance_result(code)
    if min_distance is not None and res.value < min_distance:
        return f"minimum distance {res.value} < {min_distance}", res.value
    return None, res.value


def ingest_codes(path: str, length: Optional[int] = None, min_distance: Optional[int] = None,
                 progress: bool = False) -> IngestSummary:
    """逐条校验码文件, 不会静默接受无效记录"""
    summary = IngestSummary(path)
    for name, item in iter_code_dir(path, progress=progress):
        if isinstance(item, Exception):
            summary.rejected.append((name, f"malformed: {item}"))
            continue
        reason, d = validate_binary_code(item, length, min_distance)
        if reason is not None:
            logger.warning(f"拒绝 {name}: {reason}")
            summary.rejected.append((name, reason))
            continue
        key = f"{item.length},{item.dimension},{d}"
        summary.per_class[key] = summary.per_class.get(key, 0) + 1
        summary.accepted.append(name)
    logger.info(f"导入 {path}: {summary.describe()}")
    return summary


def ingest_additive(path: str, length: Optional[int] = None, progress: bool = False) -> IngestSummary:
    summary = IngestSummary(path)
    for index, item in tqdm(iter_additive_records(path), desc='校验加性码', disable=not progress):
        name = str(index)
        if isinstance(item, Exception):
            summary.rejected.append((name, f"malformed: {item}"))
            continue
        if length is not None and item.length != length:
            summary.rejected.append((name, f"length {item.length} != {length}"))
            continue
        if not is_trace_hermitian_self_dual(item):
            summary.rejected.append((name, "not self-dual"))
            continue
        key = f"{item.length},2^{item.dimension}"
        summary.per_class[key] = summary.per_class.get(key, 0) + 1
        summary.accepted.append(name)
    logger.info(f"导入 {path}: {summary.describe()}")
    return summary
