"""sdsearch 命令行入口

    python sdsearch.py verify core
    python sdsearch.py s3 --dataset data/additive12.txt --shard 0/10
    python sdsearch.py orbits --codes data/sd36 --group d8
    python sdsearch.py extend --reps results/reps_d8.jsonl --group d8 --shard 3/10
    python sdsearch.py ingest data/sd36
    python sdsearch.py classify --length 8
    python sdsearch.py merge results/extend_0.jsonl results/extend_1.jsonl --output results/extend.jsonl
    python sdsearch.py plot --report results/s3.jsonl

每个计算命令都有 --scale desk 形式, 用小规模的类比输入在几分钟内跑完。
退出码: 0 完成, 1 不变量被破坏, 2 输入错误, 3 超出枚举预算。
"""
import argparse
import functools
import json
import logging
import os
import sys
from collections import Counter, defaultdict
from typing import Dict, Iterable, List, Optional, Sequence

from decomp import pi1_inverse
from dataset import (ingest_additive, ingest_codes, iter_additive_records, iter_code_dir,
                     load_orbit_reps, save_orbit_reps)
from equiv import OrbitRep, OrbitRepSet, classify_self_dual_binary, lemma_repr, orbit_fuse
from extend import VerdictRecord, a4_overcode_search, build_E, d8_overcode_search, distance_verdict
from gf2codes import BinaryCode, is_doubly_even, is_self_orthogonal
from gf4 import all_additive_self_dual, classify_small_additive_selfdual, s3_filter
from permgrp import act_on_code, d8_rotation, h_generators, wreath_centralizer
from prepare_desk_data import a4_desk_cases, d8_desk_cases, lemma_desk_inputs
from search_config import (EXIT_INPUT, EXIT_INVARIANT, EXIT_OK, SEARCH_CONFIG, BudgetExceededError,
                           InputFormatError, ResultLogger, SearchError, load_results,
                           validate_dataset_structure)
from search_runner import JobSpec, SearchRunner, in_shard, parse_shard
from verification import SUITES, run_suite

# 配置日志
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)

logger = logging.getLogger(__name__)

CONDITIONAL = 'conditional: external dataset'

# 完整数据集上应当得到的数, 数据集缺失时只作为说明输出
EXPECTED_FULL = {
    's3': 'max d(phi(X)) = 6 over 195,520 codes, zero contradictions',
    'orbits-a4': '25,299 G36-orbits over 41 classes',
    'orbits-d8': '9,590 orbits over 41 classes',
    'extend-a4': 'every admissible overcode has d < 16',
    'extend-d8': 'four surviving E codes, each killed by an empty W set',
}


# ---------------------------------------------------------------- worker (模块级, 供多进程使用)

@functools.lru_cache(maxsize=None)
def _wreath(kind: str, degree: int):
    return wreath_centralizer(kind, degree)


def _orbits_worker(index: int, item) -> List[Dict]:
    """单个类: lemma_repr, A4 时再按陪集代表展开"""
    name, Y, kind, seed = item
    try:
        rep_set = lemma_repr(Y, kind, source_class=name, seed=seed)
    except BudgetExceededError as e:
        logger.error(f"类 {name} 超出预算: {str(e)}")
        return [{'task': index, 'class': name, 'kind': kind, 'status': 'budget-exceeded',
                 'detail': str(e), 'lemma_reps': 0, 'orbits': 0}]

    lemma_count = len(rep_set)
    if kind == 'A4':
        wreath = _wreath(kind, 2 * Y.length)
        origin = {}
        for rep in rep_set.reps:
            for t in wreath.transversal:
                origin.setdefault(act_on_code(rep.code, t), (rep, t))
        fused = orbit_fuse(rep_set.codes, wreath.pi1_G, wreath.transversal)
        reps = []
        for code in fused:
            rep, t = origin[code]
            reps.append(OrbitRep(code, rep.tau, rep.rho_tilde * t, rep.h, rep.sigma))
        rep_set = OrbitRepSet(rep_set.source_class, rep_set.kind, reps)
    return [{'task': index, 'class': name, 'kind': kind, 'status': 'ok',
             'lemma_reps': lemma_count, 'orbits': len(rep_set), '_reps': rep_set}]


def _final_record(source: str, E: BinaryCode, verdict: str, value: int) -> Dict:
    return VerdictRecord(source, 'final', E.dimension, is_doubly_even(E), value, verdict).to_dict()


def _tagged(records, task: int, stage: str) -> List[Dict]:
    out = []
    for r in records:
        r = r.to_dict() if isinstance(r, VerdictRecord) else dict(r)
        r['task'] = task
        r['stage'] = stage
        out.append(r)
    return out


def _extend_worker(index: int, item) -> List[Dict]:
    """单个轨道代表: 构造 E, 过滤, 再做相应分支的超码搜索

    inner 不为 None 时只枚举本分片内的子空间或陪集, final 记录为局部结果。
    """
    source, code, kind, bound, route, inner = item
    degree = 2 * code.length
    hg = h_generators(kind, degree)
    D_tilde = BinaryCode(degree, [pi1_inverse(r, code.length) for r in code.rows])
    E = build_E(D_tilde, hg['sigma'], 3 if kind == 'A4' else 2)
    dist = distance_verdict(E, bound)
    if not is_self_orthogonal(E):
        return _tagged([_final_record(source, E, 'E-not-self-orthogonal', dist.value)], index, 'final')
    if not is_doubly_even(E) or dist.value < bound:
        return _tagged([_final_record(source, E, 'E-filtered', dist.value)], index, 'final')

    if kind == 'A4':
        result = a4_overcode_search(E, hg['sigma'], bound, route=route, source=source, shard=inner)
        verdict = 'excluded' if result.excluded else 'survivor'
        return (_tagged(result.submodules, index, 'submodule') + _tagged(result.records, index, 'overcode')
                + _tagged([_final_record(source, E, verdict, dist.value)], index, 'final'))

    result = d8_overcode_search(E, d8_rotation(hg), bound, source=source, shard=inner)
    final = _final_record(source, E, 'killed' if result.killed else 'survivor', dist.value)
    final['w_sizes'] = result.sizes
    return _tagged(result.records, index, 'coset') + _tagged([final], index, 'final')


def _extend_desk_worker(index: int, item) -> List[Dict]:
    kind, case, route, inner = item
    if kind == 'A4':
        result = a4_overcode_search(case.E, case.sigma, case.bound, route=route, source=case.name, shard=inner)
        verdict = 'survivor' if result.overcodes else 'excluded'
        final = _final_record(case.name, case.E, verdict, case.bound)
        final['target_found'] = case.target in result.overcodes
        return (_tagged(result.submodules, index, 'submodule') + _tagged(result.records, index, 'overcode')
                + _tagged([final], index, 'final'))

    result = d8_overcode_search(case.E, case.k, case.bound, source=case.name, shard=inner)
    final = _final_record(case.name, case.E, 'killed' if result.killed else 'survivor', case.bound)
    final['w_sizes'] = result.sizes
    return _tagged(result.records, index, 'coset') + _tagged([final], index, 'final')


# ---------------------------------------------------------------- 记录合并

_STAGE_ORDER = {'submodule': 0, 'overcode': 1, 'coset': 1, 'final': 2}


def _record_key(r: Dict):
    return r['task'], _STAGE_ORDER[r['stage']], r['subspace_or_coset_id'], json.dumps(r, sort_keys=True)


def _combine_finals(parts: List[Dict]) -> Dict:
    """同一任务在各分片上的局部 final 合并为整体判定"""
    final = dict(parts[0])
    if len(parts) == 1:
        return final
    if 'w_sizes' in final:
        sizes = [sum(col) for col in zip(*(p['w_sizes'] for p in parts))]
        final['w_sizes'] = sizes
        final['verdict'] = 'killed' if any(s == 0 for s in sizes) else 'survivor'
    elif final['verdict'] in ('survivor', 'excluded'):
        final['verdict'] = 'survivor' if any(p['verdict'] == 'survivor' for p in parts) else 'excluded'
    if 'target_found' in final:
        final['target_found'] = any(p['target_found'] for p in parts)
    return final


def merge_extend_records(records: Iterable[Dict]) -> List[Dict]:
    """extend 记录的规范形式: 去掉各分片重复给出的记录, 合并 final, 按 (任务, 阶段, 编号) 排序

    单分片运行与任意分片结果合并后得到相同的列表。
    """
    finals: Dict[int, List[Dict]] = defaultdict(list)
    rest: Dict[str, Dict] = {}
    for r in records:
        if r['stage'] == 'final':
            finals[r['task']].append(r)
        else:
            rest.setdefault(json.dumps(r, sort_keys=True), r)
    merged = list(rest.values()) + [_combine_finals(parts) for parts in finals.values()]
    return sorted(merged, key=_record_key)


def _extend_summary(kind: str, records: Sequence[Dict]) -> Dict:
    finals = [r for r in records if r['stage'] == 'final']
    verdicts: Dict[str, int] = {}
    for r in finals:
        verdicts[r['verdict']] = verdicts.get(r['verdict'], 0) + 1
    summary = {'group': kind, 'inputs': len(finals), 'verdicts': verdicts,
               'survivors': [r['source'] for r in finals if r['verdict'] == 'survivor']}
    if kind == 'D8':
        summary['w_sizes'] = {r['source']: r['w_sizes'] for r in finals if 'w_sizes' in r}
    return summary


def _orbits_summary(kind: str, records: Sequence[Dict]) -> Dict:
    return {'group': kind, 'classes': len(records),
            'orbits': sum(r['orbits'] for r in records),
            'budget_exceeded': [r['class'] for r in records if r['status'] != 'ok']}


def _s3_summary(records: Sequence[Dict]) -> Dict:
    hist = Counter(str(r['d_phi']) for r in records if r['d_phi'] is not None)
    ds = [r['d_phi'] for r in records if r['d_phi'] is not None]
    return {'histogram': dict(sorted(hist.items(), key=lambda kv: int(kv[0]))),
            'max_d': max(ds) if ds else None,
            'contradictions': sum(1 for r in records if r['status'] == 'contradiction'),
            'rejected': sum(1 for r in records if r['status'].startswith(('invalid', 'malformed'))),
            'records': len(records)}


# ---------------------------------------------------------------- 子命令

def _spec(args, inputs: Sequence[str] = (), **options) -> JobSpec:
    index, count = parse_shard(getattr(args, 'shard', None))
    return JobSpec(command=args.command, inputs=list(inputs), shard_index=index, shard_count=count,
                   distance_bound=getattr(args, 'bound', None) or SEARCH_CONFIG['extend']['distance_bound'],
                   seed=args.seed, output=args.output, options=options)


def _emit(result_logger: ResultLogger, output: Optional[str], summary: Dict) -> None:
    if summary:
        result_logger.set_summary(**summary)
    if output is None:
        for line in result_logger.to_lines():
            print(line)
    else:
        result_logger.save_results(output)
    print(result_logger.footer())


def _finish(runner: SearchRunner, summary: Dict) -> int:
    _emit(runner.result_logger, runner.spec.output, summary)
    return EXIT_OK


def _conditional(args, key: str) -> int:
    """外部数据集缺失: 只输出带标记的说明, 不编造结果"""
    runner = SearchRunner(_spec(args), progress=False)
    logger.warning(f"外部数据集不可用, {args.command} 只输出期望值说明")
    return _finish(runner, {'status': CONDITIONAL, 'expected': EXPECTED_FULL[key]})


def cmd_verify(args) -> int:
    report = run_suite(args.suite, seed=args.seed, progress=not args.quiet)
    runner = SearchRunner(_spec(args, suite=args.suite), progress=False)
    runner.log_records([r.to_dict() for r in report.results])
    _finish(runner, {'suite': args.suite, 'passed': report.passed,
                     'failures': [r.check for r in report.failures]})
    if not report.passed:
        logger.error(f"套件 {args.suite} 有 {len(report.failures)} 项未通过")
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_s3(args) -> int:
    desk = args.scale == 'desk'
    if not desk:
        dataset = args.dataset or SEARCH_CONFIG['data']['additive_file']
        if args.dataset is None and not validate_dataset_structure('additive'):
            return _conditional(args, 's3')
    runner = SearchRunner(_spec(args, [] if desk else [dataset], scale=args.scale), progress=not args.quiet)
    shard = runner.spec.shard

    if desk:
        codes = all_additive_self_dual(args.length or 4)
        stream = ((i, c) for i, c in enumerate(codes) if in_shard(i, shard))
        min_symbol = args.min_symbol_distance
    else:
        stream = iter_additive_records(dataset, shard)
        min_symbol = 4 if args.min_symbol_distance is None else args.min_symbol_distance

    report = s3_filter(stream, min_symbol_distance=min_symbol or None,
                       expected_length=args.length, progress=not args.quiet)
    records = [{'index': r.index, 'm': r.m, 'd_phi': r.d_phi, 'status': r.status} for r in report.records]
    runner.log_records(records)
    return _finish(runner, _s3_summary(records))


def cmd_orbits(args) -> int:
    kind = args.group.upper()
    if args.scale == 'desk':
        inputs = lemma_desk_inputs(kind)
    else:
        codes_dir = args.codes or SEARCH_CONFIG['data']['codes_dir']
        if args.codes is None and not validate_dataset_structure('codes'):
            return _conditional(args, f'orbits-{kind.lower()}')
        inputs = []
        for name, item in iter_code_dir(codes_dir, progress=not args.quiet):
            if isinstance(item, Exception):
                raise item
            inputs.append((name, item))

    runner = SearchRunner(_spec(args, [n for n, _ in inputs], group=kind, scale=args.scale),
                          num_workers=args.workers, progress=not args.quiet)
    items = [(name, Y, kind, args.seed) for name, Y in inputs]
    records = runner.run(items, _orbits_worker, desc=f'orbits {kind}')
    rep_sets = [r.pop('_reps') for r in records if '_reps' in r]
    runner.log_records(records)

    summary = _orbits_summary(kind, records)
    if args.reps_out:
        summary['reps_file'] = args.reps_out
        save_orbit_reps(args.reps_out, rep_sets)
    return _finish(runner, summary)


def cmd_extend(args) -> int:
    kind = args.group.upper()
    bound = args.bound or SEARCH_CONFIG['extend']['distance_bound']
    if args.scale == 'desk':
        cases = a4_desk_cases() if kind == 'A4' else d8_desk_cases()
        if args.case:
            cases = [c for c in cases if c.name == args.case]
            if not cases:
                raise ValueError(f"{kind} 没有名为 {args.case} 的桌面算例")
        items = [(kind, case, args.route) for case in cases]
        worker = _extend_desk_worker
        inputs: List[str] = []
    else:
        if args.reps is None:
            return _conditional(args, f'extend-{kind.lower()}')
        if not os.path.exists(args.reps):
            raise InputFormatError("轨道代表文件不存在", args.reps)
        items = []
        for rep_set in load_orbit_reps(args.reps):
            if rep_set.kind.upper() != kind:
                raise InputFormatError(f"代表的群类型 {rep_set.kind} 与 --group {kind} 不一致", args.reps)
            for j, rep in enumerate(rep_set.reps):
                items.append((f"{rep_set.source_class}:{j}", rep.code, kind, bound, args.route))
        worker = _extend_worker
        inputs = [args.reps]

    runner = SearchRunner(_spec(args, inputs, group=kind, scale=args.scale, route=args.route,
                                case=getattr(args, 'case', None)),
                          num_workers=args.workers, progress=not args.quiet)
    # 任务数少于分片数时, 每个分片运行全部任务, 在任务内部按分片拆分枚举
    inner = runner.spec.shard if 1 < runner.spec.shard_count and len(items) < runner.spec.shard_count else None
    if inner is not None:
        logger.info(f"{len(items)} 个任务少于 {runner.spec.shard_count} 个分片, 改为在任务内部分片")
    records = runner.run([item + (inner,) for item in items], worker, desc=f'extend {kind}',
                         shard=None if inner is None else (0, 1))
    records = merge_extend_records(records)
    runner.log_records(records)

    summary = _extend_summary(kind, records)
    if inner is not None:
        summary['partial'] = True
    return _finish(runner, summary)


def _merge_header(results: Sequence[Dict], paths: Sequence[str]) -> Dict:
    """检查各文件来自同一次运行的全部分片, 返回等价的单分片 header"""
    stripped = []
    indices = []
    for result, path in zip(results, paths):
        header = dict(result['header'])
        if not header:
            raise InputFormatError("缺少 header", path)
        indices.append((header.pop('shard_index'), header.pop('shard_count')))
        header.pop('shard')
        stripped.append(header)
    if any(h != stripped[0] for h in stripped[1:]):
        raise InputFormatError("各分片的 header 不一致, 不是同一次运行", paths[0])
    count = indices[0][1]
    if any(c != count for _, c in indices) or sorted(i for i, _ in indices) != list(range(count)):
        raise InputFormatError(f"分片不完整: {sorted(indices)}", paths[0])
    return {**stripped[0], 'shard_index': 0, 'shard_count': 1, 'shard': '0/1'}


def cmd_merge(args) -> int:
    """合并同一命令各分片的结果文件, 输出与单分片运行相同的文件"""
    results = [load_results(path) for path in args.files]
    header = _merge_header(results, args.files)
    command = header.pop('command')
    records = [r for result in results for r in result['records']]
    if command == 'extend':
        records = merge_extend_records(records)
        summary = _extend_summary(header['options']['group'], records)
    elif command == 'orbits':
        records.sort(key=lambda r: r['task'])
        summary = _orbits_summary(header['options']['group'], records)
    elif command == 's3':
        records.sort(key=lambda r: r['index'])
        summary = _s3_summary(records)
    else:
        raise InputFormatError(f"{command} 的结果不支持分片合并", args.files[0])
    result_logger = ResultLogger(command, header)
    for r in records:
        result_logger.log_record(r)
    _emit(result_logger, args.output, summary)
    logger.info(f"合并 {len(args.files)} 个分片, 共 {len(records)} 条记录")
    return EXIT_OK


def cmd_ingest(args) -> int:
    runner = SearchRunner(_spec(args, [args.path], additive=args.additive), progress=False)
    if args.additive:
        result = ingest_additive(args.path, args.length, progress=not args.quiet)
    else:
        result = ingest_codes(args.path, args.length, args.min_distance, progress=not args.quiet)
    runner.log_records({'name': name, 'status': 'accepted'} for name in result.accepted)
    runner.log_records({'name': name, 'status': 'rejected', 'reason': reason}
                       for name, reason in result.rejected)
    summary = {'description': result.describe(), 'accepted': len(result.accepted),
               'rejected': len(result.rejected), 'per_class': result.per_class}
    _finish(runner, summary)
    return EXIT_INPUT if result.rejected else EXIT_OK


def cmd_classify(args) -> int:
    runner = SearchRunner(_spec(args, length=args.length, additive=args.additive,
                                conjugation=not args.no_conjugation), progress=False)
    if args.additive:
        result = classify_small_additive_selfdual(args.length, with_conjugation=not args.no_conjugation)
        runner.log_records({'class': i, 'dimension': rep.dimension, 'orbit_size': size,
                            'stabilizer_order': stab}
                           for i, (rep, size, stab) in enumerate(zip(result.representatives,
                                                                     result.orbit_sizes,
                                                                     result.stabilizer_orders)))
        summary = {'length': args.length, 'equivalence': result.equivalence,
                   'classes': len(result.representatives), 'total': result.total, 'mass': result.mass()}
    else:
        result = classify_self_dual_binary(args.length, progress=not args.quiet)
        runner.log_records({'class': i, 'aut_order': c.aut_order, 'orbit_size': c.orbit_size,
                            'weights': {str(w): n for w, n in sorted(c.weights.items())}}
                           for i, c in enumerate(result.classes))
        summary = {'length': args.length, 'classes': len(result.classes),
                   'total': result.total, 'mass': result.mass()}
    return _finish(runner, summary)


def cmd_plot(args) -> int:
    from visualize_results import plot_report

    out_dir = args.out or os.path.dirname(os.path.abspath(args.report))
    written = plot_report(args.report, out_dir)
    for path in written:
        logger.info(f"- {path}")
    return EXIT_OK


# ---------------------------------------------------------------- 参数解析

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--output', default=None, help='结果文件 (.jsonl) 或目录; 缺省时输出到标准输出')
    common.add_argument('--seed', type=int, default=SEARCH_CONFIG['runner']['seed'])
    common.add_argument('--quiet', action='store_true', help='关闭进度条, 只输出警告以上的日志')
    common.add_argument('--log-level', default=None, choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])

    sharded = argparse.ArgumentParser(add_help=False)
    sharded.add_argument('--shard', default=None, help='i/N, 只运行下标 ≡ i (mod N) 的任务')
    sharded.add_argument('--scale', choices=['full', 'desk'], default='full')
    sharded.add_argument('--workers', type=int, default=None)

    parser = argparse.ArgumentParser(prog='sdsearch', description='自对偶码自同构群的排除计算')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('verify', parents=[common], help='运行校验套件')
    p.add_argument('suite', choices=SUITES)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser('s3', parents=[common, sharded], help='加性码的 d(phi(X)) 筛选')
    p.add_argument('--dataset', default=None)
    p.add_argument('--length', type=int, default=None)
    p.add_argument('--min-symbol-distance', type=int, default=None)
    p.set_defaults(func=cmd_s3)

    p = sub.add_parser('orbits', parents=[common, sharded], help='repr 引理与轨道展开')
    p.add_argument('--codes', default=None)
    p.add_argument('--group', choices=['a4', 'd8', 'A4', 'D8'], required=True)
    p.add_argument('--reps-out', default=None, help='轨道代表的输出文件 (JSON-lines)')
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser('extend', parents=[common, sharded], help='构造 E 并搜索超码')
    p.add_argument('--reps', default=None)
    p.add_argument('--group', choices=['a4', 'd8', 'A4', 'D8'], required=True)
    p.add_argument('--bound', type=int, default=None)
    p.add_argument('--route', choices=['direct', 'two-stage'], default='direct')
    p.add_argument('--case', default=None, help='只运行指定名字的桌面算例')
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser('ingest', parents=[common], help='校验外部数据集')
    p.add_argument('path')
    p.add_argument('--additive', action='store_true')
    p.add_argument('--length', type=int, default=None)
    p.add_argument('--min-distance', type=int, default=None)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser('classify', parents=[common], help='小长度自对偶码分类')
    p.add_argument('--length', type=int, required=True)
    p.add_argument('--additive', action='store_true')
    p.add_argument('--no-conjugation', action='store_true')
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser('merge', parents=[common], help='合并同一次运行各分片的结果文件')
    p.add_argument('files', nargs='+')
    p.set_defaults(func=cmd_merge)

    p = sub.add_parser('plot', parents=[common], help='为结果文件画图')
    p.add_argument('--report', required=True)
    p.add_argument('--out', default=None)
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = args.log_level or ('WARNING' if args.quiet else 'INFO')
    logging.getLogger().setLevel(level)

    try:
        return args.func(args)
    except SearchError as e:
        logger.error(f"{args.command} 失败: {str(e)}")
        return e.exit_code
    except ValueError as e:
        logger.error(f"{args.command} 参数错误: {str(e)}")
        return EXIT_INPUT


if __name__ == '__main__':
    sys.exit(main())
