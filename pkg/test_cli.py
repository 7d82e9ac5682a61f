import os
import logging

import pytest

from dataset import write_additive_records, write_code_file
from gf2codes import BinaryCode, hamming8
from gf4 import all_additive_self_dual
from sdsearch import CONDITIONAL, main
from search_config import EXIT_INPUT, EXIT_OK, load_results

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


def _run(args, out):
    code = main(args + ['--quiet', '--output', str(out)])
    return code, load_results(str(out))


def test_s3_desk(tmp_path):
    code, result = _run(['s3', '--scale', 'desk', '--length', '2'], tmp_path / 's3.jsonl')
    assert code == EXIT_OK
    assert result['header']['command'] == 's3'
    assert result['summary']['records'] == 15
    assert result['summary']['contradictions'] == 0
    assert all(r['status'] == 'ok' for r in result['records'])


def test_s3_shards_merge_to_single_run(tmp_path):
    dataset = str(tmp_path / 'additive.txt')
    write_additive_records(dataset, all_additive_self_dual(3))
    base = ['s3', '--dataset', dataset, '--min-symbol-distance', '0']

    _, whole = _run(base + ['--shard', '0/1'], tmp_path / 'whole.jsonl')
    merged = []
    for i in range(2):
        _, part = _run(base + ['--shard', f'{i}/2'], tmp_path / f'part{i}.jsonl')
        merged.extend(part['records'])
    merged.sort(key=lambda r: r['index'])
    assert merged == whole['records']
    assert len(merged) == 135

    paths = [str(tmp_path / f'part{i}.jsonl') for i in range(2)]
    code, combined = _run(['merge'] + paths, tmp_path / 'combined.jsonl')
    assert code == EXIT_OK
    assert combined == whole


def test_bad_shard_is_input_error(tmp_path):
    assert main(['s3', '--scale', 'desk', '--shard', '3/2', '--quiet']) == EXIT_INPUT
    assert main(['s3', '--scale', 'desk', '--shard', 'x', '--quiet']) == EXIT_INPUT


def test_ingest_exit_codes(tmp_path):
    codes = tmp_path / 'codes'
    codes.mkdir()
    code, result = _run(['ingest', str(codes)], tmp_path / 'empty.jsonl')
    assert code == EXIT_OK
    assert result['summary']['description'] == '0 codes'

    write_code_file(str(codes / 'e8.txt'), hamming8())
    code, result = _run(['ingest', str(codes)], tmp_path / 'good.jsonl')
    assert code == EXIT_OK
    assert result['summary']['accepted'] == 1

    write_code_file(str(codes / 'bad.txt'), BinaryCode(8, [0b11]))
    code, result = _run(['ingest', str(codes)], tmp_path / 'bad.jsonl')
    assert code == EXIT_INPUT
    rejected = [r for r in result['records'] if r['status'] == 'rejected']
    assert rejected == [{'name': 'bad', 'status': 'rejected', 'reason': 'not self-dual'}]


def test_classify(tmp_path):
    code, result = _run(['classify', '--length', '8'], tmp_path / 'classify.jsonl')
    assert code == EXIT_OK
    assert result['summary']['classes'] == 2
    assert result['summary']['mass'] == result['summary']['total'] == 135

    code, result = _run(['classify', '--length', '3', '--additive'], tmp_path / 'additive.jsonl')
    assert code == EXIT_OK
    assert result['summary']['classes'] == 3


def test_extend_without_reps_is_conditional(tmp_path):
    code, result = _run(['extend', '--group', 'd8'], tmp_path / 'extend.jsonl')
    assert code == EXIT_OK
    assert result['summary']['status'] == CONDITIONAL
    assert result['records'] == []


def test_extend_desk_d8(tmp_path):
    code, result = _run(['extend', '--group', 'd8', '--scale', 'desk'], tmp_path / 'extend.jsonl')
    assert code == EXIT_OK
    assert result['summary']['group'] == 'D8'
    assert result['summary']['inputs'] == 3


def _run_shards(base, count, tmp_path, name):
    """按 i/count 逐个运行并用 merge 子命令合并, 返回合并结果与各分片结果"""
    paths, parts = [], []
    for i in range(count):
        path = tmp_path / f'{name}_{i}_of_{count}.jsonl'
        code, part = _run(base + ['--shard', f'{i}/{count}'], path)
        assert code == EXIT_OK
        paths.append(str(path))
        parts.append(part)
    code, merged = _run(['merge'] + paths, tmp_path / f'{name}_merged_{count}.jsonl')
    assert code == EXIT_OK
    return merged, parts


@pytest.mark.parametrize('route', ['direct', 'two-stage'])
def test_extend_golay_plane_inner_shards_merge(tmp_path, route):
    base = ['extend', '--group', 'a4', '--scale', 'desk', '--case', 'golay-plane', '--route', route]
    _, whole = _run(base + ['--shard', '0/1'], tmp_path / 'whole.jsonl')
    merged, parts = _run_shards(base, 3, tmp_path, 'plane')
    assert merged == whole
    # 单个任务时每个分片都只做了一部分子空间
    assert all(p['summary']['partial'] for p in parts)
    overcodes = [r for r in whole['records'] if r['stage'] == 'overcode']
    assert sum(len([r for r in p['records'] if r['stage'] == 'overcode']) for p in parts) >= len(overcodes)
    final = [r for r in whole['records'] if r['stage'] == 'final']
    assert len(final) == 1
    if route == 'direct':
        assert final[0]['target_found'] and final[0]['verdict'] == 'survivor'


@pytest.mark.parametrize('group,count', [('a4', 2), ('a4', 3), ('d8', 2), ('d8', 4)])
def test_extend_desk_shards_merge(tmp_path, group, count):
    base = ['extend', '--group', group, '--scale', 'desk']
    _, whole = _run(base + ['--shard', '0/1'], tmp_path / 'whole.jsonl')
    merged, _ = _run_shards(base, count, tmp_path, group)
    assert merged == whole


@pytest.mark.parametrize('group', ['a4', 'd8'])
def test_orbits_desk_shards_merge(tmp_path, group):
    base = ['orbits', '--scale', 'desk', '--group', group]
    _, whole = _run(base + ['--shard', '0/1'], tmp_path / 'whole.jsonl')
    assert [r['task'] for r in whole['records']] == list(range(len(whole['records'])))
    for count in (2, 3):
        merged, _ = _run_shards(base, count, tmp_path, f'{group}_{count}')
        assert merged == whole


def test_merge_rejects_incomplete_shards(tmp_path):
    base = ['extend', '--group', 'd8', '--scale', 'desk']
    paths = []
    for i in (0, 2):
        path = tmp_path / f'part{i}.jsonl'
        _run(base + ['--shard', f'{i}/3'], path)
        paths.append(str(path))
    assert main(['merge'] + paths + ['--quiet']) == EXIT_INPUT

    other = tmp_path / 'other.jsonl'
    _run(['extend', '--group', 'a4', '--scale', 'desk', '--shard', '1/3'], other)
    assert main(['merge', paths[0], str(other), '--quiet']) == EXIT_INPUT


def test_extend_unknown_desk_case(tmp_path):
    assert main(['extend', '--group', 'a4', '--scale', 'desk', '--case', 'nope', '--quiet']) == EXIT_INPUT


def test_verify_core(tmp_path):
    code, result = _run(['verify', 'core'], tmp_path / 'verify.jsonl')
    assert code == EXIT_OK
    assert result['summary']['passed'] is True
    assert {r['check'] for r in result['records']} == {'gf2-basics', 'hamming-aut', 'maschke',
                                                       'permutations', 'f4-identify'}


def test_plot_report(tmp_path):
    report = tmp_path / 's3.jsonl'
    _run(['s3', '--scale', 'desk', '--length', '2'], report)
    assert main(['plot', '--report', str(report), '--out', str(tmp_path / 'plots')]) == EXIT_OK
    assert any(name.endswith('.png') for name in os.listdir(tmp_path / 'plots'))


if __name__ == "__main__":
    import pathlib
    import tempfile

    for test in (test_s3_desk, test_s3_shards_merge_to_single_run, test_bad_shard_is_input_error,
                 test_ingest_exit_codes, test_classify, test_extend_without_reps_is_conditional,
                 test_extend_desk_d8, test_merge_rejects_incomplete_shards, test_extend_unknown_desk_case,
                 test_verify_core, test_plot_report):
        with tempfile.TemporaryDirectory() as d:
            test(pathlib.Path(d))
    for route in ('direct', 'two-stage'):
        with tempfile.TemporaryDirectory() as d:
            test_extend_golay_plane_inner_shards_merge(pathlib.Path(d), route)
    for group, count in [('a4', 2), ('a4', 3), ('d8', 2), ('d8', 4)]:
        with tempfile.TemporaryDirectory() as d:
            test_extend_desk_shards_merge(pathlib.Path(d), group, count)
    for group in ('a4', 'd8'):
        with tempfile.TemporaryDirectory() as d:
            test_orbits_desk_shards_merge(pathlib.Path(d), group)
    logger.info("sdsearch 命令行测试通过")
