import logging

import pytest

from dataset import (ingest_additive, ingest_codes, iter_additive_records, iter_code_dir, load_orbit_reps,
                     read_code_file, read_f4_code_file, read_group_file, save_orbit_reps,
                     write_additive_records, write_code_file, write_f4_code_file, write_group_file)
from equiv import lemma_repr
from gf2codes import BinaryCode, golay24, hamming8
from gf4 import all_additive_self_dual
from permgrp import Permutation
from prepare_desk_data import hexacode_image, lemma_desk_inputs
from search_config import InputFormatError

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


def test_code_file_round_trip(tmp_path):
    path = str(tmp_path / 'golay.txt')
    write_code_file(path, golay24(), comment='extended Golay')
    assert read_code_file(path) == golay24()


def test_malformed_code_file_reports_line(tmp_path):
    path = tmp_path / 'bad.txt'
    path.write_text("# comment\n4 2\n1100\n11x0\n", encoding='utf-8')
    with pytest.raises(InputFormatError) as info:
        read_code_file(str(path))
    assert info.value.line == 4

    path.write_text("4\n1100\n", encoding='utf-8')
    with pytest.raises(InputFormatError) as info:
        read_code_file(str(path))
    assert info.value.line == 1

    path.write_text("4 2\n1100\n", encoding='utf-8')
    with pytest.raises(InputFormatError):
        read_code_file(str(path))

    # 生成行线性相关
    path.write_text("4 2\n1100\n1100\n", encoding='utf-8')
    with pytest.raises(InputFormatError):
        read_code_file(str(path))


def test_f4_code_file_round_trip(tmp_path):
    path = str(tmp_path / 'hexacode.txt')
    image = hexacode_image()
    write_f4_code_file(path, image)
    assert read_f4_code_file(path) == image


def test_additive_records_round_trip(tmp_path):
    path = str(tmp_path / 'additive.txt')
    codes = all_additive_self_dual(2)
    write_additive_records(path, codes)
    back = [code for _, code in iter_additive_records(path)]
    assert back == codes


def test_additive_records_shards(tmp_path):
    path = str(tmp_path / 'additive.txt')
    codes = all_additive_self_dual(3)
    write_additive_records(path, codes)
    merged = []
    for i in range(4):
        merged.extend(iter_additive_records(path, shard=(i, 4)))
    merged.sort(key=lambda item: item[0])
    assert [idx for idx, _ in merged] == list(range(len(codes)))
    assert [code for _, code in merged] == codes


def test_malformed_additive_record_is_reported(tmp_path):
    path = tmp_path / 'additive.txt'
    path.write_text("1 2\n1\nw\n\n1 2\n1\nx\n", encoding='utf-8')
    items = list(iter_additive_records(str(path)))
    assert len(items) == 2
    assert not isinstance(items[0][1], Exception)
    assert isinstance(items[1][1], InputFormatError)
    assert items[1][1].line == 7


def test_group_file_round_trip(tmp_path):
    path = str(tmp_path / 'group.txt')
    perms = [Permutation.parse('(1,2,3)(4,5)', 6), Permutation.identity(6)]
    write_group_file(path, perms)
    assert read_group_file(path, 6) == perms


def test_orbit_reps_round_trip(tmp_path):
    path = str(tmp_path / 'reps.jsonl')
    name, Y = lemma_desk_inputs('A4')[0]
    reps = lemma_repr(Y, 'A4', source_class=name, seed=0)
    assert save_orbit_reps(path, [reps]) == len(reps)
    loaded = load_orbit_reps(path)
    assert len(loaded) == 1
    back = loaded[0]
    assert back.kind == 'A4' and back.source_class == name
    assert back.codes == reps.codes
    for rep in back.reps:
        assert rep.check_witness(Y)


def test_orbit_reps_bad_json(tmp_path):
    path = tmp_path / 'reps.jsonl'
    path.write_text('{"kind": "A4"}\n', encoding='utf-8')
    with pytest.raises(InputFormatError):
        load_orbit_reps(str(path))


def test_ingest_rejects_non_self_dual(tmp_path):
    write_code_file(str(tmp_path / 'a.txt'), hamming8())
    write_code_file(str(tmp_path / 'b.txt'), BinaryCode(8, [0b11]))
    (tmp_path / 'c.txt').write_text("8 1\n1111\n", encoding='utf-8')
    summary = ingest_codes(str(tmp_path))
    assert summary.accepted == ['a']
    assert [name for name, _ in summary.rejected] == ['b', 'c']
    assert summary.rejected[0][1] == 'not self-dual'
    assert summary.rejected[1][1].startswith('malformed')
    assert summary.per_class == {'8,4,4': 1}


def test_ingest_length_and_distance(tmp_path):
    write_code_file(str(tmp_path / 'e8.txt'), hamming8())
    assert ingest_codes(str(tmp_path), length=24).rejected[0][1] == 'length 8 != 24'
    assert ingest_codes(str(tmp_path), min_distance=8).rejected[0][1] == 'minimum distance 4 < 8'


def test_ingest_empty_directory(tmp_path):
    summary = ingest_codes(str(tmp_path))
    assert summary.total == 0
    assert summary.describe() == '0 codes'
    assert list(iter_code_dir(str(tmp_path))) == []


def test_ingest_additive(tmp_path):
    path = str(tmp_path / 'additive.txt')
    write_additive_records(path, all_additive_self_dual(2))
    summary = ingest_additive(path)
    assert len(summary.accepted) == 15 and not summary.rejected
    assert ingest_additive(path, length=3).rejected[0][1] == 'length 2 != 3'


def test_missing_path():
    with pytest.raises(InputFormatError):
        ingest_codes('/nonexistent/sdsearch/codes')


if __name__ == "__main__":
    import pathlib
    import tempfile

    for test in (test_code_file_round_trip, test_malformed_code_file_reports_line, test_f4_code_file_round_trip,
                 test_additive_records_round_trip, test_additive_records_shards,
                 test_malformed_additive_record_is_reported, test_group_file_round_trip,
                 test_orbit_reps_round_trip, test_orbit_reps_bad_json, test_ingest_rejects_non_self_dual,
                 test_ingest_length_and_distance, test_ingest_empty_directory, test_ingest_additive):
        with tempfile.TemporaryDirectory() as d:
            test(pathlib.Path(d))
    test_missing_path()
    logger.info("dataset 测试通过")
