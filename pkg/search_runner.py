import logging
import multiprocessing
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from tqdm import tqdm

from search_config import SEARCH_CONFIG, ResultLogger, get_budget

logger = logging.getLogger(__name__)

COMMANDS = ('verify', 's3', 'orbits', 'extend', 'ingest', 'classify', 'plot')


def parse_shard(text: Optional[str]) -> Tuple[int, int]:
    """解析 "i/N" 形式的分片参数"""
    if text is None or text == '':
        return 0, 1
    try:
        index, count = (int(x) for x in text.split('/'))
    except ValueError:
        raise ValueError(f"分片参数应为 i/N, 实际为 {text!r}")
    if count < 1 or not 0 <= index < count:
        raise ValueError(f"分片参数越界: {text!r}, 需要 0 ≤ i < N")
    return index, count


@dataclass
class JobSpec:
    """一次命令执行的完整描述; 相同的 JobSpec 给出逐字节相同的输出"""
    command: str
    inputs: List[str] = field(default_factory=list)
    shard_index: int = 0
    shard_count: int = 1
    distance_bound: int = SEARCH_CONFIG['extend']['distance_bound']
    budget: int = field(default_factory=get_budget)
    seed: int = SEARCH_CONFIG['runner']['seed']
    output: Optional[str] = None
    options: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"未知命令: {self.command}")
        if self.shard_count < 1 or not 0 <= self.shard_index < self.shard_count:
            raise ValueError(f"分片越界: {self.shard_index}/{self.shard_count}")

    @property
    def shard(self) -> Tuple[int, int]:
        return self.shard_index, self.shard_count

    def header(self) -> Dict:
        out = asdict(self)
        out.pop('output')
        out['shard'] = f"{self.shard_index}/{self.shard_count}"
        return out


def in_shard(index: int, shard: Tuple[int, int]) -> bool:
    return index % shard[1] == shard[0]


def _run_task(args) -> Tuple[int, List[Dict]]:
    worker, index, item = args
    return index, list(worker(index, item))


def merge_shards(outputs: Sequence[Sequence[Tuple[int, List[Dict]]]]) -> List[Dict]:
    """按任务下标把各分片的输出合并成与单分片运行相同的顺序"""
    flat = sorted((idx, recs) for shard_out in outputs for idx, recs in shard_out)
    indices = [idx for idx, _ in flat]
    if len(set(indices)) != len(indices):
        raise ValueError("分片输出中存在重复的任务下标")
    return [r for _, recs in flat for r in recs]


class SearchRunner:
    """按 JobSpec 执行任务列表

    worker(index, item) 返回记录 (dict) 的可迭代对象。多进程时 worker 必须是
    模块级函数, 各分片只共享只读输入, 合并在主进程中单线程完成。
    """

    def __init__(self, spec: JobSpec, num_workers: Optional[int] = None, progress: bool = True):
        self.spec = spec
        self.num_workers = num_workers or SEARCH_CONFIG['runner']['num_workers']
        self.progress = progress
        self.result_logger = ResultLogger(spec.command, spec.header())

    def shard_items(self, items: Sequence[Any], shard: Optional[Tuple[int, int]] = None) -> List[Tuple[int, Any]]:
        shard = shard or self.spec.shard
        return [(i, item) for i, item in enumerate(items) if in_shard(i, shard)]

    def _execute(self, worker: Callable, tasks: List[Tuple[int, Any]], desc: str) -> List[Tuple[int, List[Dict]]]:
        payload = [(worker, i, item) for i, item in tasks]
        if self.num_workers > 1 and len(payload) > 1:
            processes = min(multiprocessing.cpu_count(), self.num_workers)
            with multiprocessing.Pool(processes=processes) as pool:
                it = pool.imap(_run_task, payload)
                return list(tqdm(it, total=len(payload), desc=desc, disable=not self.progress))
        return [_run_task(p) for p in tqdm(payload, desc=desc, disable=not self.progress)]

    def run(self, items: Sequence[Any], worker: Callable, desc: Optional[str] = None,
            shard: Optional[Tuple[int, int]] = None) -> List[Dict]:
        """只运行本 JobSpec 的分片; shard 给出时按它选取任务 (用于任务内部分片)"""
        desc = desc or self.spec.command
        try:
            out = self._execute(worker, self.shard_items(items, shard), desc)
        except Exception as e:
            logger.error(f"分片 {self.spec.shard_index}/{self.spec.shard_count} 运行失败: {str(e)}")
            raise
        records = merge_shards([out])
        logger.info(f"{desc}: 分片 {self.spec.shard_index}/{self.spec.shard_count} "
                    f"完成 {len(out)} 个任务, {len(records)} 条记录")
        return records

    def run_all_shards(self, items: Sequence[Any], worker: Callable, shard_count: int,
                       desc: Optional[str] = None) -> List[Dict]:
        """依次运行全部 shard_count 个分片并合并, 用于核对分片确定性"""
        desc = desc or self.spec.command
        outputs = []
        for i in range(shard_count):
            outputs.append(self._execute(worker, self.shard_items(items, (i, shard_count)),
                                         f"{desc} [{i}/{shard_count}]"))
        return merge_shards(outputs)

    def log_records(self, records: Sequence[Dict]) -> None:
        for r in records:
            self.result_logger.log_record(r)

    def save(self, summary: Optional[Dict] = None) -> Optional[str]:
        if summary:
            self.result_logger.set_summary(**summary)
        if self.spec.output is None:
            return None
        return self.result_logger.save_results(self.spec.output)
