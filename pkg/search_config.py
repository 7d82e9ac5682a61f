import os
import json
import logging
from pathlib import Path
from datetime import datetime
from typing import Dict, List, Optional

# 配置日志
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)

logger = logging.getLogger(__name__)

# 获取当前文件所在目录
CURRENT_DIR = os.path.dirname(os.path.abspath(__file__))
WORKSPACE_ROOT = CURRENT_DIR

# 外部数据集根目录
DATA_ROOT = os.environ.get('SDSEARCH_DATA', os.path.join(WORKSPACE_ROOT, 'data'))
# 41 个极值 [36,18,8] 码 (每个文件一个码)
SD36_DIR = os.path.join(DATA_ROOT, 'sd36')
# 195,520 个加性迹-Hermitian 自对偶码
ADDITIVE_FILE = os.path.join(DATA_ROOT, 'additive12.txt')
RESULTS_DIR = os.path.join(WORKSPACE_ROOT, 'results')

# 退出码
EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

DEFAULT_BUDGET = 1 << 28


def _env_int(name: str, default: int) -> int:
    value = os.environ.get(name)
    if value is None or value.strip() == '':
        return default
    try:
        return int(value)
    except ValueError:
        logger.warning(f"环境变量 {name}={value!r} 不是整数, 使用默认值 {default}")
        return default


# 搜索配置
SEARCH_CONFIG = {
    'data': {
        'root_dir': DATA_ROOT,
        'codes_dir': SD36_DIR,
        'additive_file': ADDITIVE_FILE,
        'results_dir': RESULTS_DIR,
        'expected_codes': 41,
        'expected_additive': 195520,
    },
    'gf2': {
        'enumeration_limit': 28,
        'chunk_bits': 14,
        'full_enum_bits': 20,
    },
    'gf4': {
        's3_abort': 8,
        'classify_max_length': 5,
        'stabilizer_check_length': 4,
    },
    'equiv': {
        'enum_order_limit': 10 ** 6,
        'random_patience': 200,
        'classify_max_length': 12,
        'max_shells': 4,
    },
    'extend': {
        'distance_bound': 16,
        'max_vsigma_dim': 24,
    },
    'runner': {
        'shard_count': 1,
        'num_workers': 1,
        'seed': _env_int('SDSEARCH_SEED', 72),
    },
    'desk': {
        'a4_degree': 24,
        'd8_degree': 16,
        'a4_lemma_degree': 12,
        'd8_lemma_degree': 16,
    },
    'budget': _env_int('SDSEARCH_BUDGET', DEFAULT_BUDGET),
}


class SearchError(Exception):
    """所有搜索错误的基类"""
    exit_code = EXIT_INVARIANT


class InvariantViolation(SearchError):
    """不变量被破坏 (退出码 1)"""
    exit_code = EXIT_INVARIANT


class InputFormatError(SearchError):
    """输入文件格式错误 (退出码 2)"""
    exit_code = EXIT_INPUT

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        self.path = path
        self.line = line
        location = ''
        if path is not None:
            location = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(f"{location}{message}")


class BudgetExceededError(SearchError):
    """枚举规模超出预算 (退出码 3)"""
    exit_code = EXIT_BUDGET

    def __init__(self, message: str, statistic: Optional[Dict] = None):
        self.statistic = statistic or {}
        super().__init__(message)


def get_budget() -> int:
    """当前枚举预算, 每次读取环境变量以便测试中覆盖"""
    return _env_int('SDSEARCH_BUDGET', SEARCH_CONFIG['budget'])


def check_budget(size: int, what: str) -> None:
    budget = get_budget()
    if size > budget:
        raise BudgetExceededError(f"{what} 规模 {size} 超出预算 {budget}",
                                  {'what': what, 'size': size, 'budget': budget})


def validate_dataset_structure(kind: str = 'codes') -> bool:
    """验证外部数据集结构和文件是否存在

    Args:
        kind: 'codes' (41 个长度 36 的码) 或 'additive' (加性码数据集)

    Returns:
        数据集可用时返回 True
    """
    if not os.path.exists(DATA_ROOT):
        logger.error(f"找不到数据集根目录: {DATA_ROOT}")
        return False

    if kind == 'codes':
        if not os.path.isdir(SD36_DIR):
            logger.error(f"找不到码目录: {SD36_DIR}")
            return False
        files = sorted(p for p in os.listdir(SD36_DIR) if not p.startswith('.'))
        if not files:
            logger.error(f"码目录为空: {SD36_DIR}")
            return False
        logger.info(f"码目录 {SD36_DIR} 中有 {len(files)} 个文件")
        return True

    if kind == 'additive':
        if not os.path.exists(ADDITIVE_FILE):
            logger.error(f"找不到必要的文件: {ADDITIVE_FILE}")
            return False
        file_size = os.path.getsize(ADDITIVE_FILE)
        if file_size == 0:
            logger.error(f"文件为空: {ADDITIVE_FILE}")
            return False
        logger.info(f"文件 {Path(ADDITIVE_FILE).name} 存在，大小: {file_size/1024:.2f}KB")
        return True

    raise ValueError(f"未知的数据集类型: {kind}")


# 结果记录器
class ResultLogger:
    """按记录写出 JSON-lines, 末尾附带人类可读的汇总"""

    def __init__(self, command: str, header: Optional[Dict] = None):
        self.command = command
        self.header = dict(header or {})
        self.records: List[Dict] = []
        self.summary: Dict = {}

    def log_record(self, record: Dict) -> None:
        self.records.append(dict(record))

    def set_summary(self, **fields) -> None:
        self.summary.update(fields)

    def to_lines(self) -> List[str]:
        lines = [json.dumps({'header': {'command': self.command, **self.header}}, sort_keys=True)]
        lines.extend(json.dumps(r, sort_keys=True) for r in self.records)
        lines.append(json.dumps({'summary': self.summary}, sort_keys=True))
        return lines

    def footer(self) -> str:
        parts = [f"# {self.command}: {len(self.records)} 条记录"]
        for key in sorted(self.summary):
            parts.append(f"#   {key}: {self.summary[key]}")
        return '\n'.join(parts)

    def save_results(self, save_path: str) -> str:
        """保存结果, save_path 为目录时自动命名"""
        if save_path.endswith('.jsonl') or save_path.endswith('.json'):
            result_file = save_path
            parent = os.path.dirname(result_file)
            if parent:
                os.makedirs(parent, exist_ok=True)
        else:
            os.makedirs(save_path, exist_ok=True)
            stamp = datetime.now().strftime('%Y%m%d_%H%M%S')
            result_file = os.path.join(save_path, f'{self.command}_{stamp}.jsonl')

        with open(result_file, 'w') as f:
            for line in self.to_lines():
                f.write(line + '\n')
            f.write(self.footer() + '\n')
        logger.info(f"结果已保存到: {result_file}")
        return result_file


def load_results(path: str) -> Dict:
    """读取 ResultLogger 写出的文件"""
    header, summary, records = {}, {}, []
    with open(path, 'r') as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith('#'):
                continue
            obj = json.loads(line)
            if 'header' in obj and len(obj) == 1:
                header = obj['header']
            elif 'summary' in obj and len(obj) == 1:
                summary = obj['summary']
            else:
                records.append(obj)
    return {'header': header, 'records': records, 'summary': summary}
