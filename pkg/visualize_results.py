import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt
import seaborn as sns
import pandas as pd
import os
import sys
import logging
from typing import Dict, List

from search_config import RESULTS_DIR, SEARCH_CONFIG, load_results

logger = logging.getLogger(__name__)

# 设置绘图样式
sns.set_theme(style='whitegrid')
plt.rcParams['axes.unicode_minus'] = False

# 判定结果的颜色
COLOR_SCHEME = {
    'ok': '#4ECDC4',
    'contradiction': '#FF6B6B',
    'extremal': '#FF6B6B',
    'survivor': '#FF6B6B',
    'excluded': '#96CEB4',
    'killed': '#96CEB4',
    'E-filtered': '#45B7D1',
    'd<bound': '#45B7D1',
    'not-doubly-even': '#FFD93D',
    'not-self-dual': '#FFD93D',
}


def _save(fig_name: str, save_dir: str) -> str:
    os.makedirs(save_dir, exist_ok=True)
    path = os.path.join(save_dir, fig_name)
    plt.tight_layout()
    plt.savefig(path, dpi=300, bbox_inches='tight')
    plt.close()
    return path


def plot_s3_histogram(report: Dict, save_dir: str) -> str:
    """d(phi(X)) 的直方图"""
    hist = report['summary'].get('histogram', {})
    df = pd.DataFrame([(int(d), n) for d, n in hist.items()], columns=['d', 'count']).sort_values('d')
    abort_at = SEARCH_CONFIG['gf4']['s3_abort']

    plt.figure(figsize=(8, 5))
    colors = [COLOR_SCHEME['contradiction'] if d >= abort_at else COLOR_SCHEME['ok'] for d in df['d']]
    bars = plt.bar(df['d'].astype(str), df['count'], color=colors)
    for bar in bars:
        height = bar.get_height()
        plt.text(bar.get_x() + bar.get_width() / 2., height, f'{int(height)}', ha='center', va='bottom')
    plt.title('Minimum distance of phi(X)', fontsize=14, pad=20)
    plt.xlabel('d(phi(X))', fontsize=12)
    plt.ylabel('Codes', fontsize=12)
    return _save('s3_histogram.png', save_dir)


def plot_w_sizes(report: Dict, save_dir: str) -> str:
    """每个 E 的 |W_j|"""
    sizes = report['summary'].get('w_sizes', {})
    data = [{'E': source, 'j': j + 1, 'size': size}
            for source, values in sizes.items() for j, size in enumerate(values)]
    df = pd.DataFrame(data, columns=['E', 'j', 'size'])

    plt.figure(figsize=(max(8, len(df) * 0.4), 5))
    sns.barplot(data=df, x='j', y='size', hue='E', palette='Set2')
    plt.title('W-set sizes per socle basis vector', fontsize=14, pad=20)
    plt.xlabel('j', fontsize=12)
    plt.ylabel('|W_j|', fontsize=12)
    plt.legend(title='E', bbox_to_anchor=(1.05, 1), loc='upper left')
    return _save('w_sizes.png', save_dir)


def plot_orbit_counts(report: Dict, save_dir: str) -> str:
    """每个类的轨道代表个数"""
    df = pd.DataFrame(report['records'])
    df = df[['class', 'lemma_reps', 'orbits']].melt(id_vars='class', var_name='stage', value_name='count')

    plt.figure(figsize=(max(8, df['class'].nunique() * 0.35), 5))
    sns.barplot(data=df, x='class', y='count', hue='stage', palette='Set2')
    plt.title(f"Orbit representatives per class ({report['summary'].get('group', '')})", fontsize=14, pad=20)
    plt.xlabel('Class', fontsize=12)
    plt.ylabel('Representatives', fontsize=12)
    plt.xticks(rotation=90)
    return _save('orbit_counts.png', save_dir)


def plot_verdicts(report: Dict, save_dir: str) -> str:
    """extend 的最终判定分布"""
    verdicts = report['summary'].get('verdicts', {})
    names = sorted(verdicts)
    plt.figure(figsize=(8, 5))
    plt.bar(names, [verdicts[v] for v in names], color=[COLOR_SCHEME.get(v, '#999999') for v in names])
    plt.title(f"Verdicts ({report['summary'].get('group', '')})", fontsize=14, pad=20)
    plt.xlabel('Verdict', fontsize=12)
    plt.ylabel('E codes', fontsize=12)
    return _save('verdicts.png', save_dir)


def plot_report(path: str, save_dir: str = os.path.join(RESULTS_DIR, 'visualization')) -> List[str]:
    """按结果文件的命令类型画出对应的图"""
    report = load_results(path)
    command = report['header'].get('command')
    summary = report['summary']
    written = []
    if summary.get('status', '').startswith('conditional'):
        logger.warning(f"{path} 没有实际数据 ({summary['status']}), 不画图")
        return written

    if command == 's3' and summary.get('histogram'):
        written.append(plot_s3_histogram(report, save_dir))
    elif command == 'orbits' and report['records']:
        written.append(plot_orbit_counts(report, save_dir))
    elif command == 'extend':
        if summary.get('verdicts'):
            written.append(plot_verdicts(report, save_dir))
        if summary.get('w_sizes'):
            written.append(plot_w_sizes(report, save_dir))
    if not written:
        logger.warning(f"{path} ({command}) 没有可画的内容")
    return written


def main():
    if len(sys.argv) < 2:
        print("用法: python visualize_results.py <结果文件> [输出目录]")
        sys.exit(1)
    save_dir = sys.argv[2] if len(sys.argv) > 2 else os.path.join(RESULTS_DIR, 'visualization')
    written = plot_report(sys.argv[1], save_dir)
    print(f"Visualization results saved to: {', '.join(written) or '(none)'}")


if __name__ == '__main__':
    main()
