"""
Figures for bench reports.  matplotlib is imported lazily with the Agg
backend so the library and CLI work on headless machines.
"""
from __future__ import annotations

from pathlib import Path

from .bench import VARIANTS, BenchReport


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def _names(report: BenchReport) -> list[str]:
    seen = []
    for r in report.rows:
        if r.ok and r.name not in seen:
            seen.append(r.name)
    return seen


def plot_ratios(report: BenchReport, path: str | Path) -> Path | None:
    """Side-by-side CR bars, pipeline vs bare backend, one pair per input."""
    names = [n for n in _names(report) if report.find(n) is not None and report.find(n).ok]
    if not names:
        return None
    plt = _pyplot()
    import numpy as np

    x = np.arange(len(names))
    full = [report.find(n).pipeline_cr for n in names]
    base = [report.find(n).backend_cr for n in names]
    fig, ax = plt.subplots(figsize=(max(6, 0.7 * len(names) + 2), 4.5))
    ax.bar(x - 0.2, full, 0.4, label="numeric parsing + backend", color="#2a6f97")
    ax.bar(x + 0.2, base, 0.4, label="backend only", color="#c0c0c0")
    ax.set_xticks(x)
    ax.set_xticklabels(names, rotation=45, ha="right")
    ax.set_ylabel("compression ratio")
    ax.grid(axis="y", linestyle="--", alpha=0.4)
    ax.set_axisbelow(True)
    ax.legend(frameon=False)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_ablation(report: BenchReport, path: str | Path) -> Path | None:
    """Grouped CR bars for every pipeline variant plus the bare backend."""
    names = [n for n in _names(report)
             if all(report.find(n, v) is not None and report.find(n, v).ok for v in VARIANTS)]
    if not names:
        return None
    plt = _pyplot()
    import numpy as np

    series = [(v, [report.find(n, v).pipeline_cr for n in names]) for v in VARIANTS]
    series.append(("backend only", [report.find(n).backend_cr for n in names]))
    x = np.arange(len(names))
    width = 0.8 / len(series)
    fig, ax = plt.subplots(figsize=(max(6, 1.1 * len(names) + 2), 4.5))
    colors = plt.cm.viridis(np.linspace(0.15, 0.85, len(series)))
    for i, ((label, vals), color) in enumerate(zip(series, colors)):
        ax.bar(x + (i - (len(series) - 1) / 2) * width, vals, width, label=label, color=color)
    ax.set_xticks(x)
    ax.set_xticklabels(names, rotation=30, ha="right")
    ax.set_ylabel("compression ratio")
    ax.grid(axis="y", linestyle="--", alpha=0.4)
    ax.set_axisbelow(True)
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_all(report: BenchReport, out_dir: str | Path) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = [plot_ratios(report, out / "cr.png"), plot_ablation(report, out / "ablation.png")]
    return [p for p in written if p is not None]
