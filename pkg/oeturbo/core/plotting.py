"""
BER曲线与渐近线作图，输出SVG
"""
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .bounds import BER_FLOOR
from .report import ASYMPTOTE_COLUMNS, BER_COLUMNS, CsvFormatError, read_csv


class PlotInputError(ValueError):
    """作图输入非法"""


@dataclass
class Series:
    label: str
    kind: str  # "ber" 或 "asymptote"
    ebno_db: List[float]
    ber: List[float]


def load_series(path: Union[str, Path], label: Optional[str] = None) -> Series:
    """按表头自动识别BER结果或渐近线"""
    table = read_csv(path)
    columns = tuple(table.columns)
    if columns == BER_COLUMNS:
        kind = "ber"
    elif columns == ASYMPTOTE_COLUMNS:
        kind = "asymptote"
    else:
        raise CsvFormatError(path, len(table.meta) + 1, f"unrecognized header {','.join(columns)}")
    xs, ys = [], []
    for k, row in enumerate(table.rows):
        try:
            xs.append(float(row["ebno_db"]))
            ys.append(float(row["ber"]))
        except ValueError as e:
            raise CsvFormatError(path, len(table.meta) + 2 + k, str(e))
    return Series(label or Path(path).stem, kind, xs, ys)


def emit_plot(series: Sequence[Series], out: Union[str, Path], title: str = "",
              floor: float = BER_FLOOR) -> Path:
    """
    半对数BER图；BER结果画实线加标记，渐近线画虚线，图例按输入顺序

    Raises:
        PlotInputError: 没有任何曲线
    """
    if not series:
        raise PlotInputError("No series to plot")
    plt.rcParams["svg.hashsalt"] = "oeturbo"
    plt.rcParams["svg.fonttype"] = "none"
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    try:
        for s in series:
            ys = [max(y, floor) for y in s.ber]
            if s.kind == "ber":
                ax.semilogy(s.ebno_db, ys, marker="o", linestyle="-", label=s.label)
            else:
                ax.semilogy(s.ebno_db, ys, linestyle="--", label=s.label)
        ax.set_xlabel("Eb/N0 (dB)")
        ax.set_ylabel("BER")
        if title:
            ax.set_title(title)
        ax.grid(True, which="both", linestyle="--", linewidth=0.5)
        ax.legend()
        out = Path(out)
        out.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(out, format="svg", metadata={"Date": None})
    finally:
        plt.close(fig)
    return out
