"""
联合界ML渐近线

BER ≈ Σ_d (w_d/N)·Q(sqrt(d·R·2Eb/N0))
"""
import math
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np
from scipy.special import erfc

# 作图时BER下限
BER_FLOOR = 1e-12


@dataclass(frozen=True)
class AsymptotePoint:
    ebno_db: float
    ber: float


def q_function(x: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """高斯尾概率 Q(x) = erfc(x/√2)/2"""
    result = 0.5 * erfc(np.asarray(x, dtype=np.float64) / math.sqrt(2.0))
    if np.ndim(result) == 0:
        return float(result)
    return result


def ebno_grid(start: float = 0.0, stop: float = 6.0, step: float = 0.25) -> np.ndarray:
    """含端点的等间隔Eb/N0网格(dB)"""
    if step <= 0:
        raise ValueError(f"Grid step must be positive, got {step}")
    if stop < start:
        raise ValueError(f"Grid stop {stop} is below start {start}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return np.round(start + step * np.arange(count), 10)


def _check(n: int, rate: float) -> None:
    if n < 1:
        raise ValueError(f"Interleaver length must be >= 1, got {n}")
    if not 0 < rate <= 1:
        raise ValueError(f"Code rate must be in (0, 1], got {rate}")


def _term(w: float, d: float, n: int, rate: float, grid: np.ndarray) -> np.ndarray:
    if d < 0:
        raise ValueError(f"Distance must be >= 0, got {d}")
    ebno = 10.0 ** (np.asarray(grid, dtype=np.float64) / 10.0)
    return (w / n) * q_function(np.sqrt(d * rate * 2.0 * ebno))


def asymptote_single(w_free: float, d_free: float, n: int, rate: float,
                     grid: Sequence[float]) -> List[AsymptotePoint]:
    """单项渐近线"""
    return asymptote_multi([(d_free, w_free)], n, rate, grid)


def asymptote_multi(terms: Iterable, n: int, rate: float, grid: Sequence[float]) -> List[AsymptotePoint]:
    """
    多项渐近线

    Args:
        terms: DistanceSpectrum、SpectrumTerm序列或 (d, w_d) 二元组序列
    """
    _check(n, rate)
    pairs = _as_pairs(terms)
    if not pairs:
        raise ValueError("Spectrum is empty")
    grid = np.asarray(grid, dtype=np.float64)
    total = np.zeros(grid.shape)
    for d, w in pairs:
        total = total + _term(w, d, n, rate, grid)
    return [AsymptotePoint(float(e), float(b)) for e, b in zip(grid, total)]


def _as_pairs(terms) -> List[Tuple[float, float]]:
    terms = getattr(terms, "terms", terms)
    pairs = []
    for t in terms:
        if hasattr(t, "weight"):
            pairs.append((float(t.weight), float(t.information_weight)))
        else:
            d, w = t
            pairs.append((float(d), float(w)))
    return pairs
