"""
BPSK调制、AWGN信道与信道LLR
"""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bounds import q_function


class ChannelError(ValueError):
    """信道参数非法"""


def noise_variance(ebno_db: float, rate: float) -> float:
    """单位符号能量下 σ² = 1 / (2·R·10^(Eb/N0/10))"""
    if not 0 < rate <= 1:
        raise ChannelError(f"Code rate must be in (0, 1], got {rate}")
    return 1.0 / (2.0 * rate * 10.0 ** (ebno_db / 10.0))


@dataclass(frozen=True)
class ChannelSpec:
    """
    信道参数

    sigma2 显式给出时覆盖由 Eb/N0 与码率推出的噪声方差。
    """
    ebno_db: float
    rate: float = 0.5
    seed: Optional[int] = None
    sigma2: Optional[float] = None

    @property
    def variance(self) -> float:
        if self.sigma2 is not None:
            return float(self.sigma2)
        return noise_variance(self.ebno_db, self.rate)


class AwgnChannel:
    """带独立随机数流的AWGN信道，每个作业持有一个实例"""

    def __init__(self, spec: ChannelSpec, rng: Optional[np.random.Generator] = None):
        self.spec = spec
        self.rng = rng if rng is not None else np.random.default_rng(spec.seed)

    def transmit(self, bits) -> np.ndarray:
        """y = (1-2b) + n，按发送顺序每个符号取一个高斯样本"""
        bits = np.asarray(bits, dtype=np.int64)
        symbols = 1.0 - 2.0 * bits
        sigma = math.sqrt(self.spec.variance)
        return symbols + self.rng.normal(0.0, sigma, size=symbols.shape)

    def llr(self, samples) -> np.ndarray:
        return llr(self.spec, samples)


def transmit(spec: ChannelSpec, bits) -> np.ndarray:
    return AwgnChannel(spec).transmit(bits)


def llr(spec: ChannelSpec, samples) -> np.ndarray:
    """
    LLR = 2y/σ²，正值倾向比特0

    Raises:
        ChannelError: 噪声方差非正
    """
    sigma2 = spec.variance
    if not sigma2 > 0:
        raise ChannelError(f"Noise variance must be positive, got {sigma2}")
    return 2.0 * np.asarray(samples, dtype=np.float64) / sigma2


def uncoded_ber(ebno_db: float) -> float:
    """未编码BPSK误比特率 Q(sqrt(2Eb/N0))"""
    return float(q_function(math.sqrt(2.0 * 10.0 ** (ebno_db / 10.0))))
