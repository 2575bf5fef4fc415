"""
码率1/2 Turbo码与奇偶交织器实验工具
"""
from .core.codec import TerminationMode, TurboCodeConfig, turbo_decode, turbo_encode
from .core.interleaver import Permutation, PuncturePhase
from .core.poly import BERROU, LTE, RscSpec
from .core.spectrum import DistanceSpectrum, compute_spectrum, free_distance_stats

__version__ = "0.1.0"
__all__ = [
    'RscSpec',
    'LTE',
    'BERROU',
    'Permutation',
    'PuncturePhase',
    'TerminationMode',
    'TurboCodeConfig',
    'turbo_encode',
    'turbo_decode',
    'DistanceSpectrum',
    'compute_spectrum',
    'free_distance_stats',
]
