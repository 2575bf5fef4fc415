"""
Turbo码编译码、交织器、距离谱与实验调度的核心模块
"""
from .poly import BinaryPolynomial, RscSpec, cycle_length, is_primitive_like, poly_mod, rsc_step, parity_weight_of_input
from .interleaver import (
    Permutation,
    PuncturePhase,
    gen_random,
    gen_random_oddeven,
    gen_hsr,
    gen_hsr_oddeven,
    gen_block,
    is_odd_even,
    spread,
    weight2_pairing_census,
    uep_coverage,
)
from .codec import TurboCodeConfig, TerminationMode, CodewordFrame, LlrFrame, turbo_encode, turbo_decode, siso_logmap
from .channel import ChannelSpec, AwgnChannel, transmit, llr
from .spectrum import (
    SpectrumTerm,
    DistanceSpectrum,
    SimpleEvent,
    enumerate_simple_events,
    compute_spectrum,
    brute_force_spectrum,
    free_distance_stats,
)
from .bounds import q_function, asymptote_single, asymptote_multi

__all__ = [
    # 多项式与网格
    'BinaryPolynomial',
    'RscSpec',
    'cycle_length',
    'is_primitive_like',
    'poly_mod',
    'rsc_step',
    'parity_weight_of_input',

    # 交织器
    'Permutation',
    'PuncturePhase',
    'gen_random',
    'gen_random_oddeven',
    'gen_hsr',
    'gen_hsr_oddeven',
    'gen_block',
    'is_odd_even',
    'spread',
    'weight2_pairing_census',
    'uep_coverage',

    # 编译码与信道
    'TurboCodeConfig',
    'TerminationMode',
    'CodewordFrame',
    'LlrFrame',
    'turbo_encode',
    'turbo_decode',
    'siso_logmap',
    'ChannelSpec',
    'AwgnChannel',
    'transmit',
    'llr',

    # 距离谱与界
    'SpectrumTerm',
    'DistanceSpectrum',
    'SimpleEvent',
    'enumerate_simple_events',
    'compute_spectrum',
    'brute_force_spectrum',
    'free_distance_stats',
    'q_function',
    'asymptote_single',
    'asymptote_multi',
]
