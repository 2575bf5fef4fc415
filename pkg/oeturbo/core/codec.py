"""
码率1/2并行级联Turbo编码器与迭代log-MAP译码器
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Tuple

import numpy as np

from .bcjr import logmap_kernel, rsc_encode_kernel
from .interleaver import Permutation, PuncturePhase
from .poly import RscSpec

_EMPTY = np.zeros(0, dtype=np.int64)


class CodecError(ValueError):
    """编译码输入形状或参数非法"""


class TerminationMode(str, Enum):
    """
    网格终止方式

    FIRST_SHARED_TAIL: 终止编码器1，其尾输入同时送入编码器2（编码器2不保证归零），
    编码器2的尾校验位不删余发送。
    """
    NONE = "none"
    FIRST_ONLY = "first"
    FIRST_SHARED_TAIL = "first-shared"
    BOTH_LTE_STYLE = "both"

    @property
    def first_terminated(self) -> bool:
        return self is not TerminationMode.NONE

    @property
    def second_terminated(self) -> bool:
        return self is TerminationMode.BOTH_LTE_STYLE

    def second_tail_steps(self, memory: int) -> int:
        if self in (TerminationMode.BOTH_LTE_STYLE, TerminationMode.FIRST_SHARED_TAIL):
            return memory
        return 0

    def overhead(self, memory: int) -> int:
        """尾比特开销（发送比特数）"""
        return {
            TerminationMode.NONE: 0,
            TerminationMode.FIRST_ONLY: 2 * memory,
            TerminationMode.FIRST_SHARED_TAIL: 3 * memory,
            TerminationMode.BOTH_LTE_STYLE: 4 * memory,
        }[self]


@dataclass
class TurboCodeConfig:
    """两个相同RSC分量码、交织器、交替删余相位与终止方式"""
    constituent: RscSpec
    interleaver: Permutation
    phase: PuncturePhase = PuncturePhase.P1_AT_EVEN_INDEX
    termination: TerminationMode = TerminationMode.BOTH_LTE_STYLE

    def __post_init__(self):
        self.phase = PuncturePhase(self.phase)
        self.termination = TerminationMode(self.termination)

    @property
    def n(self) -> int:
        return len(self.interleaver)

    @property
    def rate(self) -> float:
        return 0.5

    @property
    def memory(self) -> int:
        return self.constituent.memory

    def keep_first(self) -> np.ndarray:
        """第k个合并校验位是否取自编码器1（否则取编码器2在交织域第k位的校验）"""
        return np.arange(self.n) % 2 == self.phase.parity1_residue

    @property
    def transmitted_length(self) -> int:
        return 2 * self.n + self.termination.overhead(self.memory)


@dataclass
class CodewordFrame:
    """
    一帧码字

    parity为交替删余后的合并校验流；尾部各段在不需要时为空数组。
    """
    systematic: np.ndarray
    parity: np.ndarray
    tail1_sys: np.ndarray = field(default_factory=lambda: _EMPTY.copy())
    tail1_par: np.ndarray = field(default_factory=lambda: _EMPTY.copy())
    tail2_sys: np.ndarray = field(default_factory=lambda: _EMPTY.copy())
    tail2_par: np.ndarray = field(default_factory=lambda: _EMPTY.copy())

    def to_bits(self) -> np.ndarray:
        return np.concatenate([self.systematic, self.parity, self.tail1_sys,
                               self.tail1_par, self.tail2_sys, self.tail2_par]).astype(np.int64)

    def weight(self) -> int:
        return int(self.to_bits().sum())

    @property
    def tail_length(self) -> int:
        return sum(len(a) for a in (self.tail1_sys, self.tail1_par, self.tail2_sys, self.tail2_par))

    def describe_tail(self) -> str:
        return (f"tail1_sys={len(self.tail1_sys)} tail1_par={len(self.tail1_par)} "
                f"tail2_sys={len(self.tail2_sys)} tail2_par={len(self.tail2_par)}")


def turbo_encode(cfg: TurboCodeConfig, info) -> CodewordFrame:
    """
    Turbo编码

    Args:
        cfg: 码配置
        info: 长度为N的信息比特

    Raises:
        CodecError: 信息长度与交织器长度不一致
    """
    info = np.asarray(info, dtype=np.int64)
    if info.shape != (cfg.n,):
        raise CodecError(f"Information length {info.shape} does not match interleaver length {cfg.n}")
    tr = cfg.constituent.trellis()
    m = cfg.memory
    mode = cfg.termination

    p1, t1_in, t1_par, _ = rsc_encode_kernel(
        tr.next_state, tr.parity, tr.tail_input, info, 0, m if mode.first_terminated else 0, _EMPTY
    )
    forced = t1_in if mode is TerminationMode.FIRST_SHARED_TAIL else _EMPTY
    p2, t2_in, t2_par, _ = rsc_encode_kernel(
        tr.next_state, tr.parity, tr.tail_input, cfg.interleaver.interleave(info), 0,
        mode.second_tail_steps(m), forced
    )
    return CodewordFrame(
        systematic=info.copy(),
        parity=np.where(cfg.keep_first(), p1, p2),
        tail1_sys=t1_in,
        tail1_par=t1_par,
        tail2_sys=t2_in if mode.second_terminated else _EMPTY.copy(),
        tail2_par=t2_par,
    )


@dataclass
class LlrFrame:
    """解删余后的信道LLR；被删余的校验位LLR恒为0"""
    sys: np.ndarray
    par1: np.ndarray
    par2: np.ndarray
    tail1_sys: np.ndarray
    tail1_par: np.ndarray
    tail2_sys: np.ndarray
    tail2_par: np.ndarray

    @classmethod
    def from_channel(cls, cfg: TurboCodeConfig, llrs) -> "LlrFrame":
        """按 CodewordFrame.to_bits 的顺序拆分接收LLR并解删余"""
        llrs = np.asarray(llrs, dtype=np.float64)
        if llrs.shape != (cfg.transmitted_length,):
            raise CodecError(f"LLR vector length {llrs.shape} != transmitted length {cfg.transmitted_length}")
        n, m, mode = cfg.n, cfg.memory, cfg.termination
        sizes = [n, n,
                 m if mode.first_terminated else 0,
                 m if mode.first_terminated else 0,
                 m if mode.second_terminated else 0,
                 mode.second_tail_steps(m)]
        parts = np.split(llrs, np.cumsum(sizes)[:-1])
        keep = cfg.keep_first()
        return cls(
            sys=parts[0],
            par1=np.where(keep, parts[1], 0.0),
            par2=np.where(keep, 0.0, parts[1]),
            tail1_sys=parts[2],
            tail1_par=parts[3],
            tail2_sys=parts[4],
            tail2_par=parts[5],
        )

    def check(self, cfg: TurboCodeConfig) -> None:
        n, m, mode = cfg.n, cfg.memory, cfg.termination
        t1 = m if mode.first_terminated else 0
        expected = {
            "sys": n, "par1": n, "par2": n,
            "tail1_sys": t1, "tail1_par": t1,
            "tail2_sys": m if mode.second_terminated else 0,
            "tail2_par": mode.second_tail_steps(m),
        }
        for name, size in expected.items():
            if np.shape(getattr(self, name)) != (size,):
                raise CodecError(f"LLR frame field {name} has shape {np.shape(getattr(self, name))}, expected ({size},)")


def siso_logmap(spec: RscSpec, sys_llr, par_llr, apriori, terminated: bool, max_log: bool = False) -> np.ndarray:
    """单个分量码的log-MAP软入软出，返回外信息 = 后验 - 系统信道LLR - 先验"""
    sys_llr = np.asarray(sys_llr, dtype=np.float64)
    par_llr = np.asarray(par_llr, dtype=np.float64)
    apriori = np.asarray(apriori, dtype=np.float64)
    if not (sys_llr.shape == par_llr.shape == apriori.shape) or sys_llr.ndim != 1:
        raise CodecError("SISO inputs must be one-dimensional arrays of equal length")
    tr = spec.trellis()
    _, extrinsic = logmap_kernel(tr.next_state, tr.parity, sys_llr, par_llr, apriori, bool(terminated), not max_log)
    return extrinsic


def turbo_decode(cfg: TurboCodeConfig, llr: LlrFrame, iterations: int = 10,
                 max_log: bool = False) -> Tuple[np.ndarray, np.ndarray]:
    """
    迭代译码：SISO-1与SISO-2交换外信息，固定迭代次数

    Returns:
        (硬判决比特, 最终后验LLR)；后验恰为0时判为0
    """
    if iterations < 1:
        raise CodecError(f"Iterations must be >= 1, got {iterations}")
    llr.check(cfg)
    n = cfg.n
    mode = cfg.termination
    tr = cfg.constituent.trellis()
    exact = not max_log
    perm = cfg.interleaver

    sys1 = np.concatenate([llr.sys, llr.tail1_sys])
    par1 = np.concatenate([llr.par1, llr.tail1_par])
    if mode is TerminationMode.FIRST_SHARED_TAIL:
        tail2_sys = llr.tail1_sys
    else:
        tail2_sys = llr.tail2_sys
    sys2 = np.concatenate([perm.interleave(llr.sys), tail2_sys])
    par2 = np.concatenate([llr.par2, llr.tail2_par])

    apr1 = np.zeros(sys1.shape[0])
    apr2 = np.zeros(sys2.shape[0])
    ext1 = np.zeros(n)
    ext2 = np.zeros(n)
    for _ in range(iterations):
        apr1[:n] = ext2
        _, e1 = logmap_kernel(tr.next_state, tr.parity, sys1, par1, apr1, mode.first_terminated, exact)
        ext1 = e1[:n]
        apr2[:n] = perm.interleave(ext1)
        _, e2 = logmap_kernel(tr.next_state, tr.parity, sys2, par2, apr2, mode.second_terminated, exact)
        ext2 = perm.deinterleave(e2[:n])
    posterior = llr.sys + ext1 + ext2
    return (posterior < 0).astype(np.int64), posterior
