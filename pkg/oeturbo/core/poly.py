"""
GF(2)多项式运算与RSC分量码的网格状态机
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Tuple

import numpy as np

# 支持的最大寄存器级数
MAX_MEMORY = 16


class PolynomialError(ValueError):
    """多项式或分量码参数非法"""


@dataclass(frozen=True)
class BinaryPolynomial:
    """
    GF(2)上的二元多项式

    mask的第k位为D^k的系数；零多项式的mask为0，次数为-1。
    """
    mask: int

    def __post_init__(self):
        if self.mask < 0:
            raise PolynomialError(f"Negative coefficient mask: {self.mask}")
        if self.mask >= (1 << (MAX_MEMORY + 1)):
            raise PolynomialError(f"Polynomial degree exceeds supported memory {MAX_MEMORY}")

    @property
    def degree(self) -> int:
        return self.mask.bit_length() - 1

    @property
    def is_zero(self) -> bool:
        return self.mask == 0

    def coefficient(self, k: int) -> int:
        return (self.mask >> k) & 1

    @classmethod
    def from_exponents(cls, exponents: Iterable[int]) -> "BinaryPolynomial":
        mask = 0
        for k in exponents:
            mask ^= 1 << k
        return cls(mask)

    @classmethod
    def from_octal(cls, text: str) -> "BinaryPolynomial":
        """从八进制字符串解析，八进制值的第k位即D^k的系数"""
        try:
            value = int(str(text).strip(), 8)
        except ValueError:
            raise PolynomialError(f"Invalid octal polynomial: {text!r}")
        return cls(value)

    def to_octal(self) -> str:
        return format(self.mask, "o")

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for k in range(self.degree + 1):
            if self.coefficient(k):
                terms.append("1" if k == 0 else ("D" if k == 1 else f"D^{k}"))
        return "+".join(terms)


def poly_mod(a: BinaryPolynomial, p: BinaryPolynomial) -> BinaryPolynomial:
    """
    计算 a mod p（GF(2)长除法）

    Raises:
        PolynomialError: 模多项式为零
    """
    if p.is_zero:
        raise PolynomialError("Modulus polynomial is zero")
    rem = a.mask
    dp = p.degree
    while rem and rem.bit_length() - 1 >= dp:
        rem ^= p.mask << (rem.bit_length() - 1 - dp)
    return BinaryPolynomial(rem)


def poly_mul(a: BinaryPolynomial, b: BinaryPolynomial) -> int:
    """无进位乘法，返回系数掩码（结果可能超出BinaryPolynomial的次数上限）"""
    result = 0
    x, y = a.mask, b.mask
    shift = 0
    while y:
        if y & 1:
            result ^= x << shift
        y >>= 1
        shift += 1
    return result


def cycle_length(p: BinaryPolynomial) -> int:
    """
    反馈多项式的循环长度：使 p(D) 整除 1+D^k 的最小正整数k

    Raises:
        PolynomialError: 常数项为0或次数小于1
    """
    if p.degree < 1:
        raise PolynomialError(f"Cycle length needs degree >= 1, got {p}")
    if not p.coefficient(0):
        raise PolynomialError(f"Polynomial {p} has zero constant term, no finite cycle")
    # D^k mod p 逐次递推，直到回到1
    dp = p.degree
    rem = 1
    for k in range(1, (1 << dp)):
        rem <<= 1
        if rem >> dp & 1:
            rem ^= p.mask
        if rem == 1:
            return k
    raise PolynomialError(f"No cycle found for {p}")  # pragma: no cover


def is_primitive_like(p: BinaryPolynomial) -> bool:
    """循环长度达到 2^m-1 时为真"""
    return cycle_length(p) == (1 << p.degree) - 1


@dataclass(frozen=True)
class Trellis:
    """分量码网格表，按状态和输入比特索引"""
    next_state: np.ndarray  # (S, 2)
    parity: np.ndarray  # (S, 2)
    tail_input: np.ndarray  # (S,) 使寄存器输入为0的反馈比特

    @property
    def num_states(self) -> int:
        return self.next_state.shape[0]


@dataclass(frozen=True)
class RscSpec:
    """
    递归系统卷积分量码

    状态的第(k-1)位保存 a_{t-k}，k=1..m；寄存器输入 a_t = u_t + sum g0_k a_{t-k}，
    校验位 z_t = sum g1_k a_{t-k}。
    """
    feedback: BinaryPolynomial
    feedforward: BinaryPolynomial
    name: str = "custom"

    def __post_init__(self):
        m = self.feedback.degree
        if m < 1:
            raise PolynomialError("Feedback polynomial must have degree >= 1 (recursive code)")
        if m > MAX_MEMORY:
            raise PolynomialError(f"Memory {m} exceeds maximum {MAX_MEMORY}")
        if not self.feedback.coefficient(0):
            raise PolynomialError("Feedback polynomial must have constant term 1")
        if self.feedforward.degree > m:
            raise PolynomialError("Feedforward degree exceeds feedback degree")

    @property
    def memory(self) -> int:
        return self.feedback.degree

    @property
    def num_states(self) -> int:
        return 1 << self.memory

    @classmethod
    def from_octal(cls, feedback: str, feedforward: str, name: str = "custom") -> "RscSpec":
        return cls(BinaryPolynomial.from_octal(feedback), BinaryPolynomial.from_octal(feedforward), name)

    def trellis(self) -> Trellis:
        return _build_trellis(self.feedback.mask, self.feedforward.mask)

    def tail_weight(self, state: int) -> int:
        """从state出发终止网格所需尾比特（系统位+校验位）的重量"""
        return _tail_weights(self.feedback.mask, self.feedforward.mask)[state]

    def tail_sequence(self, state: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """返回 (尾输入比特, 尾校验比特)"""
        t = self.trellis()
        inputs, parities = [], []
        for _ in range(self.memory):
            u = int(t.tail_input[state])
            inputs.append(u)
            parities.append(int(t.parity[state, u]))
            state = int(t.next_state[state, u])
        return tuple(inputs), tuple(parities)


def _step(fb_mask: int, ff_mask: int, m: int, state: int, bit: int) -> Tuple[int, int]:
    fb = bin(state & (fb_mask >> 1)).count("1") & 1
    a = bit ^ fb
    z = (a & ff_mask & 1) ^ (bin(state & (ff_mask >> 1)).count("1") & 1)
    return ((state << 1) | a) & ((1 << m) - 1), z


@lru_cache(maxsize=None)
def _build_trellis(fb_mask: int, ff_mask: int) -> Trellis:
    m = fb_mask.bit_length() - 1
    s_count = 1 << m
    next_state = np.zeros((s_count, 2), dtype=np.int64)
    parity = np.zeros((s_count, 2), dtype=np.int64)
    tail_input = np.zeros(s_count, dtype=np.int64)
    for s in range(s_count):
        for u in (0, 1):
            next_state[s, u], parity[s, u] = _step(fb_mask, ff_mask, m, s, u)
        tail_input[s] = bin(s & (fb_mask >> 1)).count("1") & 1
    for arr in (next_state, parity, tail_input):
        arr.setflags(write=False)
    return Trellis(next_state, parity, tail_input)


@lru_cache(maxsize=None)
def _tail_weights(fb_mask: int, ff_mask: int) -> Tuple[int, ...]:
    t = _build_trellis(fb_mask, ff_mask)
    m = fb_mask.bit_length() - 1
    weights = []
    for s0 in range(t.num_states):
        s, w = s0, 0
        for _ in range(m):
            u = int(t.tail_input[s])
            w += u + int(t.parity[s, u])
            s = int(t.next_state[s, u])
        weights.append(w)
    return tuple(weights)


def rsc_step(spec: RscSpec, state: int, bit: int) -> Tuple[int, int]:
    """
    网格单步转移

    Returns:
        (下一状态, 校验比特)

    Raises:
        PolynomialError: 状态越界
    """
    if not 0 <= state < spec.num_states:
        raise PolynomialError(f"State {state} out of range [0, {spec.num_states})")
    return _step(spec.feedback.mask, spec.feedforward.mask, spec.memory, state, int(bit) & 1)


def parity_weight_of_input(spec: RscSpec, bits: Sequence[int], terminate: bool = False) -> int:
    """从零状态输入序列后的校验位总重量；terminate时计入尾比特的校验位"""
    t = spec.trellis()
    state, weight = 0, 0
    for b in bits:
        u = int(b) & 1
        weight += int(t.parity[state, u])
        state = int(t.next_state[state, u])
    if terminate:
        weight += sum(spec.tail_sequence(state)[1])
    return weight


def final_state(spec: RscSpec, bits: Sequence[int]) -> int:
    t = spec.trellis()
    state = 0
    for b in bits:
        state = int(t.next_state[state, int(b) & 1])
    return state


# LTE: g0 = 1+D^2+D^3, g1 = 1+D+D^3
LTE = RscSpec(BinaryPolynomial.from_exponents((0, 2, 3)), BinaryPolynomial.from_exponents((0, 1, 3)), "lte")
# Berrou: g0 = 1+D+D^2+D^3+D^4, g1 = 1+D^4
BERROU = RscSpec(BinaryPolynomial.from_exponents((0, 1, 2, 3, 4)), BinaryPolynomial.from_exponents((0, 4)), "berrou")

NAMED_CODES = {"lte": LTE, "berrou": BERROU}
