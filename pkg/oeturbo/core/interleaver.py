"""
交织器构造与度量

包含随机、随机奇偶(randomOE)、高扩展随机(HSR/HSROE)与块交织器的生成器，
以及奇偶性、扩展度、重量2配对统计和UEP覆盖度等分析工具。
"""
import math
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from rich.console import Console

console = Console(stderr=True)


class InterleaverError(ValueError):
    """交织器参数或数据非法"""


class HsrConstructionError(RuntimeError):
    """高扩展交织器在给定预算内构造失败"""


class PuncturePhase(str, Enum):
    """校验位1保留在偶数(0起)下标还是奇数下标"""
    P1_AT_EVEN_INDEX = "even"
    P1_AT_ODD_INDEX = "odd"

    @property
    def parity1_residue(self) -> int:
        return 0 if self is PuncturePhase.P1_AT_EVEN_INDEX else 1


@dataclass
class Permutation:
    """
    交织置换 table[i] = π(i)，即输入第i位在交织后序列中的位置

    构造时检查双射性与长度。
    """
    table: np.ndarray
    family: str = "custom"
    params: Dict[str, int] = field(default_factory=dict)
    seed: Optional[int] = None

    def __post_init__(self):
        self.table = np.asarray(self.table, dtype=np.int64)
        if self.table.ndim != 1:
            raise InterleaverError("Permutation table must be one-dimensional")
        n = self.table.shape[0]
        if n < 2:
            raise InterleaverError(f"Interleaver length must be >= 2, got {n}")
        if not np.array_equal(np.sort(self.table), np.arange(n)):
            raise InterleaverError("Permutation table is not a bijection on 0..N-1")
        self.table.setflags(write=False)

    def __len__(self) -> int:
        return int(self.table.shape[0])

    @property
    def size(self) -> int:
        return len(self)

    def inverse(self) -> "Permutation":
        inv = np.empty_like(self.table)
        inv[self.table] = np.arange(len(self))
        return Permutation(inv, family=f"{self.family}-inverse", params=dict(self.params), seed=self.seed)

    def interleave(self, values: np.ndarray) -> np.ndarray:
        """out[π(i)] = values[i]"""
        values = np.asarray(values)
        out = np.empty_like(values[: len(self)])
        out[self.table] = values[: len(self)]
        return out

    def deinterleave(self, values: np.ndarray) -> np.ndarray:
        """interleave 的逆：out[i] = values[π(i)]"""
        return np.asarray(values)[self.table]

    def describe(self) -> str:
        parts = [f"{k}={v}" for k, v in self.params.items()]
        return ";".join([f"N={len(self)}"] + parts)

    def dump(self, path: Union[str, Path]) -> None:
        """按交织器文件格式写出：第一行N，随后每行一个π(i)"""
        lines = [str(len(self))] + [str(int(v)) for v in self.table]
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")

    @classmethod
    def load(cls, path: Union[str, Path]) -> "Permutation":
        text = Path(path).read_text(encoding="utf-8")
        rows = [line.strip() for line in text.splitlines()]
        while rows and rows[-1] == "":
            rows.pop()
        if not rows:
            raise InterleaverError(f"{path}: empty interleaver file")
        try:
            n = int(rows[0])
            values = [int(r) for r in rows[1:]]
        except ValueError as e:
            raise InterleaverError(f"{path}: malformed interleaver file: {e}")
        if len(values) != n:
            raise InterleaverError(f"{path}: header says N={n} but {len(values)} entries follow")
        return cls(np.array(values, dtype=np.int64), family="file", params={}, seed=None)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """(p∘q)(i) = p(q(i))"""
    if len(p) != len(q):
        raise InterleaverError("Cannot compose permutations of different lengths")
    return Permutation(p.table[q.table], family="composed")


def identity(n: int) -> Permutation:
    return Permutation(np.arange(n), family="identity")


def _check_length(n: int) -> None:
    if n < 2:
        raise InterleaverError(f"Interleaver length must be >= 2, got {n}")


def gen_random(n: int, seed: int) -> Permutation:
    """均匀随机置换（Generator.permutation 即 Fisher-Yates）"""
    _check_length(n)
    rng = np.random.default_rng(seed)
    return Permutation(rng.permutation(n), family="random", params={}, seed=seed)


def gen_random_oddeven(n: int, seed: int) -> Permutation:
    """
    随机奇偶交织器

    对第i位在剩余候选池中随机抽取位置j；若i与j奇偶相同则接受，否则丢弃重抽。
    """
    _check_length(n)
    rng = np.random.default_rng(seed)
    pool = list(range(n))
    table = np.empty(n, dtype=np.int64)
    for i in range(n):
        while True:
            k = int(rng.integers(len(pool)))
            j = pool[k]
            if (j - i) % 2 == 0:
                break
        pool[k] = pool[-1]
        pool.pop()
        table[i] = j
    return Permutation(table, family="random-oe", params={}, seed=seed)


def gen_block(rows: int, cols: int) -> Permutation:
    """行写列读块交织器：写入位置 i=r*C+c 在输出位置 j=c*R+r 读出"""
    if rows < 1 or cols < 1:
        raise InterleaverError(f"Block dimensions must be >= 1, got {rows}x{cols}")
    r = np.arange(rows).repeat(cols)
    c = np.tile(np.arange(cols), rows)
    return Permutation(c * rows + r, family="block", params={"rows": rows, "cols": cols}, seed=None)


@dataclass
class HsrBudget:
    """HSR构造预算：每轮允许的修复尝试次数与最大重启轮数"""
    attempts_per_restart: int = 1000
    restarts: int = 10_000


def feasibility_ceiling(n: int) -> int:
    """扩展度参数上限 floor(sqrt(2N))"""
    return int(math.isqrt(2 * n))


def _conflicts(table: List[int], pos: int, val: int, s: int, limit: int, skip: int = -1) -> bool:
    """val放在pos时，是否与[0,limit)中已放置的位置违反 |Δπ| > S-|Δi|"""
    lo = max(0, pos - s + 1)
    hi = min(limit, pos + s)
    for j in range(lo, hi):
        if j == pos or j == skip:
            continue
        v = table[j]
        if v < 0:
            continue
        if abs(val - v) <= s - abs(pos - j):
            return True
    return False


def _hsr_fill(n: int, s: int, rng: np.random.Generator, odd_even: bool, attempts: int) -> Optional[List[int]]:
    """一轮随机顺序填充；死胡同时尝试与已放置位置交换，尝试次数用尽返回None"""
    table = [-1] * n
    owner = [-1] * n
    classes = 2 if odd_even else 1
    pools: List[List[int]] = [[v for v in range(n) if v % classes == c] for c in range(classes)]
    used = 0
    for i in range(n):
        pool = pools[i % classes]
        placed = False
        for k in rng.permutation(len(pool)):
            v = pool[int(k)]
            if not _conflicts(table, i, v, s, i):
                pool[int(k)] = pool[-1]
                pool.pop()
                table[i], owner[v] = v, i
                placed = True
                break
        if placed:
            continue
        # 修复：i取已放置位置k的像a，k改取池中的v
        candidates = [a for a in rng.permutation(n).tolist()
                      if a % classes == i % classes and owner[a] >= 0]
        for a in candidates:
            k = owner[a]
            if _conflicts(table, i, a, s, i, skip=k):
                continue
            for idx in rng.permutation(len(pool)):
                used += 1
                if used > attempts:
                    return None
                v = pool[int(idx)]
                if abs(a - v) <= s - abs(i - k) and abs(i - k) < s:
                    continue
                if _conflicts(table, k, v, s, i, skip=k):
                    continue
                pool[int(idx)] = pool[-1]
                pool.pop()
                table[k], owner[v] = v, k
                table[i], owner[a] = a, i
                placed = True
                break
            if placed:
                break
        if not placed:
            return None
    return table


def _gen_high_spread(n: int, s: int, seed: int, budget: Optional[HsrBudget], odd_even: bool) -> Permutation:
    _check_length(n)
    if s < 1:
        raise InterleaverError(f"Spread parameter must be >= 1, got {s}")
    ceiling = feasibility_ceiling(n)
    if s > ceiling:
        raise InterleaverError(f"S={s} exceeds feasibility ceiling floor(sqrt(2N))={ceiling} for N={n}")
    budget = budget or HsrBudget()
    rng = np.random.default_rng(seed)
    family = "hsr-oe" if odd_even else "hsr"
    for restart in range(budget.restarts):
        table = _hsr_fill(n, s, rng, odd_even, budget.attempts_per_restart)
        if table is not None:
            return Permutation(np.array(table, dtype=np.int64), family=family,
                               params={"S": s, "restarts": restart}, seed=seed)
    raise HsrConstructionError(
        f"{family} construction failed for N={n}, S={s} after {budget.restarts} restarts"
    )


def gen_hsr(n: int, s: int, seed: int, budget: Optional[HsrBudget] = None) -> Permutation:
    """高扩展随机交织器：结果满足 spread > S"""
    return _gen_high_spread(n, s, seed, budget, odd_even=False)


def gen_hsr_oddeven(n: int, s: int, seed: int, budget: Optional[HsrBudget] = None) -> Permutation:
    """高扩展随机奇偶交织器：候选像限制在与源位置同奇偶的类中"""
    return _gen_high_spread(n, s, seed, budget, odd_even=True)


def is_odd_even(p: Permutation) -> bool:
    return bool(np.all((p.table - np.arange(len(p))) % 2 == 0))


@dataclass
class SpreadReport:
    """扩展度 min_{i≠j} |i-j|+|π(i)-π(j)| 及达到最小值的一对位置"""
    spread: int
    witness: Tuple[int, int]


def spread(p: Permutation) -> SpreadReport:
    """按位置差k窗口扫描；k不小于当前最小值时不可能再改进"""
    t = p.table
    n = len(p)
    best, witness = n * 2, (0, 1)
    k = 1
    while k < min(best, n):
        vals = k + np.abs(t[k:] - t[:-k])
        idx = int(np.argmin(vals))
        if int(vals[idx]) < best:
            best, witness = int(vals[idx]), (idx, idx + k)
        k += 1
    return SpreadReport(best, witness)


def satisfies_spread_constraint(p: Permutation, s: int) -> bool:
    """直接检查 |i-j|<S 时 |π(i)-π(j)| > S-|i-j|"""
    t = p.table
    for k in range(1, min(s, len(p))):
        if np.any(np.abs(t[k:] - t[:-k]) <= s - k):
            return False
    return True


@dataclass
class PairingCensus:
    """
    重量2序列配对统计

    counts[(输入距离, 输出距离)] 只统计输出距离也是CL整数倍的配对；
    pairs[输入距离] 为该输入距离下的配对总数；
    preserved[输入距离] 为输出距离恰好等于输入距离的配对数。
    """
    cycle_length: int
    counts: Dict[Tuple[int, int], int]
    pairs: Dict[int, int]
    preserved: Dict[int, int]

    def preservation_probability(self, distance: Optional[int] = None) -> float:
        d = self.cycle_length if distance is None else distance
        total = self.pairs.get(d, 0)
        return self.preserved.get(d, 0) / total if total else 0.0

    def merge(self, other: "PairingCensus") -> "PairingCensus":
        counts = Counter(self.counts)
        counts.update(other.counts)
        pairs = Counter(self.pairs)
        pairs.update(other.pairs)
        preserved = Counter(self.preserved)
        preserved.update(other.preserved)
        return PairingCensus(self.cycle_length, dict(counts), dict(pairs), dict(preserved))


def weight2_pairing_census(p: Permutation, cl: int, dmax_in: int) -> PairingCensus:
    """统计输入距离为CL倍数(≤dmax_in)的所有配对在交织后的距离"""
    if cl < 1:
        raise InterleaverError(f"Cycle length must be >= 1, got {cl}")
    t = p.table
    counts: Dict[Tuple[int, int], int] = {}
    pairs: Dict[int, int] = {}
    preserved: Dict[int, int] = {}
    for d in range(cl, min(dmax_in, len(p) - 1) + 1, cl):
        out = np.abs(t[d:] - t[:-d])
        pairs[d] = int(out.size)
        preserved[d] = int(np.count_nonzero(out == d))
        hits = out[out % cl == 0]
        for od, c in zip(*np.unique(hits, return_counts=True)):
            counts[(d, int(od))] = int(c)
    return PairingCensus(cl, counts, pairs, preserved)


@dataclass
class UepCoverage:
    """每个信息位在删余后保留的校验位个数(0/1/2)及其直方图"""
    counts: np.ndarray
    histogram: Dict[int, int]

    @property
    def is_uniform(self) -> bool:
        return set(self.histogram) == {1}


def uep_coverage(p: Permutation, phase: PuncturePhase = PuncturePhase.P1_AT_EVEN_INDEX) -> UepCoverage:
    """第i位计数 = [校验1在i处保留] + [校验2在π(i)处保留]"""
    phase = PuncturePhase(phase)
    idx = np.arange(len(p))
    r = phase.parity1_residue
    counts = (idx % 2 == r).astype(np.int64) + (p.table % 2 != r).astype(np.int64)
    values, freq = np.unique(counts, return_counts=True)
    return UepCoverage(counts, {int(v): int(f) for v, f in zip(values, freq)})


FAMILIES = ("random", "random-oe", "hsr", "hsr-oe", "block")


def generate(family: str, n: Optional[int], seed: int, s: Optional[int] = None, rows: Optional[int] = None,
             cols: Optional[int] = None, budget: Optional[HsrBudget] = None) -> Permutation:
    """按族名分派到对应生成器"""
    if family == "random":
        return gen_random(n, seed)
    if family == "random-oe":
        return gen_random_oddeven(n, seed)
    if family in ("hsr", "hsr-oe"):
        if s is None:
            raise InterleaverError(f"Family {family} requires the spread parameter S")
        gen = gen_hsr if family == "hsr" else gen_hsr_oddeven
        return gen(n, s, seed, budget)
    if family == "block":
        if rows is None or cols is None:
            raise InterleaverError("Family block requires rows and cols")
        if n is not None and rows * cols != n:
            console.print(f"[yellow]Warning: N={n} ignored, block size is {rows}x{cols}={rows * cols}[/yellow]")
        return gen_block(rows, cols)
    raise InterleaverError(f"Unknown interleaver family: {family}")


def odd_even_fraction(perms: Sequence[Permutation]) -> float:
    return sum(is_odd_even(p) for p in perms) / len(perms) if perms else 0.0
