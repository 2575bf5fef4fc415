"""
Turbo码距离谱搜索

对每个分量编码器分别做分支定界：度量 w + 2·C（C为该侧删余后校验重量加尾比特重量）。
任意重量 d 的码字满足 (w+2C1) + (w+2C2) = 2d，故至少一侧度量不超过 d，
两侧各自枚举度量 ≤ D 的输入支撑集即可覆盖所有重量 ≤ D 的码字。
每个支撑集在枚举时立即用交织器精确求重，不保存候选集合。
编码器2一侧只统计编码器1度量 > D 的码字，两侧结果不重复。
只求第一项时 D 随已找到的最小重量收紧。
"""
import heapq
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np
from numba import njit

from .codec import TerminationMode, TurboCodeConfig, turbo_encode
from .interleaver import PuncturePhase
from .poly import BinaryPolynomial, RscSpec

# 穷举谱的最大帧长
BRUTE_FORCE_MAX_N = 20
# 默认求重候选上限
DEFAULT_MAX_CANDIDATES = 1_000_000_000


class SpectrumSearchError(RuntimeError):
    """候选数超出上限；partial 为已枚举部分得到的不完整谱"""

    def __init__(self, message: str, partial: "DistanceSpectrum"):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class SpectrumTerm:
    weight: int
    multiplicity: int
    information_weight: int


@dataclass
class DistanceSpectrum:
    """
    按重量递增的谱项

    certified_up_to 以内的码字已被完整枚举；complete 为 False 表示搜索被截断。
    codewords 在 keep_codewords 时保存各重量码字的信息支撑集。
    """
    terms: List[SpectrumTerm]
    certified_up_to: int
    d_max: int
    w_max: int
    complete: bool = True
    codewords: Dict[int, List[Tuple[int, ...]]] = field(default_factory=dict)

    @property
    def d_free(self) -> Optional[int]:
        return self.terms[0].weight if self.terms else None

    def first(self) -> Optional[SpectrumTerm]:
        return self.terms[0] if self.terms else None

    def truncated(self, count: int) -> "DistanceSpectrum":
        kept = self.terms[:count]
        words = {d: v for d, v in self.codewords.items() if any(t.weight == d for t in kept)}
        return DistanceSpectrum(kept, self.certified_up_to, self.d_max, self.w_max, self.complete, words)


@dataclass(frozen=True)
class SimpleEvent:
    """
    单个分量网格上从零状态出发的事件

    phase: 事件起点相对删余图样的相位（None 表示不删余）
    inputs: 输入1相对起点的偏移
    remerged: True 为回到零状态；False 为走到给定视界仍未归零
    """
    phase: Optional[int]
    inputs: Tuple[int, ...]
    span: int
    parity_weight: int
    remerged: bool = True

    @property
    def input_weight(self) -> int:
        return len(self.inputs)


def _return_input_cost(spec: RscSpec) -> List[int]:
    """各状态回到零状态所需的最少输入重量"""
    tr = spec.trellis()
    ns0, ns1 = tr.next_state[:, 0], tr.next_state[:, 1]
    cost = np.full(spec.num_states, spec.memory, dtype=np.int64)
    cost[0] = 0
    while True:
        new = np.minimum(cost[ns0], 1 + cost[ns1])
        new[0] = 0
        if np.array_equal(new, cost):
            return cost.tolist()
        cost = new


def enumerate_simple_events(spec: RscSpec, cap: int, phase: Optional[int] = None,
                            horizon: Optional[int] = None, max_span: Optional[int] = None,
                            max_input_weight: Optional[int] = None) -> List[SimpleEvent]:
    """
    最优优先枚举校验重量 ≤ cap、输入重量 ≤ max_input_weight 的零到零网格路径

    phase 为 0 时偏移为偶数的校验位被发送，为 1 时奇数偏移被发送，None 表示全部发送。
    给定 horizon 时，长度达到 horizon 仍未归零的路径作为终端事件一并返回。
    max_input_weight 默认等于 cap；非零状态存在校验位恒为0的路径，只限制校验重量时搜索不收敛。
    """
    if cap < 1:
        raise ValueError(f"Parity weight cap must be >= 1, got {cap}")
    if phase not in (None, 0, 1):
        raise ValueError(f"Phase must be None, 0 or 1, got {phase}")
    w_cap = cap if max_input_weight is None else max_input_weight
    if w_cap < 1:
        raise ValueError(f"Input weight cap must be >= 1, got {w_cap}")
    tr = spec.trellis()
    nxt = tr.next_state.tolist()
    par = tr.parity.tolist()
    back = _return_input_cost(spec) if horizon is None else [0] * spec.num_states
    if max_span is None:
        max_span = (cap + w_cap + 1) * 2 * spec.num_states + spec.memory
    if horizon is not None:
        max_span = min(max_span, horizon)

    def kept(k: int) -> int:
        return 1 if phase is None or (k + phase) % 2 == 0 else 0

    events: List[SimpleEvent] = []
    heap = [(kept(0) * par[0][1], 1, (0,), nxt[0][1])]
    while heap:
        weight, span, inputs, state = heapq.heappop(heap)
        if state == 0:
            events.append(SimpleEvent(phase, inputs, span, weight, True))
            continue
        if horizon is not None and span == horizon:
            events.append(SimpleEvent(phase, inputs, span, weight, False))
            continue
        if span >= max_span:
            continue
        for u in (0, 1):
            w = weight + kept(span) * par[state][u]
            ns = nxt[state][u]
            if w <= cap and len(inputs) + u + back[ns] <= w_cap:
                heapq.heappush(heap, (w, span + 1, inputs + ((span,) if u else ()), ns))
    events.sort(key=lambda e: (e.parity_weight, e.span, e.inputs))
    return events




@njit(cache=True)
def _walk(pos, next_state, parity, keep, zr_cost, zr_state, limit):
    s = 0
    t = 0
    c = 0
    for i in range(pos.shape[0]):
        p = pos[i]
        if s != 0:
            while t < p:
                if keep[t] == 1 and parity[s, 0] == 1:
                    c += 1
                s = next_state[s, 0]
                t += 1
                if c > limit:
                    return -1, 0
        if keep[p] == 1 and parity[s, 1] == 1:
            c += 1
        s = next_state[s, 1]
        t = p + 1
        if c > limit:
            return -1, 0
    if s != 0:
        c += zr_cost[t, s]
        s = zr_state[t, s]
    if c > limit:
        return -1, 0
    return c, s


@njit(cache=True)
def _score(side, sup, w, s, metric, mapping, next_state, parity, other_keep, other_zr_cost, other_zr_state,
           end1, end2, shared, mode2, d_max, nat):
    """
    精确求一个支撑集的码字重量

    side 为 0 时 sup 是自然序位置、s 是编码器1末状态；为 1 时 sup 是交织后位置、s 是编码器2末状态。
    返回 (码字重量, 编码器1度量)，重量超过 d_max 时返回 (-1, 0)；nat 写入自然序支撑集。
    """
    own = (metric - w) // 2
    mapped = np.empty(w, dtype=np.int64)
    for i in range(w):
        mapped[i] = mapping[sup[i]]
    mapped.sort()
    if side == 0:
        c1 = own + end1[s]
        c2, s2 = _walk(mapped, next_state, parity, other_keep, other_zr_cost, other_zr_state, d_max - w - c1)
        if c2 < 0:
            return -1, 0
        if mode2 == 1:
            c2 += end2[s2]
        elif mode2 == 2:
            c2 += shared[s, s2]
        for i in range(w):
            nat[i] = sup[i]
    else:
        c1, s1 = _walk(mapped, next_state, parity, other_keep, other_zr_cost, other_zr_state, d_max - w - own)
        if c1 < 0:
            return -1, 0
        c1 += end1[s1]
        c2 = own
        if mode2 == 1:
            c2 += end2[s]
        elif mode2 == 2:
            c2 += shared[s1, s]
        for i in range(w):
            nat[i] = mapped[i]
    d = w + c1 + c2
    if d > d_max:
        return -1, 0
    return d, w + 2 * c1


@njit(cache=True)
def _search_side(side, next_state, parity, keep, lb, start_pos, start_cnt, mapping,
                 other_keep, other_zr_cost, other_zr_state, end1, end2, shared, mode2,
                 w_max, d_max, bound, shrink, limit, hist_n, hist_w, words, meta, counters):
    """
    一侧的深度优先分支定界，逐个求重并累计直方图

    bound[0] 为当前重量上限 D；counters = [已求重候选数, 截断标志, 已存码字数, 码字缓冲溢出标志]。
    超过 limit 个候选时返回 False。
    """
    n = keep.shape[0]
    first_state = next_state[0, 1]
    first_par = parity[0, 1]
    cap = (w_max + 2) * (n + 1) + n + 16
    st_t = np.empty(cap, dtype=np.int64)
    st_s = np.empty(cap, dtype=np.int64)
    st_w = np.empty(cap, dtype=np.int64)
    st_m = np.empty(cap, dtype=np.int64)
    st_p = np.empty(cap, dtype=np.int64)
    sup = np.zeros(w_max + 1, dtype=np.int64)
    nat = np.zeros(w_max + 1, dtype=np.int64)
    st_t[0] = 0
    st_s[0] = 0
    st_w[0] = 0
    st_m[0] = 0
    st_p[0] = -1
    top = 1
    while top > 0:
        top -= 1
        t = st_t[top]
        s = st_s[top]
        w = st_w[top]
        m = st_m[top]
        if st_p[top] >= 0:
            sup[w - 1] = st_p[top]
        if s == 0 or t == n:
            if w > 0:
                counters[0] += 1
                if counters[0] > limit:
                    counters[1] = 1
                    return False
                d, m1 = _score(side, sup, w, s, m, mapping, next_state, parity, other_keep, other_zr_cost,
                               other_zr_state, end1, end2, shared, mode2, bound[0], nat)
                if d > 0:
                    if m1 > d_max:
                        m1 = d_max + 1
                    hist_n[side, d, m1] += 1
                    hist_w[side, d, m1] += w
                    if words.shape[0] > 0 and d <= bound[0]:
                        k = counters[2]
                        if k < words.shape[0]:
                            meta[k, 0] = side
                            meta[k, 1] = d
                            meta[k, 2] = m1
                            meta[k, 3] = w
                            for i in range(w):
                                words[k, i] = nat[i]
                            counters[2] = k + 1
                        else:
                            counters[3] = 1
                    if shrink and d < bound[0]:
                        bound[0] = d
            if s != 0 or w >= w_max:
                continue
            budget = bound[0] - m
            if budget < 1:
                continue
            cnt = start_cnt[budget]
            lo = 0
            hi = cnt
            while lo < hi:
                mid = (lo + hi) // 2
                if start_pos[budget, mid] < t:
                    lo = mid + 1
                else:
                    hi = mid
            for j in range(cnt - 1, lo - 1, -1):
                tp = start_pos[budget, j]
                st_t[top] = tp + 1
                st_s[top] = first_state
                st_w[top] = w + 1
                st_m[top] = m + 1 + 2 * keep[tp] * first_par
                st_p[top] = tp
                top += 1
        else:
            k = keep[t]
            ns = next_state[s, 0]
            m0 = m + 2 * k * parity[s, 0]
            if m0 + lb[t + 1, ns] <= bound[0]:
                st_t[top] = t + 1
                st_s[top] = ns
                st_w[top] = w
                st_m[top] = m0
                st_p[top] = -1
                top += 1
            if w < w_max:
                ns = next_state[s, 1]
                m1 = m + 1 + 2 * k * parity[s, 1]
                if m1 + lb[t + 1, ns] <= bound[0]:
                    st_t[top] = t + 1
                    st_s[top] = ns
                    st_w[top] = w + 1
                    st_m[top] = m1
                    st_p[top] = t
                    top += 1
    return True


@dataclass
class _SideModel:
    """一侧分量编码器在整帧上的删余图样与代价表"""
    keep: np.ndarray
    end_cost: np.ndarray
    lb: np.ndarray  # 度量单位 w+2C 的剩余代价下界
    zr_cost: np.ndarray  # 从(t,s)起全零输入到帧末的删余校验重量
    zr_state: np.ndarray


def _build_side(spec: RscSpec, keep: np.ndarray, end_cost: np.ndarray) -> _SideModel:
    tr = spec.trellis()
    ns0, ns1 = tr.next_state[:, 0], tr.next_state[:, 1]
    p0, p1 = tr.parity[:, 0], tr.parity[:, 1]
    n = keep.shape[0]
    s_count = tr.num_states
    lb = np.zeros((n + 1, s_count), dtype=np.int64)
    zr_cost = np.zeros((n + 1, s_count), dtype=np.int64)
    zr_state = np.zeros((n + 1, s_count), dtype=np.int64)
    lb[n] = 2 * end_cost
    zr_state[n] = np.arange(s_count)
    for t in range(n - 1, -1, -1):
        k = int(keep[t])
        lb[t] = np.minimum(2 * k * p0 + lb[t + 1][ns0], 1 + 2 * k * p1 + lb[t + 1][ns1])
        zr_cost[t] = k * p0 + zr_cost[t + 1][ns0]
        zr_state[t] = zr_state[t + 1][ns0]
    return _SideModel(keep.astype(np.int64), end_cost.astype(np.int64), lb, zr_cost, zr_state)


def _start_lists(spec: RscSpec, side: _SideModel, d_max: int) -> Tuple[np.ndarray, np.ndarray]:
    """按剩余预算 b 列出可作为新事件起点的位置（升序）"""
    tr = spec.trellis()
    s1, z1 = int(tr.next_state[0, 1]), int(tr.parity[0, 1])
    n = side.keep.shape[0]
    cost = 1 + 2 * side.keep * z1 + side.lb[1:, s1]
    pos = np.zeros((d_max + 1, n), dtype=np.int64)
    cnt = np.zeros(d_max + 1, dtype=np.int64)
    for b in range(d_max + 1):
        idx = np.nonzero(cost <= b)[0]
        pos[b, : idx.size] = idx
        cnt[b] = idx.size
    return pos, cnt


def _spec_of(fb: int, ff: int) -> RscSpec:
    return RscSpec(BinaryPolynomial(fb), BinaryPolynomial(ff))


@lru_cache(maxsize=4)
def _search_tables(fb: int, ff: int, n: int, phase: PuncturePhase,
                   termination: TerminationMode) -> Tuple[_SideModel, _SideModel, np.ndarray]:
    spec = _spec_of(fb, ff)
    r = phase.parity1_residue
    idx = np.arange(n)
    tails = np.array([spec.tail_weight(s) for s in range(spec.num_states)], dtype=np.int64)
    zeros = np.zeros(spec.num_states, dtype=np.int64)
    side1 = _build_side(spec, (idx % 2 == r).astype(np.int64), tails if termination.first_terminated else zeros)
    side2 = _build_side(spec, (idx % 2 != r).astype(np.int64), tails if termination.second_terminated else zeros)
    shared = np.zeros((spec.num_states, spec.num_states), dtype=np.int64)
    if termination is TerminationMode.FIRST_SHARED_TAIL:
        tr = spec.trellis()
        for s1 in range(spec.num_states):
            inputs, _ = spec.tail_sequence(s1)
            for s2 in range(spec.num_states):
                s, w = s2, 0
                for u in inputs:
                    w += int(tr.parity[s, u])
                    s = int(tr.next_state[s, u])
                shared[s1, s2] = w
    return side1, side2, shared


@dataclass
class _SearchResult:
    hist_n: np.ndarray  # [侧, 重量, 编码器1度量]
    hist_w: np.ndarray
    words: np.ndarray
    meta: np.ndarray  # [侧, 重量, 编码器1度量, 输入重量]
    bound: int
    candidates: int
    truncated: bool
    overflow: bool

    def histogram(self) -> Dict[int, List[int]]:
        """编码器1一侧取度量 ≤ D 的码字，编码器2一侧取度量 > D 的码字"""
        top = self.bound
        hist: Dict[int, List[int]] = {}
        for d in range(1, top + 1):
            count = int(self.hist_n[0, d, : top + 1].sum() + self.hist_n[1, d, top + 1:].sum())
            if count:
                info = int(self.hist_w[0, d, : top + 1].sum() + self.hist_w[1, d, top + 1:].sum())
                hist[d] = [count, info]
        return hist

    def codewords(self) -> Dict[int, List[Tuple[int, ...]]]:
        top = self.bound
        out: Dict[int, List[Tuple[int, ...]]] = {}
        for k in range(self.meta.shape[0]):
            side, d, m1, w = (int(v) for v in self.meta[k])
            if w == 0 or d > top or (m1 <= top) != (side == 0):
                continue
            out.setdefault(d, []).append(tuple(int(i) for i in self.words[k, :w]))
        for d in out:
            out[d].sort()
        return out


def _run_search(cfg: TurboCodeConfig, d_max: int, w_max: int, limit: int, shrink: bool,
                rows: int) -> _SearchResult:
    spec = cfg.constituent
    side1, side2, shared = _search_tables(spec.feedback.mask, spec.feedforward.mask, cfg.n, cfg.phase,
                                          cfg.termination)
    tr = spec.trellis()
    table = cfg.interleaver.table
    inverse = cfg.interleaver.inverse().table
    mode2 = {TerminationMode.BOTH_LTE_STYLE: 1, TerminationMode.FIRST_SHARED_TAIL: 2}.get(cfg.termination, 0)
    hist_n = np.zeros((2, d_max + 1, d_max + 2), dtype=np.int64)
    hist_w = np.zeros((2, d_max + 1, d_max + 2), dtype=np.int64)
    words = np.zeros((rows, w_max), dtype=np.int64)
    meta = np.zeros((rows, 4), dtype=np.int64)
    bound = np.array([d_max], dtype=np.int64)
    counters = np.zeros(4, dtype=np.int64)
    for side, own, other, mapping in ((0, side1, side2, table), (1, side2, side1, inverse)):
        start_pos, start_cnt = _start_lists(spec, own, d_max)
        finished = _search_side(
            side, tr.next_state, tr.parity, own.keep, own.lb, start_pos, start_cnt, mapping,
            other.keep, other.zr_cost, other.zr_state, side1.end_cost, side2.end_cost, shared, mode2,
            w_max, d_max, bound, shrink, limit, hist_n, hist_w, words, meta, counters,
        )
        if not finished:
            break
    return _SearchResult(hist_n, hist_w, words[: counters[2]], meta[: counters[2]], int(bound[0]),
                         int(counters[0]), bool(counters[1]), bool(counters[3]))


def _build(hist, words, d_cert: int, d_max: int, w_max: int, terms: Optional[int], complete: bool) -> DistanceSpectrum:
    out = [SpectrumTerm(d, c, w) for d, (c, w) in sorted(hist.items()) if d <= d_cert]
    if terms is not None:
        out = out[:terms]
    kept = {t.weight for t in out}
    return DistanceSpectrum(out, d_cert, d_max, w_max, complete, {d: v for d, v in words.items() if d in kept})


def compute_spectrum(cfg: TurboCodeConfig, d_max: int, w_max: Optional[int] = None, terms: Optional[int] = None,
                     max_candidates: int = DEFAULT_MAX_CANDIDATES, keep_codewords: bool = False) -> DistanceSpectrum:
    """
    计算重量 ≤ d_max 的距离谱

    terms 为 1 时只求第一项，搜索上限随已找到的最小重量收紧，certified_up_to 取该重量。

    Args:
        cfg: 码配置
        d_max: 重量上限
        w_max: 输入重量上限，默认等于 d_max
        terms: 只保留前若干项
        max_candidates: 求重的支撑集数量上限
        keep_codewords: 是否保存码字的信息支撑集

    Raises:
        SpectrumSearchError: 候选数超出上限，异常携带不完整谱
    """
    if d_max < 1:
        raise ValueError(f"d_max must be >= 1, got {d_max}")
    w_max = d_max if w_max is None else w_max
    if w_max < 2:
        raise ValueError(f"Input weight cap must be >= 2, got {w_max}")
    w_eff = min(w_max, d_max)
    d_cert = d_max if w_max >= d_max else w_max
    shrink = terms == 1
    rows = 1024 if keep_codewords else 0
    while True:
        result = _run_search(cfg, d_max, w_eff, max_candidates, shrink, rows)
        if not result.overflow or result.truncated:
            break
        rows *= 8
    if shrink:
        d_cert = min(d_cert, result.bound)
    words = result.codewords() if keep_codewords else {}
    spectrum = _build(result.histogram(), words, d_cert, d_max, w_max, terms, complete=not result.truncated)
    if result.truncated:
        raise SpectrumSearchError(
            f"Candidate cap {max_candidates} reached at d_max={d_max}; results are partial", spectrum
        )
    return spectrum


def brute_force_spectrum(cfg: TurboCodeConfig, d_max: int) -> DistanceSpectrum:
    """穷举全部 2^N-1 个非零输入"""
    n = cfg.n
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"Brute force needs N <= {BRUTE_FORCE_MAX_N}, got {n}")
    hist: Dict[int, List[int]] = {}
    shifts = np.arange(n)
    for x in range(1, 1 << n):
        bits = (x >> shifts) & 1
        d = turbo_encode(cfg, bits).weight()
        if d <= d_max:
            entry = hist.setdefault(d, [0, 0])
            entry[0] += 1
            entry[1] += int(bits.sum())
    return _build(hist, {}, d_max, d_max, n, None, complete=True)


def free_distance_spectrum(cfg: TurboCodeConfig, initial_d_max: int = 10, step: int = 2, ceiling: int = 64,
                           max_candidates: int = DEFAULT_MAX_CANDIDATES,
                           keep_codewords: bool = False) -> DistanceSpectrum:
    """自适应增大 d_max 直到得到经认证的第一项"""
    d_max = initial_d_max
    while True:
        spectrum = compute_spectrum(cfg, d_max, terms=1, max_candidates=max_candidates,
                                    keep_codewords=keep_codewords)
        if spectrum.terms:
            return spectrum
        if d_max >= ceiling:
            raise SpectrumSearchError(f"No codeword found up to weight {d_max}", spectrum)
        d_max = min(d_max + step, ceiling)


def free_distance_stats(cfg: TurboCodeConfig, **kwargs) -> Tuple[int, int, int]:
    """返回 (d_free, N_free, w_free)"""
    term = free_distance_spectrum(cfg, **kwargs).terms[0]
    return term.weight, term.multiplicity, term.information_weight


def weight2_distance_pairs(cfg: TurboCodeConfig, spectrum: DistanceSpectrum) -> Counter:
    """自由距离码字中重量2输入的 (输入距离, 交织后距离) 计数"""
    table = cfg.interleaver.table
    tally: Counter = Counter()
    if spectrum.d_free is None:
        return tally
    for sup in spectrum.codewords.get(spectrum.d_free, []):
        if len(sup) == 2:
            i, j = sup
            tally[(j - i, abs(int(table[j]) - int(table[i])))] += 1
    return tally
