"""
实验调度：交织器集合统计、BER扫描与配对统计

作业在进程池中并发执行，每个作业的随机数种子由 (主种子, 作业下标) 派生，
结果按作业下标顺序汇总，输出只取决于运行参数（含工作进程数）。
"""
from collections import Counter
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from rich.console import Console
from rich.progress import BarColumn, Progress, SpinnerColumn, TextColumn, TimeRemainingColumn

from .channel import AwgnChannel, ChannelSpec
from .codec import LlrFrame, turbo_decode, turbo_encode
from .config import RunConfig
from .interleaver import HsrConstructionError, InterleaverError, PairingCensus, Permutation, weight2_pairing_census
from .poly import cycle_length
from .spectrum import SpectrumSearchError, free_distance_spectrum, weight2_distance_pairs

console = Console(stderr=True)

# 集合统计中允许的生成失败比例
MAX_FAILURE_RATE = 0.01

# 派生种子的第一级键，区分不同用途的随机数流
_STREAM_ENSEMBLE = 0
_STREAM_FRAME = 1
_STREAM_FRAME_INTERLEAVER = 2
_STREAM_FIXED_INTERLEAVER = 3
_STREAM_CENSUS = 4


class EnsembleAbortedError(RuntimeError):
    """交织器生成失败比例超过上限"""


def derive_seed(master: int, *keys: int) -> int:
    """SeedSequence(master, spawn_key=keys) 派生的64位种子"""
    seq = np.random.SeedSequence(int(master), spawn_key=tuple(int(k) for k in keys))
    return int(seq.generate_state(1, np.uint64)[0])


@dataclass
class SampleResult:
    """单个交织器样本的结果"""
    index: int
    seed: int
    success: bool
    d_free: Optional[int] = None
    n_free: Optional[int] = None
    w_free: Optional[int] = None
    error: Optional[str] = None
    census: Optional[PairingCensus] = None
    free_pairs: Counter = field(default_factory=Counter)


@dataclass
class EnsembleStats:
    family: str
    params: str
    samples: int
    mean_dfree: float
    mean_nfree: float
    mean_wfree: float
    std_dfree: float
    std_nfree: float
    std_wfree: float
    seed: int
    failures: int = 0


@dataclass
class FrameBatch:
    """一个BER作业的计数"""
    job: int
    frames: int
    bits: int
    bit_errors: int
    frame_errors: int


@dataclass
class BerPoint:
    ebno_db: float
    frames: int = 0
    bits: int = 0
    bit_errors: int = 0
    frame_errors: int = 0
    stop_reason: str = ""

    @property
    def ber(self) -> float:
        return self.bit_errors / self.bits if self.bits else 0.0

    @property
    def fer(self) -> float:
        return self.frame_errors / self.frames if self.frames else 0.0

    def add(self, batch: FrameBatch) -> None:
        self.frames += batch.frames
        self.bits += batch.bits
        self.bit_errors += batch.bit_errors
        self.frame_errors += batch.frame_errors


@dataclass
class CensusResult:
    family: str
    samples: int
    census: PairingCensus
    free_pairs: Counter = field(default_factory=Counter)
    failures: int = 0

    def rows(self) -> List[Tuple[str, int, int, int]]:
        out = [("pairing", d_in, d_out, c) for (d_in, d_out), c in sorted(self.census.counts.items())]
        out += [("free-distance", d_in, d_out, c) for (d_in, d_out), c in sorted(self.free_pairs.items())]
        return out

    def footer(self) -> List[Tuple[str, object]]:
        items: List[Tuple[str, object]] = [("samples", self.samples), ("cycle_length", self.census.cycle_length)]
        for d in sorted(self.census.pairs):
            items.append((f"preservation_d{d}", self.census.preservation_probability(d)))
        return items


def _progress(show: bool) -> Progress:
    return Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        TimeRemainingColumn(),
        console=console,
        disable=not show,
    )


def _map_jobs(fn: Callable, jobs: Sequence[tuple], workers: int,
              progress: Optional[Progress] = None, task=None) -> list:
    """执行作业并按输入顺序返回结果；workers为1时在当前进程内顺序执行"""
    results: list = [None] * len(jobs)
    if workers <= 1 or len(jobs) <= 1:
        for k, args in enumerate(jobs):
            results[k] = fn(*args)
            if progress is not None:
                progress.update(task, advance=1)
        return results
    with ProcessPoolExecutor(max_workers=workers) as executor:
        futures = {executor.submit(fn, *args): k for k, args in enumerate(jobs)}
        for future in as_completed(futures):
            results[futures[future]] = future.result()
            if progress is not None:
                progress.update(task, advance=1)
    return results


def _sample_job(run: RunConfig, index: int, stream: int, want_spectrum: bool, want_census: bool) -> SampleResult:
    seed = derive_seed(run.seed, stream, index)
    try:
        perm = run.make_interleaver(seed)
    except (HsrConstructionError, InterleaverError) as e:
        return SampleResult(index, seed, False, error=str(e))
    result = SampleResult(index, seed, True)
    if want_census:
        cl = run.cycle_length or cycle_length(run.constituent.feedback)
        result.census = weight2_pairing_census(perm, cl, run.dmax_in or cl)
    if want_spectrum:
        cfg = run.code_config(perm)
        try:
            spectrum = free_distance_spectrum(cfg, initial_d_max=run.initial_d_max,
                                              max_candidates=run.max_candidates, keep_codewords=want_census)
        except SpectrumSearchError as e:
            return SampleResult(index, seed, False, error=str(e))
        term = spectrum.terms[0]
        result.d_free, result.n_free, result.w_free = term.weight, term.multiplicity, term.information_weight
        if want_census:
            result.free_pairs = weight2_distance_pairs(cfg, spectrum)
    return result


def _collect_samples(run: RunConfig, stream: int, want_spectrum: bool, want_census: bool,
                     workers: int, show_progress: bool, label: str) -> Tuple[List[SampleResult], int]:
    """
    收集恰好 samples 个成功样本；失败的下标由后续下标补足

    Raises:
        EnsembleAbortedError: 失败比例超过1%
    """
    if run.samples < 1:
        raise ValueError(f"Sample count must be >= 1, got {run.samples}")
    ok: List[SampleResult] = []
    failures = 0
    next_index = 0
    with _progress(show_progress) as progress:
        task = progress.add_task(f"[cyan]{label}", total=run.samples)
        while len(ok) < run.samples:
            need = run.samples - len(ok)
            jobs = [(run, next_index + k, stream, want_spectrum, want_census) for k in range(need)]
            next_index += need
            for result in _map_jobs(_sample_job, jobs, workers):
                if result.success:
                    ok.append(result)
                    progress.update(task, advance=1)
                else:
                    failures += 1
                    if failures > MAX_FAILURE_RATE * run.samples:
                        raise EnsembleAbortedError(
                            f"{failures} interleaver draws failed (limit {MAX_FAILURE_RATE:.0%} of {run.samples}); "
                            f"last error: {result.error}"
                        )
    if failures:
        console.print(f"[yellow]Warning: {failures} draws failed and were replaced[/yellow]")
    return ok[: run.samples], failures


def _std(values: Sequence[int]) -> float:
    return float(np.std(values, ddof=1)) if len(values) > 1 else 0.0


def run_ensemble_stats(run: RunConfig, workers: int = 1, show_progress: bool = False) -> EnsembleStats:
    """对 samples 个交织器计算自由距离项并求平均"""
    results, failures = _collect_samples(run, _STREAM_ENSEMBLE, True, False, workers, show_progress,
                                         f"Free distance ({run.family})")
    d = [r.d_free for r in results]
    nf = [r.n_free for r in results]
    wf = [r.w_free for r in results]
    return EnsembleStats(
        family=run.family if run.interleaver_file is None else "file",
        params=run.family_params(),
        samples=len(results),
        mean_dfree=float(np.mean(d)),
        mean_nfree=float(np.mean(nf)),
        mean_wfree=float(np.mean(wf)),
        std_dfree=_std(d),
        std_nfree=_std(nf),
        std_wfree=_std(wf),
        seed=run.seed,
        failures=failures,
    )


def run_census(run: RunConfig, workers: int = 1, show_progress: bool = False,
               free_distance: bool = False) -> CensusResult:
    """集合平均的重量2配对统计；free_distance 时附带自由距离码字的距离直方图"""
    results, failures = _collect_samples(run, _STREAM_CENSUS, free_distance, True, workers, show_progress,
                                         f"Pairing census ({run.family})")
    census = results[0].census
    free_pairs: Counter = Counter(results[0].free_pairs)
    for r in results[1:]:
        census = census.merge(r.census)
        free_pairs.update(r.free_pairs)
    return CensusResult(run.family if run.interleaver_file is None else "file", len(results), census,
                        free_pairs, failures)


def _ber_job(run: RunConfig, fixed: Optional[Permutation], ebno_db: float, point: int, job: int,
             frames: int) -> FrameBatch:
    bits = bit_errors = frame_errors = 0
    for f in range(frames):
        rng = np.random.default_rng(derive_seed(run.seed, _STREAM_FRAME, point, job, f))
        perm = fixed if fixed is not None else run.make_interleaver(
            derive_seed(run.seed, _STREAM_FRAME_INTERLEAVER, point, job, f))
        cfg = run.code_config(perm)
        info = rng.integers(0, 2, cfg.n)
        channel = AwgnChannel(ChannelSpec(ebno_db, cfg.rate), rng)
        received = channel.transmit(turbo_encode(cfg, info).to_bits())
        decoded, _ = turbo_decode(cfg, LlrFrame.from_channel(cfg, channel.llr(received)),
                                  run.iterations, run.max_log)
        errors = int(np.count_nonzero(decoded != info))
        bits += cfg.n
        bit_errors += errors
        frame_errors += int(errors > 0)
    return FrameBatch(job, frames, bits, bit_errors, frame_errors)


def run_ber_sweep(run: RunConfig, workers: int = 1, show_progress: bool = False) -> List[BerPoint]:
    """
    逐个SNR点蒙特卡罗仿真

    每轮下发 workers 个作业，整轮结束后才检查停止条件，保证结果与调度无关。
    """
    grid = run.snr_grid()
    if not grid:
        raise ValueError("SNR grid is empty")
    if run.min_bit_errors < 1 or run.max_frames < 1 or run.frames_per_job < 1:
        raise ValueError("min_bit_errors, max_frames and frames_per_job must be >= 1")
    fixed = None if run.ensemble else run.make_interleaver(derive_seed(run.seed, _STREAM_FIXED_INTERLEAVER))
    points: List[BerPoint] = []
    with _progress(show_progress) as progress:
        for p_idx, ebno in enumerate(grid):
            point = BerPoint(ebno)
            task = progress.add_task(f"[cyan]Eb/N0 = {ebno:g} dB", total=run.min_bit_errors)
            job = 0
            while True:
                jobs = []
                assigned = point.frames
                for _ in range(max(workers, 1)):
                    count = min(run.frames_per_job, run.max_frames - assigned)
                    if count <= 0:
                        break
                    jobs.append((run, fixed, ebno, p_idx, job, count))
                    assigned += count
                    job += 1
                for batch in _map_jobs(_ber_job, jobs, workers):
                    point.add(batch)
                progress.update(task, completed=min(point.bit_errors, run.min_bit_errors))
                if point.bit_errors >= run.min_bit_errors:
                    point.stop_reason = "errors"
                    break
                if point.frames >= run.max_frames:
                    point.stop_reason = "frames"
                    break
            points.append(point)
    return points
