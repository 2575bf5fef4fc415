import inspect
import itertools

import numpy as np
import pytest

from oeturbo.core.codec import TerminationMode, TurboCodeConfig, turbo_encode
from oeturbo.core.interleaver import PuncturePhase, gen_block, gen_random, gen_random_oddeven
from oeturbo.core.poly import BERROU, LTE
from oeturbo.core.spectrum import (
    SpectrumSearchError,
    SpectrumTerm,
    brute_force_spectrum,
    compute_spectrum,
    enumerate_simple_events,
    free_distance_spectrum,
    free_distance_stats,
    weight2_distance_pairs,
)

TABLE_21x19 = [SpectrumTerm(8, 1, 1), SpectrumTerm(11, 1, 1), SpectrumTerm(12, 382, 1523)]
TABLE_20x20 = [SpectrumTerm(8, 1, 1), SpectrumTerm(9, 1, 2), SpectrumTerm(10, 2, 4),
               SpectrumTerm(11, 3, 5), SpectrumTerm(12, 838, 3348)]


def test_lte_weight2_event_unpunctured():
    events = enumerate_simple_events(LTE, 6)
    weight2 = [e for e in events if e.input_weight == 2]
    assert weight2 and all(e.inputs == (0, 7) for e in weight2)
    assert weight2[0].parity_weight == 6 and weight2[0].span == 8


def test_berrou_weight2_event():
    events = enumerate_simple_events(BERROU, 4)
    weight2 = [e for e in events if e.input_weight == 2]
    assert min(e.inputs[1] for e in weight2) == 5
    assert any(e.inputs == (0, 5) and e.parity_weight == 4 for e in weight2)


@pytest.mark.parametrize("phase", [0, 1])
def test_punctured_events_keep_half_parity(phase):
    events = enumerate_simple_events(LTE, 3, phase=phase)
    assert any(e.inputs == (0, 7) and e.parity_weight == 3 for e in events)


def test_remerged_events_need_two_ones():
    for spec in (LTE, BERROU):
        assert all(e.input_weight >= 2 for e in enumerate_simple_events(spec, 5) if e.remerged)


def test_events_are_sorted_and_capped():
    events = enumerate_simple_events(LTE, 5, phase=0)
    assert all(e.parity_weight <= 5 for e in events)
    keys = [(e.parity_weight, e.span, e.inputs) for e in events]
    assert keys == sorted(keys)


def test_events_with_horizon():
    events = enumerate_simple_events(LTE, 10, horizon=4)
    open_events = [e for e in events if not e.remerged]
    assert open_events and all(e.span == 4 for e in open_events)


def test_events_bad_arguments():
    with pytest.raises(ValueError):
        enumerate_simple_events(LTE, 0)
    with pytest.raises(ValueError):
        enumerate_simple_events(LTE, 3, phase=2)


CASES = list(itertools.product([LTE, BERROU], list(TerminationMode), list(PuncturePhase)))


@pytest.mark.parametrize("spec, mode, phase", CASES)
def test_search_matches_brute_force(spec, mode, phase):
    cfg = TurboCodeConfig(spec, gen_random(12, 31), phase, mode)
    assert compute_spectrum(cfg, 16).terms == brute_force_spectrum(cfg, 16).terms


@pytest.mark.parametrize("seed", range(4))
def test_search_matches_brute_force_oddeven(seed):
    cfg = TurboCodeConfig(LTE, gen_random_oddeven(14, seed), PuncturePhase.P1_AT_EVEN_INDEX,
                          TerminationMode.BOTH_LTE_STYLE)
    assert compute_spectrum(cfg, 14).terms == brute_force_spectrum(cfg, 14).terms


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(50))
def test_search_matches_brute_force_random_configs(seed):
    rng = np.random.default_rng(seed)
    spec = (LTE, BERROU)[int(rng.integers(2))]
    n = int(rng.integers(6, 17))
    mode = list(TerminationMode)[int(rng.integers(4))]
    phase = list(PuncturePhase)[int(rng.integers(2))]
    cfg = TurboCodeConfig(spec, gen_random(n, seed), phase, mode)
    assert compute_spectrum(cfg, 18).terms == brute_force_spectrum(cfg, 18).terms


def test_codewords_are_real(lte_cfg):
    cfg = lte_cfg(40, seed=2)
    spectrum = compute_spectrum(cfg, 12, keep_codewords=True)
    for d, supports in spectrum.codewords.items():
        for sup in supports:
            u = np.zeros(40, dtype=np.int64)
            u[list(sup)] = 1
            assert turbo_encode(cfg, u).weight() == d


def test_search_is_monotone_in_d_max(lte_cfg):
    cfg = lte_cfg(48, seed=4)
    low = compute_spectrum(cfg, 10)
    high = compute_spectrum(cfg, 13)
    assert low.terms == [t for t in high.terms if t.weight <= 10]
    assert low.certified_up_to == 10


def test_terms_limit(lte_cfg):
    cfg = lte_cfg(48, seed=4)
    full = compute_spectrum(cfg, 13)
    assert compute_spectrum(cfg, 13, terms=2).terms == full.terms[:2]


def test_input_weight_cap_lowers_certification(lte_cfg):
    spectrum = compute_spectrum(lte_cfg(32), 12, w_max=3)
    assert spectrum.certified_up_to == 3
    assert all(t.weight <= 3 for t in spectrum.terms)


def test_candidate_cap_gives_partial(lte_cfg):
    with pytest.raises(SpectrumSearchError) as info:
        compute_spectrum(lte_cfg(64, seed=9), 14, max_candidates=5)
    assert info.value.partial.complete is False


def test_brute_force_size_limit(lte_cfg):
    with pytest.raises(ValueError):
        brute_force_spectrum(lte_cfg(21), 10)


def test_free_distance_matches_brute_force(lte_cfg):
    cfg = lte_cfg(12, seed=8)
    first = brute_force_spectrum(cfg, 40).terms[0]
    assert free_distance_stats(cfg, initial_d_max=4) == (first.weight, first.multiplicity, first.information_weight)


def test_free_distance_grows_d_max(lte_cfg):
    spectrum = free_distance_spectrum(lte_cfg(64, seed=1), initial_d_max=2)
    assert spectrum.d_free is not None and spectrum.d_free <= spectrum.certified_up_to
    assert len(spectrum.terms) == 1


def test_oddeven_weight2_pairs_keep_parity():
    cfg = TurboCodeConfig(LTE, gen_random_oddeven(128, 6), PuncturePhase.P1_AT_EVEN_INDEX,
                          TerminationMode.BOTH_LTE_STYLE)
    spectrum = free_distance_spectrum(cfg, keep_codewords=True)
    pairs = weight2_distance_pairs(cfg, spectrum)
    assert all((din - dout) % 2 == 0 for din, dout in pairs)


def test_first_term_search_matches_full_search(lte_cfg):
    cfg = lte_cfg(64, seed=3)
    full = compute_spectrum(cfg, 14)
    first = compute_spectrum(cfg, 14, terms=1, keep_codewords=True)
    assert first.terms == full.terms[:1]
    assert first.certified_up_to == first.d_free
    assert len(first.codewords[first.d_free]) == first.terms[0].multiplicity


def test_default_candidate_cap_is_generous():
    default = inspect.signature(compute_spectrum).parameters["max_candidates"].default
    assert default >= 10**9


def _block_cfg(rows, cols):
    return TurboCodeConfig(BERROU, gen_block(rows, cols), PuncturePhase.P1_AT_EVEN_INDEX,
                           TerminationMode.FIRST_SHARED_TAIL)


@pytest.mark.slow
def test_block_21x19_table():
    assert compute_spectrum(_block_cfg(21, 19), 12).terms == TABLE_21x19


@pytest.mark.slow
def test_block_20x20_table():
    """与已发表的20×20谱只差六个重量2码字（重量7、8、10、10、11、12）"""
    spectrum = compute_spectrum(_block_cfg(20, 20), 12)
    assert spectrum.terms == TABLE_20x20
    assert spectrum.complete
