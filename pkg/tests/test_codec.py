import itertools

import numpy as np
import pytest
from scipy.special import logsumexp

from oeturbo.core.codec import (
    CodecError,
    LlrFrame,
    TerminationMode,
    TurboCodeConfig,
    siso_logmap,
    turbo_decode,
    turbo_encode,
)
from oeturbo.core.interleaver import PuncturePhase, gen_random
from oeturbo.core.poly import BERROU, LTE, final_state

MODES = list(TerminationMode)


@pytest.mark.parametrize("mode", MODES)
def test_zero_input_gives_zero_codeword(lte_cfg, mode):
    cfg = lte_cfg(32, termination=mode)
    frame = turbo_encode(cfg, np.zeros(32, dtype=np.int64))
    assert frame.weight() == 0
    assert frame.to_bits().shape == (cfg.transmitted_length,)


@pytest.mark.parametrize("mode, overhead", [
    (TerminationMode.NONE, 0),
    (TerminationMode.FIRST_ONLY, 6),
    (TerminationMode.FIRST_SHARED_TAIL, 9),
    (TerminationMode.BOTH_LTE_STYLE, 12),
])
def test_rate_accounting(lte_cfg, rng, mode, overhead):
    cfg = lte_cfg(40, termination=mode)
    frame = turbo_encode(cfg, rng.integers(0, 2, 40))
    assert frame.tail_length == overhead
    assert len(frame.to_bits()) == 80 + overhead
    assert cfg.rate == 0.5


@pytest.mark.parametrize("mode", MODES)
def test_encoder_is_linear(lte_cfg, rng, mode):
    cfg = lte_cfg(24, seed=5, termination=mode)
    for _ in range(10):
        u, v = rng.integers(0, 2, 24), rng.integers(0, 2, 24)
        lhs = turbo_encode(cfg, u ^ v).to_bits()
        rhs = turbo_encode(cfg, u).to_bits() ^ turbo_encode(cfg, v).to_bits()
        assert np.array_equal(lhs, rhs)


def test_systematic_part_and_weight_bound(lte_cfg, rng):
    cfg = lte_cfg(32)
    u = rng.integers(0, 2, 32)
    frame = turbo_encode(cfg, u)
    assert np.array_equal(frame.systematic, u)
    assert frame.weight() >= u.sum()


def test_single_one_weight_grows_with_length(identity_cfg):
    weights = []
    for n in (64, 128):
        u = np.zeros(n, dtype=np.int64)
        u[0] = 1
        weights.append(turbo_encode(identity_cfg(n), u).weight())
    assert weights[1] > weights[0]


def test_weight2_cycle_pair(identity_cfg):
    u = np.zeros(64, dtype=np.int64)
    u[[10, 17]] = 1
    frame = turbo_encode(identity_cfg(64), u)
    assert frame.tail_length == 12
    assert frame.weight() == 8


def test_tails_return_encoders_to_zero(lte_cfg, rng):
    cfg = lte_cfg(30, termination=TerminationMode.BOTH_LTE_STYLE)
    u = rng.integers(0, 2, 30)
    frame = turbo_encode(cfg, u)
    assert final_state(LTE, np.concatenate([u, frame.tail1_sys])) == 0
    assert final_state(LTE, np.concatenate([cfg.interleaver.interleave(u), frame.tail2_sys])) == 0


def test_shared_tail_layout(lte_cfg, rng):
    cfg = lte_cfg(30, termination=TerminationMode.FIRST_SHARED_TAIL)
    u = rng.integers(0, 2, 30)
    frame = turbo_encode(cfg, u)
    assert len(frame.tail2_sys) == 0 and len(frame.tail2_par) == 3
    assert final_state(LTE, np.concatenate([u, frame.tail1_sys])) == 0


def test_encode_length_mismatch(lte_cfg):
    with pytest.raises(CodecError):
        turbo_encode(lte_cfg(16), np.zeros(15, dtype=np.int64))


def test_llr_frame_depuncture(lte_cfg):
    cfg = lte_cfg(8, termination=TerminationMode.FIRST_ONLY)
    llrs = np.arange(1, cfg.transmitted_length + 1, dtype=float)
    frame = LlrFrame.from_channel(cfg, llrs)
    assert frame.par1.tolist() == [9, 0, 11, 0, 13, 0, 15, 0]
    assert frame.par2.tolist() == [0, 10, 0, 12, 0, 14, 0, 16]
    assert frame.tail1_sys.tolist() == [17, 18, 19]
    assert len(frame.tail2_par) == 0
    frame.check(cfg)


def test_llr_frame_shape_errors(lte_cfg):
    cfg = lte_cfg(8)
    with pytest.raises(CodecError):
        LlrFrame.from_channel(cfg, np.zeros(cfg.transmitted_length - 1))
    frame = LlrFrame.from_channel(cfg, np.zeros(cfg.transmitted_length))
    frame.tail2_par = np.zeros(2)
    with pytest.raises(CodecError):
        frame.check(cfg)


def _oracle_extrinsic(spec, sys_llr, par_llr, apriori, n, terminated):
    """枚举全部信息序列求精确后验"""
    t = spec.trellis()
    m0, m1 = [[] for _ in range(n)], [[] for _ in range(n)]
    for bits in itertools.product((0, 1), repeat=n):
        state, metric = 0, 0.0
        inputs = list(bits)
        if terminated:
            s = 0
            for b in bits:
                s = int(t.next_state[s, b])
            inputs += spec.tail_sequence(s)[0]
        for k, u in enumerate(inputs):
            z = int(t.parity[state, u])
            metric += 0.5 * ((1 - 2 * u) * (sys_llr[k] + apriori[k]) + (1 - 2 * z) * par_llr[k])
            state = int(t.next_state[state, u])
        for k in range(n):
            (m1 if bits[k] else m0)[k].append(metric)
    total = np.array([logsumexp(a) - logsumexp(b) for a, b in zip(m0, m1)])
    return total - sys_llr[:n] - apriori[:n]


@pytest.mark.parametrize("spec", [LTE, BERROU])
@pytest.mark.parametrize("terminated", [False, True])
def test_siso_matches_exhaustive_oracle(spec, terminated):
    n = 8
    length = n + (spec.memory if terminated else 0)
    rng = np.random.default_rng(17)
    sys_llr, par_llr, apriori = (rng.normal(0, 2, length) for _ in range(3))
    got = siso_logmap(spec, sys_llr, par_llr, apriori, terminated)
    expected = _oracle_extrinsic(spec, sys_llr, par_llr, apriori, n, terminated)
    assert np.allclose(got[:n], expected, atol=1e-6)


def test_siso_no_parity_information():
    rng = np.random.default_rng(3)
    sys_llr = rng.normal(0, 2, 20)
    ext = siso_logmap(LTE, sys_llr, np.zeros(20), np.zeros(20), terminated=False)
    assert np.allclose(ext, 0.0, atol=1e-9)


def test_siso_codeword_sign_symmetry():
    # 沿一个码字翻转LLR符号，外信息在该码字的1位置上变号
    rng = np.random.default_rng(5)
    n = 24
    u = rng.integers(0, 2, n)
    t = LTE.trellis()
    z, state = np.zeros(n, dtype=np.int64), 0
    for k in range(n):
        z[k] = t.parity[state, u[k]]
        state = t.next_state[state, u[k]]
    sys_llr, par_llr, apriori = (rng.normal(0, 2, n) for _ in range(3))
    flip_u, flip_z = 1 - 2 * u, 1 - 2 * z
    base = siso_logmap(LTE, sys_llr, par_llr, apriori, terminated=False)
    flipped = siso_logmap(LTE, sys_llr * flip_u, par_llr * flip_z, apriori * flip_u, terminated=False)
    assert np.allclose(flipped, base * flip_u, atol=1e-9)


def test_siso_shape_error():
    with pytest.raises(CodecError):
        siso_logmap(LTE, np.zeros(4), np.zeros(5), np.zeros(4), terminated=False)


@pytest.mark.parametrize("mode", MODES)
@pytest.mark.parametrize("max_log", [False, True])
def test_noiseless_decode(lte_cfg, rng, mode, max_log):
    cfg = lte_cfg(48, termination=mode)
    u = rng.integers(0, 2, 48)
    bits = turbo_encode(cfg, u).to_bits()
    llr = LlrFrame.from_channel(cfg, 20.0 * (1 - 2 * bits))
    decoded, posterior = turbo_decode(cfg, llr, iterations=1, max_log=max_log)
    assert np.array_equal(decoded, u)
    assert np.all(np.sign(posterior) == 1 - 2 * u)


@pytest.mark.parametrize("mode", MODES)
def test_erasure_decodes_to_zero(lte_cfg, mode):
    cfg = lte_cfg(20, termination=mode)
    llr = LlrFrame.from_channel(cfg, np.zeros(cfg.transmitted_length))
    decoded, posterior = turbo_decode(cfg, llr, iterations=4)
    assert np.all(posterior == 0.0)
    assert decoded.sum() == 0


def test_decode_rejects_zero_iterations(lte_cfg):
    cfg = lte_cfg(8)
    llr = LlrFrame.from_channel(cfg, np.ones(cfg.transmitted_length))
    with pytest.raises(CodecError):
        turbo_decode(cfg, llr, iterations=0)


def test_berrou_phase_odd(rng):
    cfg = TurboCodeConfig(BERROU, gen_random(32, 2), PuncturePhase.P1_AT_ODD_INDEX, TerminationMode.FIRST_ONLY)
    u = rng.integers(0, 2, 32)
    bits = turbo_encode(cfg, u).to_bits()
    decoded, _ = turbo_decode(cfg, LlrFrame.from_channel(cfg, 10.0 * (1 - 2 * bits)), iterations=2)
    assert np.array_equal(decoded, u)
