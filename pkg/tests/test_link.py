"""End-to-end link tests: framing arithmetic and clean-channel inversion."""

import numpy as np
import pytest

from wimax_phy.channels import (
    awgn_apply,
    noise_variance,
    sui1_apply,
    sui1_realize,
)
from wimax_phy.link import (
    FramedPayload,
    SimConfig,
    frame_payload,
    receive,
    receive_batch,
    transmit,
    transmit_batch,
)
from wimax_phy.mapping import QAM16, QAM64, QPSK, SCHEMES
from wimax_phy.ofdm import ALLOWED_GUARDS, OfdmParams

ALL_SCHEMES = [QPSK, QAM16, QAM64]


def test_single_rs_block_framing():
    layout = frame_payload(1912, SimConfig())
    assert layout == FramedPayload(
        payload_bits=1912,
        pad_bits=0,
        rs_blocks=1,
        coded_bits=4092,
        cc_pad_bits=308,
        n_symbols=11,
        n_samples=3520,
    )


def test_framing_pads_partial_rs_block():
    layout = frame_payload(1913, SimConfig())
    assert layout.rs_blocks == 2
    assert layout.pad_bits == 2 * 1912 - 1913
    assert layout.coded_bits == 2 * (2 * 255 * 8 + 6)


def test_framing_bypass_mode():
    cfg = SimConfig(fec_enabled=False)
    layout = frame_payload(401, cfg)
    assert layout.rs_blocks == 0
    assert layout.coded_bits == 401
    assert layout.n_symbols == 2
    assert layout.cc_pad_bits == 2 * 400 - 401


def test_framing_sample_counts_follow_guard():
    for g in ALLOWED_GUARDS:
        cfg = SimConfig(ofdm=OfdmParams(guard_ratio=g))
        layout = frame_payload(1912, cfg)
        assert layout.n_samples == layout.n_symbols * round(256 * (1 + g))


def test_framing_zero_and_negative():
    assert frame_payload(0, SimConfig()) == FramedPayload(0, 0, 0, 0, 0, 0, 0)
    with pytest.raises(ValueError):
        frame_payload(-1, SimConfig())


def test_rs_block_count_recoverable_from_frame_length():
    # slack inside one OFDM symbol never hides a whole extra codeword
    cfg = SimConfig()
    seen = {}
    for blocks in range(1, 40):
        layout = frame_payload(blocks * 1912, cfg)
        assert seen.setdefault(layout.n_symbols, blocks) == blocks


@pytest.mark.parametrize("scheme", ALL_SCHEMES, ids=lambda s: s.name)
@pytest.mark.parametrize("guard", sorted(ALLOWED_GUARDS))
@pytest.mark.parametrize("fec", [True, False])
def test_noiseless_round_trip(scheme, guard, fec):
    cfg = SimConfig(scheme=scheme, ofdm=OfdmParams(guard_ratio=guard), fec_enabled=fec)
    rng = np.random.default_rng(1000 + round(guard * 1000) + scheme.bits_per_subcarrier)
    bits = rng.integers(0, 2, 5000, dtype=np.uint8)
    frame = transmit(bits, cfg)
    assert frame.shape == (frame_payload(5000, cfg).n_samples,)
    got = receive(frame, cfg, payload_bits=5000)
    assert np.array_equal(got, bits)


def test_round_trip_without_length_returns_padded_payload():
    cfg = SimConfig()
    rng = np.random.default_rng(7)
    bits = rng.integers(0, 2, 1912, dtype=np.uint8)
    got = receive(transmit(bits, cfg), cfg)
    assert got.shape == (1912,)
    assert np.array_equal(got, bits)


def test_batch_matches_scalar():
    cfg = SimConfig(scheme=QAM16)
    rng = np.random.default_rng(21)
    payloads = rng.integers(0, 2, (4, 1912), dtype=np.uint8)
    frames = transmit_batch(payloads, cfg)
    singles = np.stack([transmit(p, cfg) for p in payloads])
    assert np.allclose(frames, singles)
    got = receive_batch(frames, cfg, payload_bits=1912)
    assert np.array_equal(got, payloads)


def test_sui1_genie_equalization_is_exact():
    # no noise: zero-forcing with the true response inverts the channel
    for guard in (0.25, 0.03125):
        cfg = SimConfig(channel="sui1", ofdm=OfdmParams(guard_ratio=guard))
        rng = np.random.default_rng(4)
        bits = rng.integers(0, 2, 1912, dtype=np.uint8)
        frame = transmit(bits, cfg)
        layout = frame_payload(1912, cfg)
        real = sui1_realize(layout.n_symbols, cfg.sui1, cfg.ofdm, rng)
        faded = sui1_apply(frame, real, cfg.ofdm)
        got = receive(faded, cfg, csi=real, payload_bits=1912)
        assert np.array_equal(got, bits)


def test_fec_corrects_noisy_frame_at_high_snr():
    cfg = SimConfig()
    rng = np.random.default_rng(9)
    bits = rng.integers(0, 2, 1912, dtype=np.uint8)
    var = noise_variance(8.0, cfg.scheme.bits_per_subcarrier, cfg.code_rate)
    noisy = awgn_apply(transmit(bits, cfg), var, rng)
    got = receive(noisy, cfg, payload_bits=1912)
    assert np.array_equal(got, bits)


def test_code_rate_and_n_cbps():
    assert SimConfig().code_rate == pytest.approx(239 / 510)
    assert SimConfig(fec_enabled=False).code_rate == 1.0
    for name, scheme in SCHEMES.items():
        assert SimConfig(scheme=scheme).n_cbps == 200 * scheme.bits_per_subcarrier


def test_receive_rejects_overlong_payload_request():
    cfg = SimConfig()
    frame = transmit(np.zeros(1912, dtype=np.uint8), cfg)
    with pytest.raises(ValueError):
        receive(frame, cfg, payload_bits=1913)


def test_empty_payload():
    cfg = SimConfig()
    frame = transmit(np.zeros(0, dtype=np.uint8), cfg)
    assert frame.shape == (0,)
    assert receive(frame, cfg).shape == (0,)


def test_invalid_channel_rejected():
    with pytest.raises(ValueError):
        SimConfig(channel="rayleigh")
