"""One-shot transmission of an audio payload through the simulated link."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import awgn_apply, noise_variance, sui1_apply, sui1_realize
from .engine import trial_seed
from .link import SimConfig, frame_payload, receive, transmit
from .wavpcm import bits_to_samples, samples_to_bits


@dataclass(frozen=True)
class AudioResult:
    payload_bits: int
    bit_errors: int
    ber: float
    sample_errors: int


def run_audio(
    samples: np.ndarray, cfg: SimConfig, eb_n0_db: float, master_seed: int = 1
) -> tuple[np.ndarray, AudioResult]:
    """Send u8 samples through the link; returns (received samples, stats).

    Uses the same per-trial seeding as the sweep engine (trial index 0)
    with the usual draw order: channel realization, then noise.
    """
    samples = np.asarray(samples, dtype=np.uint8)
    if samples.size == 0:
        raise ValueError("audio payload is empty")
    bits = samples_to_bits(samples)
    rng = np.random.default_rng(trial_seed(master_seed, cfg, eb_n0_db, 0))
    n_var = noise_variance(eb_n0_db, cfg.scheme.bits_per_subcarrier, cfg.code_rate)

    frame = transmit(bits, cfg)
    csi = None
    if cfg.channel == "sui1":
        layout = frame_payload(bits.size, cfg)
        csi = sui1_realize(layout.n_symbols, cfg.sui1, cfg.ofdm, rng, n_var)
        frame = sui1_apply(frame, csi, cfg.ofdm)
    noisy = awgn_apply(frame, n_var, rng)

    got = receive(noisy, cfg, csi=csi, payload_bits=bits.size)
    out = bits_to_samples(got)
    bit_errors = int((got != bits).sum())
    sample_errors = int((out != samples).sum())
    return out, AudioResult(bits.size, bit_errors, bit_errors / bits.size, sample_errors)
