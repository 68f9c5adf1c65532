"""Monte Carlo BER engine: seeded trials, stop rules, sweeps, references.

Every trial owns a deterministic seed mixed (splitmix64) from the master
seed, the scheme, guard ratio, channel, FEC flag, Eb/N0 in centi-dB and
the trial index, so a point's result is identical for any batch size or
worker count.  Inside a trial the random draws happen in a fixed order:
payload bits, then the channel realization (SUI-1 only), then noise.

A trial carries one RS block of payload (1912 bits) with FEC enabled,
16 OFDM symbols of bits without.  After each trial, in index order, the
stop rule is checked: accumulate until bit_errors >= min_errors or
bits_sent >= max_payload_bits; at least one trial always runs.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channels import awgn_apply, noise_variance, sui1_apply_batch, sui1_realize
from .link import SimConfig, frame_payload, receive_batch, transmit_batch

SCHEME_IDS = {"qpsk": 0, "qam16": 1, "qam64": 2}
CHANNEL_IDS = {"awgn": 0, "sui1": 1}

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class NotBracketed(Exception):
    """The sweep records never cross the target BER."""


@dataclass(frozen=True)
class StopRule:
    min_errors: int = 100
    max_payload_bits: int = 2_000_000

    def __post_init__(self):
        if self.min_errors < 1 or self.max_payload_bits < 1:
            raise ValueError("stop rule thresholds must be positive")

    def done(self, errors: int, bits: int) -> bool:
        return errors >= self.min_errors or bits >= self.max_payload_bits


@dataclass(frozen=True)
class BerRecord:
    modulation: str
    guard_ratio: float
    channel: str
    eb_n0_db: float
    bits_sent: int
    bit_errors: int
    ber: float
    trials: int
    seed: int


def splitmix64(x: int) -> int:
    x = (x + _GOLDEN) & _MASK
    x = ((x ^ (x >> 30)) * _MIX1) & _MASK
    x = ((x ^ (x >> 27)) * _MIX2) & _MASK
    return x ^ (x >> 31)


def trial_seed(master_seed: int, cfg: SimConfig, eb_n0_db: float, trial: int) -> int:
    """Stable 64-bit seed for one trial of one grid point."""
    fields = (
        SCHEME_IDS[cfg.scheme.name],
        round(cfg.ofdm.guard_ratio * 100_000),
        CHANNEL_IDS[cfg.channel],
        int(cfg.fec_enabled),
        round(eb_n0_db * 100),
        trial,
    )
    h = master_seed & _MASK
    for f in fields:
        h = splitmix64(h ^ (f & _MASK))
    return h


def trial_payload_bits(cfg: SimConfig) -> int:
    return cfg.rs_block_payload_bits if cfg.fec_enabled else 16 * cfg.n_cbps


def _run_trial_batch(cfg: SimConfig, eb_n0_db: float, master_seed: int, trials: range):
    """Simulate a contiguous range of trials; returns per-trial error counts."""
    n_bits = trial_payload_bits(cfg)
    n_symbols = frame_payload(n_bits, cfg).n_symbols
    n_var = noise_variance(eb_n0_db, cfg.scheme.bits_per_subcarrier, cfg.code_rate)

    rngs = [
        np.random.default_rng(trial_seed(master_seed, cfg, eb_n0_db, t)) for t in trials
    ]
    payloads = np.stack([rng.integers(0, 2, n_bits, dtype=np.uint8) for rng in rngs])
    frames = transmit_batch(payloads, cfg)
    csi = None
    if cfg.channel == "sui1":
        csi = [sui1_realize(n_symbols, cfg.sui1, cfg.ofdm, rng, n_var) for rng in rngs]
        frames = sui1_apply_batch(frames, csi, cfg.ofdm)
    noisy = np.stack([awgn_apply(frames[i], n_var, rng) for i, rng in enumerate(rngs)])
    got = receive_batch(noisy, cfg, csi, payload_bits=n_bits)
    return (got != payloads).sum(axis=1), n_bits


def run_point(
    cfg: SimConfig,
    eb_n0_db: float,
    stop: StopRule = StopRule(),
    master_seed: int = 1,
    batch_size: int = 64,
) -> BerRecord:
    """Estimate the BER of one grid point under the stop rule."""
    if batch_size < 1:
        raise ValueError(f"batch_size must be positive, got {batch_size}")
    bits = errors = trials = 0
    start = 0
    while True:
        batch_errors, n_bits = _run_trial_batch(
            cfg, eb_n0_db, master_seed, range(start, start + batch_size)
        )
        for e in batch_errors:
            bits += n_bits
            errors += int(e)
            trials += 1
            if stop.done(errors, bits):
                return BerRecord(
                    cfg.scheme.name,
                    cfg.ofdm.guard_ratio,
                    cfg.channel,
                    eb_n0_db,
                    bits,
                    errors,
                    errors / bits,
                    trials,
                    master_seed,
                )
        start += batch_size


def _run_point_star(args) -> BerRecord:
    return run_point(*args)


def run_sweep(
    configs: list[SimConfig],
    snr_grid_db: list[float],
    stop: StopRule = StopRule(),
    master_seed: int = 1,
    workers: int = 1,
    batch_size: int = 64,
) -> list[BerRecord]:
    """Run every (config, Eb/N0) point; records keep grid order."""
    points = [
        (cfg, float(db), stop, master_seed, batch_size)
        for cfg in configs
        for db in snr_grid_db
    ]
    if workers <= 1:
        return [_run_point_star(p) for p in points]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_point_star, points))


def qpsk_awgn_reference(eb_n0_db: float) -> float:
    """Uncoded coherent QPSK bit error rate: Q(sqrt(2*Eb/N0))."""
    return 0.5 * math.erfc(math.sqrt(10.0 ** (eb_n0_db / 10.0)))


def interpolate_required_ebn0(records: list[BerRecord], target: float = 1e-3) -> float:
    """Eb/N0 in dB where the measured curve crosses the target BER.

    Log-linear in log10(BER) between adjacent sweep points (sorted by
    Eb/N0); an exact hit returns that record's value.  Zero-BER records
    are usable as the far side of a bracket with 0.1/bits_sent standing
    in for log10(0).  Raises NotBracketed when no adjacent pair straddles
    the target.
    """
    if target <= 0:
        raise ValueError(f"target BER must be positive, got {target}")
    pts = sorted(records, key=lambda r: r.eb_n0_db)
    if not pts:
        raise NotBracketed("no records")
    for r in pts:
        if r.ber == target:
            return r.eb_n0_db
    for lo, hi in zip(pts, pts[1:]):
        if not (lo.ber > target > hi.ber):
            continue
        hi_ber = hi.ber if hi.ber > 0 else 0.1 / hi.bits_sent
        a = math.log10(lo.ber)
        b = math.log10(hi_ber)
        frac = (math.log10(target) - a) / (b - a)
        return lo.eb_n0_db + frac * (hi.eb_n0_db - lo.eb_n0_db)
    raise NotBracketed(f"no adjacent records straddle BER {target}")
