"""AWGN calibration and the SUI-1 three-tap Ricean channel.

Noise: with unit average energy per used subcarrier (Es = 1),
N0 = 1 / (10^(EbN0_dB/10) * bits_per_subcarrier * code_rate).  White
complex noise of variance N0 per time sample becomes variance N0 per
subcarrier under the unitary DFT, so Eb/N0 bookkeeping is independent
of the cyclic prefix length.

SUI-1 taps: powers [0, -15, -20] dB scaled by Fnorm = -0.1771 dB so the
mean channel power is exactly 1, Ricean K factors [4, 0, 0], delays
[0, 0.4, 0.9] us (samples [0, 1, 3] at 2.8 MHz), Doppler [0.4, 0.3, 0.5]
Hz.  Per OFDM symbol s the gain of tap k is
    g_k[s] = sqrt(p_k) * (sqrt(K/(K+1)) + sqrt(1/(K+1)) * w_k[s])
with w a unit-variance complex AR(1) process, w[s] = rho*w[s-1] +
sqrt(1-rho^2)*eps[s], rho_k = exp(-2*pi*f_dk*T_sym): quasi-static fading
within a symbol.  The antenna correlation parameter is carried for
configuration fidelity but unused (single-antenna chain).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ofdm import OfdmParams


@dataclass(frozen=True)
class Sui1Params:
    tap_power_db: tuple[float, ...] = (0.0, -15.0, -20.0)
    k_factor: tuple[float, ...] = (4.0, 0.0, 0.0)
    tap_delay_us: tuple[float, ...] = (0.0, 0.4, 0.9)
    doppler_hz: tuple[float, ...] = (0.4, 0.3, 0.5)
    antenna_correlation: float = 0.7
    fnorm_db: float = -0.1771

    def __post_init__(self):
        n = len(self.tap_power_db)
        for field in (self.k_factor, self.tap_delay_us, self.doppler_hz):
            if len(field) != n:
                raise ValueError("per-tap parameter lists must have equal length")

    @property
    def mean_tap_power(self) -> np.ndarray:
        """Linear mean power per tap after the Fnorm normalization."""
        p = 10.0 ** (np.asarray(self.tap_power_db) / 10.0)
        return p * 10.0 ** (self.fnorm_db / 10.0)

    def sample_offsets(self, ofdm: OfdmParams) -> np.ndarray:
        delays = np.asarray(self.tap_delay_us) * 1e-6
        return np.round(delays * ofdm.sample_rate).astype(np.int64)


@dataclass(frozen=True)
class ChannelRealization:
    tap_gains: np.ndarray  # (n_symbols, n_taps) complex
    sample_offsets: np.ndarray  # (n_taps,) int
    noise_variance: float
    freq_response: np.ndarray  # (n_symbols, n_fft) complex


def noise_variance(eb_n0_db: float, bits_per_subcarrier: int, code_rate: float) -> float:
    """N0 per subcarrier (and per time sample) for Es = 1."""
    if code_rate <= 0 or code_rate > 1:
        raise ValueError(f"code rate must be in (0, 1], got {code_rate}")
    if bits_per_subcarrier < 1:
        raise ValueError(f"bits_per_subcarrier must be positive, got {bits_per_subcarrier}")
    return 1.0 / (10.0 ** (eb_n0_db / 10.0) * bits_per_subcarrier * code_rate)


def awgn_apply(x: np.ndarray, variance: float, rng: np.random.Generator) -> np.ndarray:
    """Add circular complex white noise of the given per-sample variance."""
    x = np.asarray(x, dtype=np.complex128)
    if variance < 0:
        raise ValueError(f"noise variance must be nonnegative, got {variance}")
    if variance == 0:
        return x.copy()
    z = rng.standard_normal((*x.shape, 2))
    return x + np.sqrt(variance / 2.0) * (z[..., 0] + 1j * z[..., 1])


def sui1_realize(
    n_symbols: int,
    params: Sui1Params,
    ofdm: OfdmParams,
    rng: np.random.Generator,
    noise_var: float = 0.0,
) -> ChannelRealization:
    """Draw per-symbol tap gains and the matching genie frequency response."""
    if n_symbols < 1:
        raise ValueError(f"need at least one symbol, got {n_symbols}")
    k = np.asarray(params.k_factor, dtype=np.float64)
    ntaps = len(k)
    p = params.mean_tap_power

    # one draw: w[0] plus the AR innovations for the remaining symbols
    z = rng.standard_normal((n_symbols, ntaps, 2))
    w = (z[..., 0] + 1j * z[..., 1]) / np.sqrt(2.0)
    rho = np.exp(-2.0 * np.pi * np.asarray(params.doppler_hz) * ofdm.symbol_duration)
    for s in range(1, n_symbols):
        w[s] = rho * w[s - 1] + np.sqrt(1.0 - rho**2) * w[s]

    with np.errstate(invalid="ignore"):
        los = np.sqrt(k / (k + 1.0))
        scatter = np.sqrt(1.0 / (k + 1.0))
    los = np.where(np.isinf(k), 1.0, los)
    scatter = np.where(np.isinf(k), 0.0, scatter)
    gains = np.sqrt(p) * (los + scatter * w)

    offsets = params.sample_offsets(ofdm)
    phase = np.exp(
        -2j * np.pi * np.outer(offsets, np.arange(ofdm.n_fft)) / ofdm.n_fft
    )
    freq = gains @ phase
    return ChannelRealization(gains, offsets, noise_var, freq)


def _apply_taps(frames: np.ndarray, gains: np.ndarray, offsets: np.ndarray, symbol_len: int):
    """Tapped-delay-line convolution; spill carries into the next symbol."""
    frames = np.atleast_2d(frames)
    nblk, total = frames.shape
    nsym = total // symbol_len
    dmax = int(offsets.max())
    out = np.zeros_like(frames)
    hist = np.zeros((nblk, dmax), dtype=np.complex128) if dmax else None
    for s in range(nsym):
        seg = frames[:, s * symbol_len : (s + 1) * symbol_len]
        ext = seg if dmax == 0 else np.concatenate([hist, seg], axis=1)
        acc = np.zeros((nblk, symbol_len), dtype=np.complex128)
        for t, d in enumerate(offsets):
            acc += gains[:, s, t : t + 1] * ext[:, dmax - d : dmax - d + symbol_len]
        out[:, s * symbol_len : (s + 1) * symbol_len] = acc
        if dmax:
            hist = seg[:, -dmax:]
    return out


def sui1_apply(
    frame: np.ndarray, realization: ChannelRealization, ofdm: OfdmParams
) -> np.ndarray:
    """Pass one frame through the realized tapped delay line."""
    frame = np.asarray(frame, dtype=np.complex128)
    if frame.size % ofdm.symbol_len:
        raise ValueError(f"frame length {frame.size} not a multiple of {ofdm.symbol_len}")
    nsym = frame.size // ofdm.symbol_len
    if realization.tap_gains.shape[0] != nsym:
        raise ValueError(
            f"realization covers {realization.tap_gains.shape[0]} symbols, frame has {nsym}"
        )
    return _apply_taps(
        frame[None, :], realization.tap_gains[None], realization.sample_offsets, ofdm.symbol_len
    )[0]


def sui1_apply_batch(
    frames: np.ndarray, realizations: list[ChannelRealization], ofdm: OfdmParams
) -> np.ndarray:
    """Pass a batch of frames through per-frame realized delay lines."""
    frames = np.atleast_2d(np.asarray(frames, dtype=np.complex128))
    if frames.shape[0] != len(realizations):
        raise ValueError(
            f"{frames.shape[0]} frames but {len(realizations)} realizations"
        )
    gains = np.stack([r.tap_gains for r in realizations])
    return _apply_taps(frames, gains, realizations[0].sample_offsets, ofdm.symbol_len)
