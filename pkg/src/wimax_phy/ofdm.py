"""OFDM symbol assembly for the 256-point WirelessMAN-OFDM PHY.

200 data subcarriers occupy bins -100..-1 and +1..+100 in ascending
index order; DC and the 55 outermost bins stay empty.  Transforms are
unitary (1/sqrt(N) both directions) so subcarrier energy equals useful
time-sample energy.  Each symbol is preceded by a cyclic prefix of
guard_ratio * n_fft samples, guard_ratio in {1/4, 1/8, 1/16, 1/32}.
The nominal 2.5 MHz channel with the 28/25 sampling factor gives a
2.8 MHz sample rate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ALLOWED_GUARDS = (0.25, 0.125, 0.0625, 0.03125)


@dataclass(frozen=True)
class OfdmParams:
    guard_ratio: float = 0.25
    n_fft: int = 256
    n_used: int = 200
    channel_bw_hz: float = 2.5e6
    sampling_factor: float = 28.0 / 25.0

    def __post_init__(self):
        if self.guard_ratio not in ALLOWED_GUARDS:
            raise ValueError(
                f"guard_ratio {self.guard_ratio} not in allowed set {ALLOWED_GUARDS}"
            )
        if (self.n_used % 2) or self.n_used >= self.n_fft:
            raise ValueError(f"n_used {self.n_used} must be even and below n_fft {self.n_fft}")

    @property
    def cp_len(self) -> int:
        return int(self.guard_ratio * self.n_fft)

    @property
    def symbol_len(self) -> int:
        return self.n_fft + self.cp_len

    @property
    def sample_rate(self) -> float:
        return self.channel_bw_hz * self.sampling_factor

    @property
    def symbol_duration(self) -> float:
        return self.symbol_len / self.sample_rate

    @property
    def used_bins(self) -> np.ndarray:
        """FFT bin numbers of the data subcarriers, frequency ascending."""
        half = self.n_used // 2
        idx = np.concatenate([np.arange(-half, 0), np.arange(1, half + 1)])
        return idx % self.n_fft


def ofdm_modulate(symbols: np.ndarray, params: OfdmParams) -> np.ndarray:
    """Frequency symbols (..., S*n_used) to time samples (..., S*symbol_len)."""
    symbols = np.asarray(symbols, dtype=np.complex128)
    if symbols.shape[-1] % params.n_used:
        raise ValueError(
            f"symbol count {symbols.shape[-1]} is not a multiple of n_used={params.n_used}"
        )
    lead = symbols.shape[:-1]
    rows = symbols.reshape(-1, params.n_used)
    bins = np.zeros((rows.shape[0], params.n_fft), dtype=np.complex128)
    bins[:, params.used_bins] = rows
    useful = np.fft.ifft(bins, axis=1) * np.sqrt(params.n_fft)
    frames = np.concatenate([useful[:, -params.cp_len :], useful], axis=1)
    nsym = symbols.shape[-1] // params.n_used
    return frames.reshape(*lead, nsym * params.symbol_len)


def ofdm_demodulate(frame: np.ndarray, params: OfdmParams) -> np.ndarray:
    """Time samples back to frequency symbols; exact inverse of ofdm_modulate."""
    frame = np.asarray(frame, dtype=np.complex128)
    if frame.shape[-1] % params.symbol_len:
        raise ValueError(
            f"frame length {frame.shape[-1]} is not a multiple of {params.symbol_len}"
        )
    lead = frame.shape[:-1]
    rows = frame.reshape(-1, params.symbol_len)[:, params.cp_len :]
    bins = np.fft.fft(rows, axis=1) / np.sqrt(params.n_fft)
    nsym = frame.shape[-1] // params.symbol_len
    return bins[:, params.used_bins].reshape(*lead, nsym * params.n_used)
