"""Gray-coded constellation mapping for QPSK, 16-QAM and 64-QAM.

Each subcarrier symbol carries bits_per_subcarrier bits, the first half
selecting the I level and the second half the Q level, most significant
bit first.  Per axis the m-bit label g is a Gray code: with b the binary
rank of g, the level is (2^m - 1) - 2*b, so label 0 maps to the most
positive level and adjacent levels differ in exactly one bit.  Levels are
scaled by 1/sqrt(2), 1/sqrt(10), 1/sqrt(42) for unit average symbol
energy.  QPSK bits (0, 0) therefore map to (1 + 1j)/sqrt(2).

Demapping is hard nearest-point per axis; exact midpoint ties resolve to
the smaller bit label, so the origin demaps to (0, 0) under QPSK.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ModulationScheme:
    name: str
    bits_per_subcarrier: int
    norm: float


QPSK = ModulationScheme("qpsk", 2, 1.0 / math.sqrt(2.0))
QAM16 = ModulationScheme("qam16", 4, 1.0 / math.sqrt(10.0))
QAM64 = ModulationScheme("qam64", 6, 1.0 / math.sqrt(42.0))

SCHEMES = {s.name: s for s in (QPSK, QAM16, QAM64)}


def _gray_to_binary(g: int) -> int:
    b = 0
    while g:
        b ^= g
        g >>= 1
    return b


def _axis_levels(m: int) -> np.ndarray:
    """Unscaled level per m-bit label, index = label value."""
    size = 1 << m
    return np.array([(size - 1) - 2 * _gray_to_binary(g) for g in range(size)], dtype=np.float64)


def map_bits(bits: np.ndarray, scheme: ModulationScheme) -> np.ndarray:
    """Map hard bits (multiple of bits_per_subcarrier) to complex symbols."""
    bits = np.asarray(bits, dtype=np.uint8)
    bps = scheme.bits_per_subcarrier
    if bits.size % bps:
        raise ValueError(f"bit count {bits.size} is not a multiple of {bps}")
    m = bps // 2
    groups = bits.reshape(-1, bps)
    weights = 1 << np.arange(m - 1, -1, -1)
    i_labels = groups[:, :m] @ weights
    q_labels = groups[:, m:] @ weights
    levels = _axis_levels(m) * scheme.norm
    return levels[i_labels] + 1j * levels[q_labels]


def demap_hard(symbols: np.ndarray, scheme: ModulationScheme) -> np.ndarray:
    """Nearest constellation point per symbol; returns the hard bit stream."""
    symbols = np.asarray(symbols, dtype=np.complex128)
    m = scheme.bits_per_subcarrier // 2
    levels = _axis_levels(m) * scheme.norm
    # distances evaluated in label order: argmin ties pick the smaller label
    i_labels = np.argmin(np.abs(symbols.real[:, None] - levels[None, :]), axis=1)
    q_labels = np.argmin(np.abs(symbols.imag[:, None] - levels[None, :]), axis=1)
    label_bits = ((np.arange(1 << m)[:, None] >> np.arange(m - 1, -1, -1)) & 1).astype(np.uint8)
    out = np.empty((symbols.size, 2 * m), dtype=np.uint8)
    out[:, :m] = label_bits[i_labels]
    out[:, m:] = label_bits[q_labels]
    return out.reshape(-1)


def min_distance(scheme: ModulationScheme) -> float:
    """Distance between adjacent constellation points: two level steps."""
    return 2.0 * scheme.norm
