"""Bit and byte interleaving between the coding stages.

Block bit interleaver (one OFDM symbol of n_cbps coded bits, d = 16):
    m_k = (n_cbps/16) * (k mod 16) + floor(k/16)
    j_k = s * floor(m_k/s) + (m_k + n_cbps - floor(16 * m_k / n_cbps)) mod s
with s = max(bits_per_subcarrier / 2, 1).  Bit k of the input lands on
position j_k of the output, so adjacent coded bits map onto nonadjacent
subcarriers (first step) and alternate constellation significance
(second step).

Forney convolutional interleaver (bytes, between RS and CC): branch i of
B carries a FIFO of i * M cells, the commutator advancing one branch per
symbol.  The stream classes keep state across calls and a matched
interleave/deinterleave pair has exactly B * (B-1) * M symbols of
latency.  The block functions wrap the delay lines circularly around the
block, which preserves length and is bijective whenever B divides the
block length (always true here: B = 5 divides 255-byte RS codewords).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True)
class ForneyParams:
    branches: int = 5
    delay_step: int = 3

    @property
    def latency(self) -> int:
        return self.branches * (self.branches - 1) * self.delay_step


@lru_cache(maxsize=None)
def block_permutation(n_cbps: int, bits_per_subcarrier: int) -> np.ndarray:
    """Positions j_k such that output[j_k] = input[k]."""
    if n_cbps % 16:
        raise ValueError(f"n_cbps must be a multiple of 16, got {n_cbps}")
    k = np.arange(n_cbps)
    m = (n_cbps // 16) * (k % 16) + k // 16
    s = max(bits_per_subcarrier // 2, 1)
    j = s * (m // s) + (m + n_cbps - (16 * m) // n_cbps) % s
    return j


def first_permutation(n_cbps: int) -> np.ndarray:
    """The subcarrier-spreading step alone: m_k per input index k."""
    k = np.arange(n_cbps)
    return (n_cbps // 16) * (k % 16) + k // 16


def block_interleave(bits: np.ndarray, n_cbps: int, bits_per_subcarrier: int) -> np.ndarray:
    """Interleave a whole frame of coded bits, one n_cbps symbol at a time."""
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.size % n_cbps:
        raise ValueError(f"bit count {bits.size} is not a multiple of n_cbps={n_cbps}")
    j = block_permutation(n_cbps, bits_per_subcarrier)
    rows = bits.reshape(-1, n_cbps)
    out = np.empty_like(rows)
    out[:, j] = rows
    return out.reshape(bits.shape)


def block_deinterleave(bits: np.ndarray, n_cbps: int, bits_per_subcarrier: int) -> np.ndarray:
    """Exact inverse of block_interleave."""
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.size % n_cbps:
        raise ValueError(f"bit count {bits.size} is not a multiple of n_cbps={n_cbps}")
    j = block_permutation(n_cbps, bits_per_subcarrier)
    rows = bits.reshape(-1, n_cbps)
    return rows[:, j].reshape(bits.shape)


def forney_indices(length: int, params: ForneyParams = ForneyParams()) -> np.ndarray:
    """Source index per output position for the block-circular form."""
    if length % params.branches:
        raise ValueError(
            f"block length {length} not divisible by {params.branches} branches"
        )
    n = np.arange(length)
    return (n - (n % params.branches) * params.branches * params.delay_step) % length


def forney_interleave(symbols: np.ndarray, params: ForneyParams = ForneyParams()) -> np.ndarray:
    """Block-circular convolutional interleave; output length = input length."""
    symbols = np.asarray(symbols)
    return symbols[forney_indices(symbols.size, params)]


def forney_deinterleave(symbols: np.ndarray, params: ForneyParams = ForneyParams()) -> np.ndarray:
    """Exact inverse of forney_interleave."""
    symbols = np.asarray(symbols)
    idx = forney_indices(symbols.size, params)
    out = np.empty_like(symbols)
    out[idx] = symbols
    return out


class _ForneyStream:
    """Shared machinery: branch i delays its symbols by delays[i] visits."""

    def __init__(self, params: ForneyParams, reverse: bool):
        self.params = params
        m = params.delay_step
        order = range(params.branches)
        self._fifos = [
            [0] * (((params.branches - 1 - i) if reverse else i) * m) for i in order
        ]
        self._branch = 0

    def process(self, symbols: np.ndarray) -> np.ndarray:
        """Push symbols through the delay lines, one commutator step each."""
        symbols = np.asarray(symbols)
        out = np.empty_like(symbols)
        for n, x in enumerate(symbols):
            fifo = self._fifos[self._branch]
            if fifo:
                out[n] = fifo.pop(0)
                fifo.append(x)
            else:
                out[n] = x
            self._branch = (self._branch + 1) % self.params.branches
        return out

    def flush(self) -> np.ndarray:
        """Drain the pipeline with zeros; returns latency more symbols."""
        return self.process(np.zeros(self.params.latency, dtype=np.int64))


class ForneyInterleaver(_ForneyStream):
    def __init__(self, params: ForneyParams = ForneyParams()):
        super().__init__(params, reverse=False)


class ForneyDeinterleaver(_ForneyStream):
    def __init__(self, params: ForneyParams = ForneyParams()):
        super().__init__(params, reverse=True)
