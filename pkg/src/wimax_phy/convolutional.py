"""Rate-1/2 constraint-length-7 convolutional code with hard-decision Viterbi.

Generators are the octal pair (171, 133), taps read most significant bit
first so that g[0] multiplies the current input bit:
y1[n] = u[n]^u[n-1]^u[n-2]^u[n-3]^u[n-6], y2[n] = u[n]^u[n-2]^u[n-3]^u[n-5]^u[n-6].
Every block is zero-terminated with K-1 = 6 flush bits, so the coded
length is 2*(N+6) and the trellis starts and ends in state 0.  Decoding
is maximum likelihood for the Hamming metric with full-block traceback.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ConvCodeParams:
    constraint_length: int = 7
    generators: tuple[int, int] = (0o171, 0o133)
    tail_bits: int = 6

    def __post_init__(self):
        if self.tail_bits != self.constraint_length - 1:
            raise ValueError("tail must flush the whole register")


_PARAMS = ConvCodeParams()
_K = _PARAMS.constraint_length
_NSTATES = 1 << (_K - 1)

# tap positions: bit k of the MSB-first mask multiplies u[n-k]
_TAPS = [
    [k for k in range(_K) if (g >> (_K - 1 - k)) & 1]
    for g in _PARAMS.generators
]


def _build_trellis():
    """Per new-state predecessor and branch-output tables."""
    out_sym = np.zeros((_NSTATES, 2), dtype=np.uint8)  # [state, input] -> 2-bit output
    next_state = np.zeros((_NSTATES, 2), dtype=np.int64)
    for s in range(_NSTATES):
        for u in (0, 1):
            full = (u << (_K - 1)) | s  # (u[n], u[n-1], ..., u[n-6])
            y = 0
            for g in _PARAMS.generators:
                y = (y << 1) | ((full & g).bit_count() & 1)
            out_sym[s, u] = y
            next_state[s, u] = (u << (_K - 2)) | (s >> 1)
    prev = np.zeros((_NSTATES, 2), dtype=np.int64)
    branch_sym = np.zeros((_NSTATES, 2), dtype=np.uint8)
    for sp in range(_NSTATES):
        u = sp >> (_K - 2)
        for z in (0, 1):
            s = ((sp & (_NSTATES // 2 - 1)) << 1) | z
            prev[sp, z] = s
            branch_sym[sp, z] = out_sym[s, u]
    return out_sym, next_state, prev, branch_sym


_OUT_SYM, _NEXT_STATE, _PREV, _BRANCH_SYM = _build_trellis()
_POP2 = np.array([0, 1, 1, 2], dtype=np.int32)  # popcount of a 2-bit symbol


def cc_encode_blocks(bits: np.ndarray) -> np.ndarray:
    """Encode (B, N) hard bits into (B, 2*(N+6)) coded bits, pairs (G1, G2)."""
    bits = np.atleast_2d(np.asarray(bits, dtype=np.uint8))
    nblk, n = bits.shape
    streams = np.zeros((2, nblk, n + _PARAMS.tail_bits), dtype=np.uint8)
    for i, taps in enumerate(_TAPS):
        for k in taps:
            streams[i, :, k : k + n] ^= bits
    out = np.empty((nblk, 2 * (n + _PARAMS.tail_bits)), dtype=np.uint8)
    out[:, 0::2] = streams[0]
    out[:, 1::2] = streams[1]
    return out


def cc_encode(bits: np.ndarray) -> np.ndarray:
    """Encode one bit stream, zero tail included: output length 2*(len+6)."""
    return cc_encode_blocks(np.asarray(bits, dtype=np.uint8)[None, :])[0]


def viterbi_decode_blocks(coded: np.ndarray) -> np.ndarray:
    """Hard-decision ML decode of (B, 2*(N+6)) blocks back to (B, N) bits."""
    coded = np.atleast_2d(np.asarray(coded, dtype=np.uint8))
    nblk, clen = coded.shape
    if clen % 2:
        raise ValueError(f"coded length must be even, got {clen}")
    steps = clen // 2
    if steps < _PARAMS.tail_bits:
        raise ValueError(f"coded block shorter than the {_PARAMS.tail_bits}-bit tail")

    rx_sym = (coded[:, 0::2] << 1) | coded[:, 1::2]  # (B, steps)
    big = np.int32(1 << 24)
    pm = np.full((nblk, _NSTATES), big, dtype=np.int32)
    pm[:, 0] = 0
    decisions = np.empty((steps, nblk, _NSTATES), dtype=np.uint8)
    prev0, prev1 = _PREV[:, 0], _PREV[:, 1]
    sym0, sym1 = _BRANCH_SYM[:, 0], _BRANCH_SYM[:, 1]
    for t in range(steps):
        r = rx_sym[:, t : t + 1]
        cand0 = pm[:, prev0] + _POP2[r ^ sym0[None, :]]
        cand1 = pm[:, prev1] + _POP2[r ^ sym1[None, :]]
        choice = cand1 < cand0  # ties go to the z=0 predecessor
        decisions[t] = choice
        pm = np.where(choice, cand1, cand0)

    # zero-terminated trellis: trace back from state 0 regardless of metrics
    states = np.zeros(nblk, dtype=np.int64)
    rows = np.arange(nblk)
    bits = np.empty((nblk, steps), dtype=np.uint8)
    low_mask = _NSTATES // 2 - 1
    for t in range(steps - 1, -1, -1):
        bits[:, t] = states >> (_K - 2)
        z = decisions[t][rows, states]
        states = ((states & low_mask) << 1) | z
    return bits[:, : steps - _PARAMS.tail_bits]


def viterbi_decode(coded: np.ndarray) -> np.ndarray:
    """Decode one coded stream; inverse of cc_encode on a clean channel."""
    return viterbi_decode_blocks(np.asarray(coded, dtype=np.uint8)[None, :])[0]
