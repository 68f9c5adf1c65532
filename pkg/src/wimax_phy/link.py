"""End-to-end baseband link: bits in, IQ samples out, and back.

Transmit pipeline with FEC enabled:
    pack bits to bytes -> zero-pad to 239-byte RS blocks -> RS encode ->
    Forney byte interleave -> unpack to bits -> convolutional encode
    (zero tail) -> zero-pad to whole OFDM symbols -> per-symbol block
    bit interleave -> constellation map -> OFDM modulate.
Receive runs the exact inverse with hard decisions; RS blocks that fail
to decode pass their systematic bytes through so the bit errors are
counted downstream.  With fec_enabled=False the coding and interleaving
stages are bypassed (modem validation mode).

The receiver recovers the RS block count from the frame length alone,
which is unambiguous because a whole extra RS codeword (2 * 2040 coded
bits) never fits inside the slack of one OFDM symbol.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .channels import ChannelRealization, Sui1Params
from .convolutional import ConvCodeParams, cc_encode_blocks, viterbi_decode_blocks
from .interleaving import (
    ForneyParams,
    block_deinterleave,
    block_interleave,
    forney_indices,
)
from .mapping import ModulationScheme, QPSK, demap_hard, map_bits
from .ofdm import OfdmParams, ofdm_demodulate, ofdm_modulate
from .reed_solomon import RsCodeParams, rs_decode_blocks, rs_encode_blocks

EQUALIZER_FLOOR = 1e-12

IqFrame = np.ndarray


@dataclass(frozen=True)
class SimConfig:
    scheme: ModulationScheme = QPSK
    ofdm: OfdmParams = field(default_factory=OfdmParams)
    channel: str = "awgn"
    fec_enabled: bool = True
    rs: RsCodeParams = field(default_factory=RsCodeParams)
    conv: ConvCodeParams = field(default_factory=ConvCodeParams)
    forney: ForneyParams = field(default_factory=ForneyParams)
    sui1: Sui1Params = field(default_factory=Sui1Params)

    def __post_init__(self):
        if self.channel not in ("awgn", "sui1"):
            raise ValueError(f"channel must be 'awgn' or 'sui1', got {self.channel!r}")

    @property
    def n_cbps(self) -> int:
        """Coded bits per OFDM symbol."""
        return self.ofdm.n_used * self.scheme.bits_per_subcarrier

    @property
    def code_rate(self) -> float:
        if not self.fec_enabled:
            return 1.0
        return (self.rs.k / self.rs.n) * 0.5

    @property
    def rs_block_payload_bits(self) -> int:
        return self.rs.k * 8


@dataclass(frozen=True)
class FramedPayload:
    """Transmission layout derived from a payload length."""

    payload_bits: int
    pad_bits: int  # zeros appended before RS encoding
    rs_blocks: int
    coded_bits: int  # convolutional encoder output
    cc_pad_bits: int  # zeros appended to fill the last OFDM symbol
    n_symbols: int
    n_samples: int


def frame_payload(n_bits: int, cfg: SimConfig) -> FramedPayload:
    """Compute the framing arithmetic for a payload of n_bits."""
    if n_bits < 0:
        raise ValueError(f"payload length must be nonnegative, got {n_bits}")
    n_cbps = cfg.n_cbps
    if n_bits == 0:
        return FramedPayload(0, 0, 0, 0, 0, 0, 0)
    if cfg.fec_enabled:
        block = cfg.rs_block_payload_bits
        rs_blocks = -(-n_bits // block)
        pad = rs_blocks * block - n_bits
        coded = 2 * (rs_blocks * cfg.rs.n * 8 + cfg.conv.tail_bits)
        n_symbols = -(-coded // n_cbps)
        cc_pad = n_symbols * n_cbps - coded
    else:
        rs_blocks = 0
        coded = n_bits
        n_symbols = -(-n_bits // n_cbps)
        pad = 0
        cc_pad = n_symbols * n_cbps - n_bits
    n_samples = n_symbols * cfg.ofdm.symbol_len
    return FramedPayload(n_bits, pad, rs_blocks, coded, cc_pad, n_symbols, n_samples)


def transmit_batch(bits: np.ndarray, cfg: SimConfig) -> np.ndarray:
    """Transmit B equal-length payloads; returns (B, n_samples) IQ frames."""
    bits = np.atleast_2d(np.asarray(bits, dtype=np.uint8))
    nblk, n_bits = bits.shape
    layout = frame_payload(n_bits, cfg)
    if layout.n_symbols == 0:
        return np.zeros((nblk, 0), dtype=np.complex128)

    if cfg.fec_enabled:
        padded = np.concatenate(
            [bits, np.zeros((nblk, layout.pad_bits), dtype=np.uint8)], axis=1
        )
        stream = np.packbits(padded, axis=1)
        codewords = rs_encode_blocks(
            stream.reshape(-1, cfg.rs.k), cfg.rs
        ).reshape(nblk, -1)
        woven = codewords[:, forney_indices(codewords.shape[1], cfg.forney)]
        coded = cc_encode_blocks(np.unpackbits(woven, axis=1))
        coded = np.concatenate(
            [coded, np.zeros((nblk, layout.cc_pad_bits), dtype=np.uint8)], axis=1
        )
        coded = block_interleave(
            coded.reshape(-1, cfg.n_cbps), cfg.n_cbps, cfg.scheme.bits_per_subcarrier
        ).reshape(nblk, -1)
    else:
        coded = np.concatenate(
            [bits, np.zeros((nblk, layout.cc_pad_bits), dtype=np.uint8)], axis=1
        )

    symbols = map_bits(coded.reshape(-1), cfg.scheme).reshape(nblk, -1)
    return ofdm_modulate(symbols, cfg.ofdm)


def transmit(bits: np.ndarray, cfg: SimConfig) -> IqFrame:
    """Transmit one payload; returns the complex baseband sample frame."""
    return transmit_batch(np.asarray(bits, dtype=np.uint8)[None, :], cfg)[0]


def _equalize(symbols: np.ndarray, csi: list[ChannelRealization], cfg: SimConfig):
    """Genie zero-forcing per subcarrier with a magnitude floor on H."""
    h = np.stack([r.freq_response for r in csi])[:, :, cfg.ofdm.used_bins]
    h = h.reshape(symbols.shape)
    h = np.where(np.abs(h) < EQUALIZER_FLOOR, EQUALIZER_FLOOR + 0j, h)
    return symbols / h


def receive_batch(
    frames: np.ndarray,
    cfg: SimConfig,
    csi: list[ChannelRealization] | None = None,
    payload_bits: int | None = None,
) -> np.ndarray:
    """Recover (B, payload) hard bits from (B, n_samples) received frames."""
    frames = np.atleast_2d(np.asarray(frames, dtype=np.complex128))
    nblk = frames.shape[0]
    if frames.shape[1] == 0:
        return np.zeros((nblk, 0), dtype=np.uint8)
    symbols = ofdm_demodulate(frames, cfg.ofdm)
    if csi is not None:
        symbols = _equalize(symbols, csi, cfg)
    raw = demap_hard(symbols.reshape(-1), cfg.scheme).reshape(nblk, -1)
    n_symbols = raw.shape[1] // cfg.n_cbps

    if cfg.fec_enabled:
        raw = block_deinterleave(
            raw.reshape(-1, cfg.n_cbps), cfg.n_cbps, cfg.scheme.bits_per_subcarrier
        ).reshape(nblk, -1)
        rs_blocks = (n_symbols * cfg.n_cbps // 2 - cfg.conv.tail_bits) // (cfg.rs.n * 8)
        coded_bits = 2 * (rs_blocks * cfg.rs.n * 8 + cfg.conv.tail_bits)
        decoded = viterbi_decode_blocks(raw[:, :coded_bits])
        stream = np.packbits(decoded, axis=1)
        idx = forney_indices(stream.shape[1], cfg.forney)
        unwoven = np.empty_like(stream)
        unwoven[:, idx] = stream
        msgs, _, _ = rs_decode_blocks(unwoven.reshape(-1, cfg.rs.n), cfg.rs)
        bits = np.unpackbits(msgs.reshape(nblk, -1), axis=1)
    else:
        bits = raw

    if payload_bits is not None:
        if payload_bits > bits.shape[1]:
            raise ValueError(
                f"frame carries {bits.shape[1]} bits, cannot strip to {payload_bits}"
            )
        bits = bits[:, :payload_bits]
    return bits


def receive(
    frame: IqFrame,
    cfg: SimConfig,
    csi: ChannelRealization | None = None,
    payload_bits: int | None = None,
) -> np.ndarray:
    """Recover one payload; exact inverse of transmit on a clean channel."""
    csi_list = None if csi is None else [csi]
    return receive_batch(
        np.asarray(frame, dtype=np.complex128)[None, :], cfg, csi_list, payload_bits
    )[0]
