"""Pydantic request/response models for the simulator service."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..config import CHANNEL_NAMES, GUARD_CHOICES, MODULATION_NAMES

Modulation = Literal["qpsk", "qam16", "qam64"]
Channel = Literal["awgn", "sui1"]


def _check_guard(value: float) -> float:
    if value not in GUARD_CHOICES:
        raise ValueError(f"guard ratio {value} not allowed; choose from {list(GUARD_CHOICES)}")
    return value


class HealthResponse(BaseModel):
    status: str
    version: str


class ReferenceResponse(BaseModel):
    eb_n0_db: float
    ber: float


class LinkProfile(BaseModel):
    """Sample-rate and byte-interleaver knobs; defaults are the standard profile."""

    model_config = ConfigDict(extra="forbid")

    channel_bandwidth_hz: float = Field(2.5e6, gt=0)
    sampling_factor: float = Field(28 / 25, gt=0)
    forney_branches: int = Field(5, ge=1)
    forney_delay_step: int = Field(3, ge=0)


class ChannelProfile(BaseModel):
    """SUI-1 tap parameters; defaults are the standard profile."""

    model_config = ConfigDict(extra="forbid")

    tap_powers_db: list[float] = Field(default=[0.0, -15.0, -20.0])
    k_factors: list[float] = Field(default=[4.0, 0.0, 0.0])
    tap_delays_us: list[float] = Field(default=[0.0, 0.4, 0.9])
    doppler_hz: list[float] = Field(default=[0.4, 0.3, 0.5])
    antenna_correlation: float = 0.7

    @field_validator("tap_powers_db", "k_factors", "tap_delays_us", "doppler_hz")
    @classmethod
    def _three_taps(cls, v):
        if len(v) != 3:
            raise ValueError(f"expected 3 tap entries, got {len(v)}")
        return v


class PointRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    modulation: Modulation = "qpsk"
    guard_ratio: float = 0.25
    channel: Channel = "awgn"
    fec_enabled: bool = True
    eb_n0_db: float
    min_errors: int = Field(100, ge=1)
    max_payload_bits: int = Field(2_000_000, ge=1)
    master_seed: int = Field(1, ge=0, le=2**63 - 1)
    profile: ChannelProfile = Field(default_factory=ChannelProfile)
    link: LinkProfile = Field(default_factory=LinkProfile)

    _guard = field_validator("guard_ratio")(_check_guard)


class PointResponse(BaseModel):
    modulation: str
    guard_ratio: float
    channel: str
    eb_n0_db: float
    bits_sent: int
    bit_errors: int
    ber: float
    trials: int
    seed: int


class SweepRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    modulations: list[Modulation] = Field(default=list(MODULATION_NAMES), min_length=1)
    guard_ratios: list[float] = Field(default=list(GUARD_CHOICES), min_length=1)
    channels: list[Channel] = Field(default=list(CHANNEL_NAMES), min_length=1)
    fec_enabled: bool = True
    snr_db: list[float] = Field(
        default=[float(x) for x in range(0, 17, 2)], min_length=1
    )
    min_errors: int = Field(100, ge=1)
    max_payload_bits: int = Field(2_000_000, ge=1)
    master_seed: int = Field(1, ge=0, le=2**63 - 1)
    workers: int = Field(1, ge=1)
    target_ber: float = Field(1e-3, gt=0)
    profile: ChannelProfile = Field(default_factory=ChannelProfile)
    link: LinkProfile = Field(default_factory=LinkProfile)

    @field_validator("guard_ratios")
    @classmethod
    def _guards(cls, v):
        for g in v:
            _check_guard(g)
        return v


class SummaryEntry(BaseModel):
    modulation: str
    guard_ratio: float
    channel: str
    required_eb_n0_db: float | None


class SweepResponse(BaseModel):
    records: list[PointResponse]
    summary: list[SummaryEntry]
    target_ber: float


class AudioRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    wav_base64: str
    modulation: Modulation = "qpsk"
    guard_ratio: float = 0.25
    channel: Channel = "awgn"
    fec_enabled: bool = True
    eb_n0_db: float = 30.0
    master_seed: int = Field(1, ge=0, le=2**63 - 1)
    profile: ChannelProfile = Field(default_factory=ChannelProfile)
    link: LinkProfile = Field(default_factory=LinkProfile)

    _guard = field_validator("guard_ratio")(_check_guard)


class AudioResponse(BaseModel):
    wav_base64: str
    payload_bits: int
    bit_errors: int
    ber: float
    sample_errors: int
