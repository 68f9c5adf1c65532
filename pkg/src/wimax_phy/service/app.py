"""FastAPI application wrapping the simulator core."""

from __future__ import annotations

import base64
import binascii
import dataclasses
import io

from fastapi import FastAPI, HTTPException, Query

from .. import __version__
from ..audio import run_audio
from ..channels import Sui1Params
from ..config import RunManifest
from ..engine import (
    NotBracketed,
    StopRule,
    interpolate_required_ebn0,
    qpsk_awgn_reference,
    run_point,
    run_sweep,
)
from ..interleaving import ForneyParams
from ..link import SimConfig
from ..mapping import SCHEMES
from ..ofdm import OfdmParams
from ..wavpcm import WavFormatError, read_wav_u8, write_wav_u8
from .schemas import (
    AudioRequest,
    AudioResponse,
    ChannelProfile,
    LinkProfile,
    HealthResponse,
    PointRequest,
    PointResponse,
    ReferenceResponse,
    SummaryEntry,
    SweepRequest,
    SweepResponse,
)


def _sui1_params(profile: ChannelProfile) -> Sui1Params:
    return Sui1Params(
        tap_power_db=tuple(profile.tap_powers_db),
        k_factor=tuple(profile.k_factors),
        tap_delay_us=tuple(profile.tap_delays_us),
        doppler_hz=tuple(profile.doppler_hz),
        antenna_correlation=profile.antenna_correlation,
    )


def _sim_config(
    modulation: str,
    guard_ratio: float,
    channel: str,
    fec_enabled: bool,
    profile: ChannelProfile,
    link: LinkProfile,
) -> SimConfig:
    return SimConfig(
        scheme=SCHEMES[modulation],
        ofdm=OfdmParams(
            guard_ratio=guard_ratio,
            channel_bw_hz=link.channel_bandwidth_hz,
            sampling_factor=link.sampling_factor,
        ),
        channel=channel,
        fec_enabled=fec_enabled,
        forney=ForneyParams(link.forney_branches, link.forney_delay_step),
        sui1=_sui1_params(profile),
    )


def create_app() -> FastAPI:
    app = FastAPI(title="wimax-phy simulator", version=__version__)

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.get("/defaults")
    def defaults() -> dict:
        return dataclasses.asdict(RunManifest())

    @app.get("/reference/qpsk-awgn", response_model=ReferenceResponse)
    def reference(eb_n0_db: float = Query(...)) -> ReferenceResponse:
        return ReferenceResponse(eb_n0_db=eb_n0_db, ber=qpsk_awgn_reference(eb_n0_db))

    @app.post("/point", response_model=PointResponse)
    def point(req: PointRequest) -> PointResponse:
        cfg = _sim_config(
            req.modulation, req.guard_ratio, req.channel, req.fec_enabled, req.profile, req.link
        )
        rec = run_point(
            cfg,
            req.eb_n0_db,
            StopRule(req.min_errors, req.max_payload_bits),
            master_seed=req.master_seed,
        )
        return PointResponse(**dataclasses.asdict(rec))

    @app.post("/sweep", response_model=SweepResponse)
    def sweep(req: SweepRequest) -> SweepResponse:
        configs = [
            _sim_config(m, g, c, req.fec_enabled, req.profile, req.link)
            for m in req.modulations
            for g in req.guard_ratios
            for c in req.channels
        ]
        records = run_sweep(
            configs,
            req.snr_db,
            StopRule(req.min_errors, req.max_payload_bits),
            master_seed=req.master_seed,
            workers=req.workers,
        )
        summary = []
        n_snr = len(req.snr_db)
        for i, cfg in enumerate(configs):
            per_cfg = records[i * n_snr : (i + 1) * n_snr]
            try:
                needed = interpolate_required_ebn0(per_cfg, req.target_ber)
            except NotBracketed:
                needed = None
            summary.append(
                SummaryEntry(
                    modulation=cfg.scheme.name,
                    guard_ratio=cfg.ofdm.guard_ratio,
                    channel=cfg.channel,
                    required_eb_n0_db=needed,
                )
            )
        return SweepResponse(
            records=[PointResponse(**dataclasses.asdict(r)) for r in records],
            summary=summary,
            target_ber=req.target_ber,
        )

    @app.post("/audio", response_model=AudioResponse)
    def audio(req: AudioRequest) -> AudioResponse:
        try:
            wav_bytes = base64.b64decode(req.wav_base64, validate=True)
        except (binascii.Error, ValueError):
            raise HTTPException(status_code=400, detail="wav_base64 is not valid base64")
        try:
            samples = read_wav_u8(io.BytesIO(wav_bytes))
        except WavFormatError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        cfg = _sim_config(
            req.modulation, req.guard_ratio, req.channel, req.fec_enabled, req.profile, req.link
        )
        out, result = run_audio(samples, cfg, req.eb_n0_db, req.master_seed)
        buf = io.BytesIO()
        write_wav_u8(buf, out)
        return AudioResponse(
            wav_base64=base64.b64encode(buf.getvalue()).decode("ascii"),
            payload_bits=result.payload_bits,
            bit_errors=result.bit_errors,
            ber=result.ber,
            sample_errors=result.sample_errors,
        )

    return app
