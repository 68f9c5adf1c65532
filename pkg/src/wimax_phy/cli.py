"""Command-line front end: BER sweeps to CSV, audio demo, service host.

The CLI is a thin client of the HTTP service: simulation always goes
through the service API, in-process by default or remote via --server.

Exit codes: 0 success, 2 configuration error, 3 file I/O or audio
format error, 4 simulation/service failure.
"""

from __future__ import annotations

import dataclasses
import json
import sys

import click

from . import __version__
from .client import ServiceError, SimulatorClient
from .config import (
    CHANNEL_NAMES,
    GUARD_CHOICES,
    MODULATION_NAMES,
    ConfigError,
    RunManifest,
    parse_config,
    parse_snr_spec,
)
from .engine import BerRecord
from .wavpcm import WavFormatError, read_wav_u8

EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_SIMULATION = 4

CSV_HEADER = "modulation,guard_ratio,channel,eb_n0_db,bits_sent,bit_errors,ber,trials,seed"

_GUARD_STRINGS = tuple(repr(g) for g in GUARD_CHOICES)


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


@click.group()
@click.version_option(version=__version__, prog_name="wimax-phy")
def main():
    """Baseband link simulator: coded OFDM over AWGN and SUI-1 channels."""


def _resolve_manifest(config_path, modulation, guard, channel, snr, min_errors,
                      max_bits, seed, no_fec, workers) -> RunManifest:
    manifest = parse_config(config_path)
    overrides = {}
    if modulation is not None:
        overrides["modulations"] = (modulation,)
    if guard is not None:
        overrides["guard_ratios"] = (float(guard),)
    if channel is not None:
        overrides["channels"] = (channel,)
    if snr is not None:
        overrides["snr_db"] = parse_snr_spec(snr)
    if min_errors is not None:
        if min_errors < 1:
            raise ConfigError(f"--min-errors must be positive, got {min_errors}")
        overrides["min_errors"] = min_errors
    if max_bits is not None:
        if max_bits < 1:
            raise ConfigError(f"--max-bits must be positive, got {max_bits}")
        overrides["max_payload_bits"] = max_bits
    if seed is not None:
        if seed < 0:
            raise ConfigError(f"--seed must be nonnegative, got {seed}")
        overrides["master_seed"] = seed
    if no_fec:
        overrides["fec_enabled"] = False
    if workers is not None:
        if workers < 1:
            raise ConfigError(f"--workers must be >= 1, got {workers}")
        overrides["workers"] = workers
    return dataclasses.replace(manifest, **overrides)


def _sweep_request(m: RunManifest, target_ber: float) -> dict:
    return {
        "modulations": list(m.modulations),
        "guard_ratios": list(m.guard_ratios),
        "channels": list(m.channels),
        "fec_enabled": m.fec_enabled,
        "snr_db": list(m.snr_db),
        "min_errors": m.min_errors,
        "max_payload_bits": m.max_payload_bits,
        "master_seed": m.master_seed,
        "workers": m.workers,
        "target_ber": target_ber,
        "profile": {
            "tap_powers_db": list(m.tap_powers_db),
            "k_factors": list(m.k_factors),
            "tap_delays_us": list(m.tap_delays_us),
            "doppler_hz": list(m.doppler_hz),
            "antenna_correlation": m.antenna_correlation,
        },
        "link": {
            "channel_bandwidth_hz": m.channel_bandwidth_hz,
            "sampling_factor": m.sampling_factor,
            "forney_branches": m.forney_branches,
            "forney_delay_step": m.forney_delay_step,
        },
    }


def _csv_text(records: list[BerRecord]) -> str:
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            f"{r.modulation},{r.guard_ratio!r},{r.channel},{r.eb_n0_db!r},"
            f"{r.bits_sent},{r.bit_errors},{r.ber!r},{r.trials},{r.seed}"
        )
    return "\n".join(lines) + "\n"


def _summary_text(manifest: RunManifest, summary: list[dict], target_ber: float) -> str:
    """Per-modulation table of required Eb/N0, guards across the columns."""
    by_key = {
        (s["modulation"], s["guard_ratio"], s["channel"]): s["required_eb_n0_db"]
        for s in summary
    }
    cols = [(g, c) for g in manifest.guard_ratios for c in manifest.channels]
    width = 16
    lines = [f"Eb/N0 (dB) required for BER {target_ber:g}"]
    for mod in manifest.modulations:
        lines.append("")
        lines.append(mod)
        header = "".join(f"G-{g:g} {c.upper()}".ljust(width) for g, c in cols)
        lines.append(header.rstrip())
        row = []
        for g, c in cols:
            value = by_key.get((mod, g, c))
            row.append(("n/a" if value is None else f"{value:.2f}").ljust(width))
        lines.append("".join(row).rstrip())
    return "\n".join(lines) + "\n"


def _write_manifest(manifest: RunManifest, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(dataclasses.asdict(manifest), fh, indent=2)
        fh.write("\n")


@main.command()
@click.option("--config", "config_path", type=click.Path(), default=None,
              help="INI config file; flags override it.")
@click.option("--modulation", type=click.Choice(MODULATION_NAMES), default=None)
@click.option("--guard", type=click.Choice(_GUARD_STRINGS), default=None)
@click.option("--channel", type=click.Choice(CHANNEL_NAMES), default=None)
@click.option("--snr", default=None, metavar="START:STEP:STOP", help="Eb/N0 grid in dB.")
@click.option("--min-errors", type=int, default=None)
@click.option("--max-bits", type=int, default=None, help="Payload bit cap per point.")
@click.option("--seed", type=int, default=None)
@click.option("--out", type=click.Path(), default="sweep.csv", show_default=True)
@click.option("--no-fec", is_flag=True, help="Bypass RS+CC coding (modem validation).")
@click.option("--workers", type=int, default=None)
@click.option("--target-ber", type=float, default=1e-3, show_default=True)
@click.option("--server", default=None, metavar="URL", help="Remote service URL.")
def sweep(config_path, modulation, guard, channel, snr, min_errors, max_bits, seed,
          out, no_fec, workers, target_ber, server):
    """Run a BER sweep and write CSV, summary table, and manifest."""
    try:
        manifest = _resolve_manifest(config_path, modulation, guard, channel, snr,
                                     min_errors, max_bits, seed, no_fec, workers)
        if target_ber <= 0:
            raise ConfigError(f"--target-ber must be positive, got {target_ber}")
    except ConfigError as exc:
        _fail(EXIT_CONFIG, str(exc))

    try:
        with SimulatorClient(server) as client:
            records, summary = client.sweep(_sweep_request(manifest, target_ber))
    except ServiceError as exc:
        _fail(EXIT_CONFIG if exc.status_code in (400, 422) else EXIT_SIMULATION, str(exc))
    except Exception as exc:
        _fail(EXIT_SIMULATION, f"simulation failed: {exc}")

    stem = out[: -len(".csv")] if out.endswith(".csv") else out
    summary_path = f"{stem}.summary.txt"
    manifest_path = f"{stem}.manifest.json"
    summary_txt = _summary_text(manifest, summary, target_ber)
    try:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(_csv_text(records))
        with open(summary_path, "w", encoding="utf-8") as fh:
            fh.write(summary_txt)
        _write_manifest(
            dataclasses.replace(manifest, output_paths=(out, summary_path)), manifest_path
        )
    except OSError as exc:
        _fail(EXIT_IO, f"cannot write results: {exc}")

    click.echo(f"wrote {len(records)} records to {out}")
    click.echo(summary_txt, nl=False)


@main.command()
@click.argument("input_wav", type=click.Path())
@click.argument("output_wav", type=click.Path())
@click.option("--ebn0", type=float, default=30.0, show_default=True, help="Eb/N0 in dB.")
@click.option("--modulation", type=click.Choice(MODULATION_NAMES), default="qpsk",
              show_default=True)
@click.option("--guard", type=click.Choice(_GUARD_STRINGS), default="0.25", show_default=True)
@click.option("--channel", type=click.Choice(CHANNEL_NAMES), default="awgn", show_default=True)
@click.option("--seed", type=int, default=1, show_default=True)
@click.option("--no-fec", is_flag=True, help="Bypass RS+CC coding.")
@click.option("--server", default=None, metavar="URL", help="Remote service URL.")
def audio(input_wav, output_wav, ebn0, modulation, guard, channel, seed, no_fec, server):
    """Send an 8-bit/8 kHz mono WAV through the link; write what arrives."""
    if seed < 0:
        _fail(EXIT_CONFIG, f"--seed must be nonnegative, got {seed}")
    try:
        read_wav_u8(input_wav)  # validate format before shipping bytes
        with open(input_wav, "rb") as fh:
            wav_bytes = fh.read()
    except WavFormatError as exc:
        _fail(EXIT_IO, str(exc))
    except OSError as exc:
        _fail(EXIT_IO, f"cannot read {input_wav}: {exc}")

    try:
        with SimulatorClient(server) as client:
            out_bytes, stats = client.audio(
                wav_bytes,
                modulation=modulation,
                guard_ratio=float(guard),
                channel=channel,
                fec_enabled=not no_fec,
                eb_n0_db=ebn0,
                master_seed=seed,
            )
    except ServiceError as exc:
        _fail(EXIT_CONFIG if exc.status_code in (400, 422) else EXIT_SIMULATION, str(exc))
    except Exception as exc:
        _fail(EXIT_SIMULATION, f"simulation failed: {exc}")

    try:
        with open(output_wav, "wb") as fh:
            fh.write(out_bytes)
    except OSError as exc:
        _fail(EXIT_IO, f"cannot write {output_wav}: {exc}")

    click.echo(
        f"ber = {stats['ber']!r} ({stats['bit_errors']} of {stats['payload_bits']} bits; "
        f"{stats['sample_errors']} samples differ)"
    )
    click.echo(f"wrote {output_wav}")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Host the simulator as an HTTP service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
