"""Run configuration: INI parsing, defaults, validation, manifest.

The config file is UTF-8 `key = value` lines under four section headers:
[ofdm], [fec], [channel] and [sweep].  Every key has a default equal to
the standard simulation profile, so an empty file (or no file at all)
resolves to the full sweep grid: three modulations, four guard ratios
and both channel models.  Unknown sections or keys are rejected with
their location; enum-like values report the allowed set.
"""

from __future__ import annotations

import configparser
import dataclasses
import io
import logging
from dataclasses import dataclass

from . import __version__
from .channels import Sui1Params
from .convolutional import ConvCodeParams
from .engine import StopRule
from .interleaving import ForneyParams
from .link import SimConfig
from .mapping import SCHEMES
from .ofdm import ALLOWED_GUARDS, OfdmParams
from .reed_solomon import RsCodeParams

log = logging.getLogger(__name__)

MODULATION_NAMES = ("qpsk", "qam16", "qam64")
CHANNEL_NAMES = ("awgn", "sui1")
GUARD_CHOICES = (0.25, 0.125, 0.0625, 0.03125)


class ConfigError(ValueError):
    """Invalid configuration; the message carries section/key context."""


@dataclass(frozen=True)
class RunManifest:
    """Fully resolved run description, serialized next to every result."""

    version: str = __version__
    config_path: str | None = None
    # [ofdm]
    channel_bandwidth_hz: float = 2.5e6
    n_fft: int = 256
    n_used: int = 200
    sampling_factor: float = 28 / 25
    guard_ratios: tuple[float, ...] = GUARD_CHOICES
    # [fec]
    fec_enabled: bool = True
    rs_n: int = 255
    rs_k: int = 239
    rs_t: int = 8
    cc_rate: str = "1/2"
    cc_constraint_length: int = 7
    forney_branches: int = 5
    forney_delay_step: int = 3
    # [channel]
    channels: tuple[str, ...] = CHANNEL_NAMES
    tap_powers_db: tuple[float, ...] = (0.0, -15.0, -20.0)
    k_factors: tuple[float, ...] = (4.0, 0.0, 0.0)
    tap_delays_us: tuple[float, ...] = (0.0, 0.4, 0.9)
    doppler_hz: tuple[float, ...] = (0.4, 0.3, 0.5)
    antenna_correlation: float = 0.7
    # [sweep]
    modulations: tuple[str, ...] = MODULATION_NAMES
    snr_db: tuple[float, ...] = tuple(float(x) for x in range(0, 17, 2))
    min_errors: int = 100
    max_payload_bits: int = 2_000_000
    master_seed: int = 1
    workers: int = 1
    # filled by the writer, not the parser
    output_paths: tuple[str, ...] = ()

    def stop_rule(self) -> StopRule:
        return StopRule(self.min_errors, self.max_payload_bits)

    def sui1_params(self) -> Sui1Params:
        return Sui1Params(
            tap_power_db=self.tap_powers_db,
            k_factor=self.k_factors,
            tap_delay_us=self.tap_delays_us,
            doppler_hz=self.doppler_hz,
            antenna_correlation=self.antenna_correlation,
        )

    def sim_configs(self) -> list[SimConfig]:
        """The (modulation, guard, channel) grid in listed order."""
        sui1 = self.sui1_params()
        return [
            SimConfig(
                scheme=SCHEMES[m],
                ofdm=OfdmParams(
                    guard_ratio=g,
                    n_fft=self.n_fft,
                    n_used=self.n_used,
                    channel_bw_hz=self.channel_bandwidth_hz,
                    sampling_factor=self.sampling_factor,
                ),
                channel=c,
                fec_enabled=self.fec_enabled,
                rs=RsCodeParams(n=self.rs_n, k=self.rs_k, t=self.rs_t),
                conv=ConvCodeParams(constraint_length=self.cc_constraint_length),
                forney=ForneyParams(self.forney_branches, self.forney_delay_step),
                sui1=sui1,
            )
            for m in self.modulations
            for g in self.guard_ratios
            for c in self.channels
        ]


def parse_snr_spec(text: str) -> tuple[float, ...]:
    """Expand 'start:step:stop' (inclusive, dB) into a grid."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"snr spec must be start:step:stop, got {text!r}")
    try:
        start, step, stop = (float(p) for p in parts)
    except ValueError:
        raise ConfigError(f"snr spec has non-numeric field: {text!r}") from None
    if start == stop:
        return (start,)
    if step <= 0 or stop < start:
        raise ConfigError(f"snr spec needs step > 0 and stop >= start: {text!r}")
    n = int((stop - start) / step + 1e-9) + 1
    return tuple(start + i * step for i in range(n))


def _parse_bool(raw: str, where: str) -> bool:
    lut = {"true": True, "yes": True, "1": True, "false": False, "no": False, "0": False}
    if raw.lower() not in lut:
        raise ConfigError(f"{where}: expected true/false, got {raw!r}")
    return lut[raw.lower()]


def _parse_float(raw: str, where: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{where}: expected a number, got {raw!r}") from None


def _parse_int(raw: str, where: str) -> int:
    try:
        return int(raw, 0)
    except ValueError:
        raise ConfigError(f"{where}: expected an integer, got {raw!r}") from None


def _parse_float_list(raw: str, where: str) -> tuple[float, ...]:
    items = [p.strip() for p in raw.split(",") if p.strip()]
    if not items:
        raise ConfigError(f"{where}: empty list")
    return tuple(_parse_float(p, where) for p in items)


def _parse_ant_corr(raw: str, where: str) -> float:
    value = _parse_float(raw, where)
    log.warning(
        "%s: antenna_correlation=%s parsed but unused (single-antenna link)", where, value
    )
    return value


def _parse_name_list(raw: str, where: str, allowed: tuple[str, ...]):
    items = [p.strip().lower() for p in raw.split(",") if p.strip()]
    if not items:
        raise ConfigError(f"{where}: empty list")
    for p in items:
        if p not in allowed:
            raise ConfigError(f"{where}: {p!r} not allowed; choose from {list(allowed)}")
    if len(set(items)) != len(items):
        raise ConfigError(f"{where}: duplicate entries in {items}")
    return tuple(items)


def _validate_guards(guards, where: str) -> tuple[float, ...]:
    for g in guards:
        if g not in ALLOWED_GUARDS:
            raise ConfigError(
                f"{where}: guard ratio {g} not allowed; choose from {sorted(ALLOWED_GUARDS)}"
            )
    if len(set(guards)) != len(guards):
        raise ConfigError(f"{where}: duplicate guard ratios in {list(guards)}")
    return tuple(guards)


# section -> key -> parser(raw, where); each returns the manifest field value
_SCHEMA = {
    "ofdm": {
        "channel_bandwidth_hz": ("channel_bandwidth_hz", _parse_float),
        "n_fft": ("n_fft", _parse_int),
        "n_used": ("n_used", _parse_int),
        "sampling_factor": ("sampling_factor", _parse_float),
        "guard_ratios": (
            "guard_ratios",
            lambda raw, where: _validate_guards(_parse_float_list(raw, where), where),
        ),
    },
    "fec": {
        "enabled": ("fec_enabled", _parse_bool),
        "rs_n": ("rs_n", _parse_int),
        "rs_k": ("rs_k", _parse_int),
        "rs_t": ("rs_t", _parse_int),
        "cc_rate": ("cc_rate", lambda raw, where: raw.strip()),
        "cc_constraint_length": ("cc_constraint_length", _parse_int),
        "forney_branches": ("forney_branches", _parse_int),
        "forney_delay_step": ("forney_delay_step", _parse_int),
    },
    "channel": {
        "models": (
            "channels",
            lambda raw, where: _parse_name_list(raw, where, CHANNEL_NAMES),
        ),
        "tap_powers_db": ("tap_powers_db", _parse_float_list),
        "k_factors": ("k_factors", _parse_float_list),
        "tap_delays_us": ("tap_delays_us", _parse_float_list),
        "doppler_hz": ("doppler_hz", _parse_float_list),
        "antenna_correlation": ("antenna_correlation", _parse_ant_corr),
    },
    "sweep": {
        "modulations": (
            "modulations",
            lambda raw, where: _parse_name_list(raw, where, MODULATION_NAMES),
        ),
        "snr_db": ("snr_db", lambda raw, where: parse_snr_spec(raw.strip())),
        "min_errors": ("min_errors", _parse_int),
        "max_payload_bits": ("max_payload_bits", _parse_int),
        "master_seed": ("master_seed", _parse_int),
        "workers": ("workers", _parse_int),
    },
}


def _cross_validate(m: RunManifest) -> RunManifest:
    if (m.rs_n, m.rs_k, m.rs_t) != (255, 239, 8):
        raise ConfigError(
            f"[fec]: only the RS(255,239,8) profile is supported, "
            f"got ({m.rs_n},{m.rs_k},{m.rs_t})"
        )
    if m.cc_rate != "1/2":
        raise ConfigError(f"[fec] cc_rate: only '1/2' is supported, got {m.cc_rate!r}")
    if m.cc_constraint_length != 7:
        raise ConfigError(
            f"[fec] cc_constraint_length: only 7 is supported, got {m.cc_constraint_length}"
        )
    if m.forney_branches < 1 or m.forney_delay_step < 0:
        raise ConfigError("[fec]: forney_branches >= 1 and forney_delay_step >= 0 required")
    if m.n_fft != 256 or m.n_used != 200:
        raise ConfigError(
            f"[ofdm]: only n_fft=256 with n_used=200 is supported, "
            f"got n_fft={m.n_fft}, n_used={m.n_used}"
        )
    if m.channel_bandwidth_hz <= 0 or m.sampling_factor <= 0:
        raise ConfigError("[ofdm]: bandwidth and sampling factor must be positive")
    lens = {len(m.tap_powers_db), len(m.k_factors), len(m.tap_delays_us), len(m.doppler_hz)}
    if lens != {3}:
        raise ConfigError("[channel]: tap parameter lists must each have 3 entries")
    if m.min_errors < 1 or m.max_payload_bits < 1:
        raise ConfigError("[sweep]: min_errors and max_payload_bits must be positive")
    if m.master_seed < 0:
        raise ConfigError(f"[sweep] master_seed: must be nonnegative, got {m.master_seed}")
    if m.workers < 1:
        raise ConfigError(f"[sweep] workers: must be >= 1, got {m.workers}")
    return m


def parse_config_text(text: str, origin: str = "<config>") -> RunManifest:
    """Resolve config text against the defaults; reject unknown content."""
    cp = configparser.ConfigParser(interpolation=None)
    try:
        cp.read_string(text, source=origin)
    except configparser.Error as exc:
        raise ConfigError(f"{origin}: {exc}") from None
    fields: dict = {}
    for section in cp.sections():
        if section not in _SCHEMA:
            raise ConfigError(
                f"{origin}: unknown section [{section}]; "
                f"allowed sections are {list(_SCHEMA)}"
            )
        for key, raw in cp[section].items():
            if key not in _SCHEMA[section]:
                raise ConfigError(
                    f"{origin}: unknown key {key!r} in [{section}]; "
                    f"allowed keys are {list(_SCHEMA[section])}"
                )
            field_name, parser = _SCHEMA[section][key]
            fields[field_name] = parser(raw, f"{origin} [{section}] {key}")
    return _cross_validate(RunManifest(config_path=None, **fields))


def parse_config(path: str | None) -> RunManifest:
    """Load a config file, or the pure defaults when path is None."""
    if path is None:
        return _cross_validate(RunManifest())
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return dataclasses.replace(parse_config_text(text, origin=path), config_path=path)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, tuple):
        return ", ".join(_fmt(v) for v in value)
    return repr(value) if isinstance(value, float) else str(value)


def serialize_config(m: RunManifest) -> str:
    """Render the resolved manifest back to config-file text."""
    start, stop = m.snr_db[0], m.snr_db[-1]
    step = m.snr_db[1] - m.snr_db[0] if len(m.snr_db) > 1 else 1.0
    sections = {
        "ofdm": {
            "channel_bandwidth_hz": m.channel_bandwidth_hz,
            "n_fft": m.n_fft,
            "n_used": m.n_used,
            "sampling_factor": m.sampling_factor,
            "guard_ratios": m.guard_ratios,
        },
        "fec": {
            "enabled": m.fec_enabled,
            "rs_n": m.rs_n,
            "rs_k": m.rs_k,
            "rs_t": m.rs_t,
            "cc_rate": m.cc_rate,
            "cc_constraint_length": m.cc_constraint_length,
            "forney_branches": m.forney_branches,
            "forney_delay_step": m.forney_delay_step,
        },
        "channel": {
            "models": m.channels,
            "tap_powers_db": m.tap_powers_db,
            "k_factors": m.k_factors,
            "tap_delays_us": m.tap_delays_us,
            "doppler_hz": m.doppler_hz,
            "antenna_correlation": m.antenna_correlation,
        },
        "sweep": {
            "modulations": m.modulations,
            "snr_db": f"{start!r}:{step!r}:{stop!r}",
            "min_errors": m.min_errors,
            "max_payload_bits": m.max_payload_bits,
            "master_seed": m.master_seed,
            "workers": m.workers,
        },
    }
    out = io.StringIO()
    for name, body in sections.items():
        out.write(f"[{name}]\n")
        for key, value in body.items():
            out.write(f"{key} = {value if isinstance(value, str) else _fmt(value)}\n")
        out.write("\n")
    return out.getvalue()
