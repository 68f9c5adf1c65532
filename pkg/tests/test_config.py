"""Config file parsing, validation, and serialization round trip."""

import dataclasses

import pytest

from wimax_phy.config import (
    ConfigError,
    RunManifest,
    parse_config,
    parse_config_text,
    parse_snr_spec,
    serialize_config,
)
from wimax_phy.engine import StopRule


def test_empty_config_is_full_default_profile():
    m = parse_config_text("")
    assert m == RunManifest()
    assert m.channel_bandwidth_hz == 2.5e6
    assert m.n_fft == 256
    assert m.n_used == 200
    assert m.guard_ratios == (0.25, 0.125, 0.0625, 0.03125)
    assert (m.rs_n, m.rs_k, m.rs_t) == (255, 239, 8)
    assert m.cc_rate == "1/2"
    assert m.modulations == ("qpsk", "qam16", "qam64")
    assert m.channels == ("awgn", "sui1")


def test_no_path_gives_defaults():
    assert parse_config(None) == RunManifest()


def test_default_grid_is_24_configs_in_listed_order():
    cfgs = RunManifest().sim_configs()
    assert len(cfgs) == 24
    key = [(c.scheme.name, c.ofdm.guard_ratio, c.channel) for c in cfgs]
    assert key[0] == ("qpsk", 0.25, "awgn")
    assert key[1] == ("qpsk", 0.25, "sui1")
    assert key[2] == ("qpsk", 0.125, "awgn")
    assert key[8] == ("qam16", 0.25, "awgn")
    assert len(set(key)) == 24


def test_serialize_parse_idempotent():
    m1 = parse_config_text("")
    m2 = parse_config_text(serialize_config(m1))
    assert m2 == m1
    custom = parse_config_text(
        "[sweep]\nmodulations = qam64\nsnr_db = 8:0.5:14\nmaster_seed = 9\n"
        "[ofdm]\nguard_ratios = 0.125\n"
    )
    assert parse_config_text(serialize_config(custom)) == custom


def test_values_apply():
    m = parse_config_text(
        "[sweep]\nmin_errors = 7\nmax_payload_bits = 1234\nworkers = 2\n"
        "[fec]\nenabled = false\n"
    )
    assert m.stop_rule() == StopRule(7, 1234)
    assert m.workers == 2
    assert not m.fec_enabled
    assert all(not c.fec_enabled for c in m.sim_configs())


def test_sui1_params_mapping():
    m = parse_config_text(
        "[channel]\ntap_powers_db = 0, -10, -20\nk_factors = 2, 0, 0\n"
        "tap_delays_us = 0, 0.5, 1.0\ndoppler_hz = 0.1, 0.2, 0.3\n"
    )
    p = m.sui1_params()
    assert p.tap_power_db == (0.0, -10.0, -20.0)
    assert p.k_factor == (2.0, 0.0, 0.0)
    assert p.tap_delay_us == (0.0, 0.5, 1.0)
    assert p.doppler_hz == (0.1, 0.2, 0.3)


def test_unknown_section_rejected_with_location():
    with pytest.raises(ConfigError, match=r"unknown section \[turbo\]"):
        parse_config_text("[turbo]\nx = 1\n")


def test_unknown_key_rejected_with_location():
    with pytest.raises(ConfigError, match=r"unknown key 'pilots' in \[ofdm\]"):
        parse_config_text("[ofdm]\npilots = 8\n")


def test_disallowed_guard_lists_allowed_set():
    with pytest.raises(ConfigError) as exc:
        parse_config_text("[ofdm]\nguard_ratios = 0.3\n")
    msg = str(exc.value)
    assert "0.3" in msg
    for allowed in ("0.25", "0.125", "0.0625", "0.03125"):
        assert allowed in msg


def test_pinned_code_profile_enforced():
    with pytest.raises(ConfigError, match="RS"):
        parse_config_text("[fec]\nrs_k = 223\n")
    with pytest.raises(ConfigError, match="cc_rate"):
        parse_config_text("[fec]\ncc_rate = 2/3\n")
    with pytest.raises(ConfigError, match="constraint"):
        parse_config_text("[fec]\ncc_constraint_length = 9\n")
    with pytest.raises(ConfigError, match="n_fft"):
        parse_config_text("[ofdm]\nn_fft = 512\n")


def test_bad_values_name_section_and_key():
    with pytest.raises(ConfigError, match=r"\[sweep\] min_errors"):
        parse_config_text("[sweep]\nmin_errors = many\n")
    with pytest.raises(ConfigError, match=r"\[fec\] enabled"):
        parse_config_text("[fec]\nenabled = maybe\n")
    with pytest.raises(ConfigError, match=r"\[channel\] tap_powers_db"):
        parse_config_text("[channel]\ntap_powers_db = a, b, c\n")


def test_range_validation():
    with pytest.raises(ConfigError, match="workers"):
        parse_config_text("[sweep]\nworkers = 0\n")
    with pytest.raises(ConfigError, match="master_seed"):
        parse_config_text("[sweep]\nmaster_seed = -1\n")
    with pytest.raises(ConfigError, match="positive"):
        parse_config_text("[sweep]\nmin_errors = 0\n")
    with pytest.raises(ConfigError, match="3 entries"):
        parse_config_text("[channel]\nk_factors = 4, 0\n")
    with pytest.raises(ConfigError, match="duplicate"):
        parse_config_text("[ofdm]\nguard_ratios = 0.25, 0.25\n")


def test_snr_spec_grid():
    assert parse_snr_spec("0:1:8") == tuple(float(x) for x in range(9))
    assert parse_snr_spec("4:0.5:4") == (4.0,)
    assert parse_snr_spec("2:0.5:4") == (2.0, 2.5, 3.0, 3.5, 4.0)
    with pytest.raises(ConfigError):
        parse_snr_spec("0:1")
    with pytest.raises(ConfigError):
        parse_snr_spec("0:-1:8")
    with pytest.raises(ConfigError):
        parse_snr_spec("8:1:0")
    with pytest.raises(ConfigError):
        parse_snr_spec("a:b:c")


def test_antenna_correlation_flagged_in_logs(caplog):
    with caplog.at_level("WARNING", logger="wimax_phy.config"):
        m = parse_config_text("[channel]\nantenna_correlation = 0.7\n")
    assert m.antenna_correlation == 0.7
    assert any("unused" in rec.message for rec in caplog.records)


def test_missing_file_is_config_error(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        parse_config(str(tmp_path / "nope.ini"))


def test_file_parse_records_path(tmp_path):
    path = tmp_path / "run.ini"
    path.write_text("[sweep]\nmaster_seed = 5\n", encoding="utf-8")
    m = parse_config(str(path))
    assert m.config_path == str(path)
    assert m.master_seed == 5
    assert dataclasses.replace(m, config_path=None) == parse_config_text(
        path.read_text(encoding="utf-8")
    )


def test_malformed_ini_reports_origin():
    with pytest.raises(ConfigError, match="boom.ini"):
        parse_config_text("not an ini line\n", origin="boom.ini")
