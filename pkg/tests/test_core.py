"""Address arithmetic, cycle conversion, and config plumbing."""

import random
from fractions import Fraction

import pytest

from rainbowsim.core import (
    ADDR_BITS,
    ConfigError,
    SimConfig,
    apply_setting,
    default_config,
    join_address,
    load_config,
    ns_to_cycles,
    split_address,
)


def test_split_address_fields():
    vaddr = (5 << 21) | (17 << 12) | 9
    assert split_address(vaddr) == (5, 17, 9)
    assert join_address(5, 17, 9) == vaddr


def test_split_join_roundtrip_random():
    rng = random.Random(42)
    for _ in range(2000):
        vaddr = rng.getrandbits(ADDR_BITS)
        vsn, idx, off = split_address(vaddr)
        assert 0 <= idx < 512 and 0 <= off < 4096
        assert join_address(vsn, idx, off) == vaddr


class TestNsToCycles:
    def test_device_latencies(self):
        # 3.2 GHz turns the nominal device latencies into these cycle counts
        assert ns_to_cycles(13.5, 3.2) == 43
        assert ns_to_cycles(28.5, 3.2) == 91
        assert ns_to_cycles(19.5, 3.2) == 62
        assert ns_to_cycles(171.0, 3.2) == 547

    def test_rounds_half_up(self):
        assert ns_to_cycles(2.5, 1.0) == 3
        assert ns_to_cycles(3.5, 1.0) == 4
        assert ns_to_cycles(Fraction(1, 2), 1.0) == 1
        assert ns_to_cycles(0.49999, 1.0) == 0

    def test_exact_rational_inputs(self):
        # 4096 B at 10.7 GB/s is 4096/10.7 ns; at 3.2 GHz that is 1225 cycles
        assert ns_to_cycles(Fraction(4096) / Fraction("10.7"), Fraction("3.2")) == 1225

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            ns_to_cycles(-1.0, 3.2)


class TestConfig:
    def test_default_derived_cycles(self):
        cfg = default_config()
        assert (cfg.t_dr, cfg.t_dw, cfg.t_nr, cfg.t_nw) == (43, 91, 62, 547)
        # one 4 KB transfer (1225) + read source + write destination
        assert cfg.t_mig == 1225 + 62 + 91 == 1378
        assert cfg.t_writeback == 1225 + 43 + 547 == 1815

    def test_explicit_cost_overrides(self):
        cfg = SimConfig()
        cfg.migration.t_mig_cycles = 1379
        cfg.migration.t_writeback_cycles = 1816
        cfg.finalize()
        assert cfg.t_mig == 1379
        assert cfg.t_writeback == 1816

    def test_apply_setting_types(self):
        cfg = SimConfig()
        apply_setting(cfg, "monitor.interval_cycles", "1e8")
        assert cfg.monitor.interval_cycles == 100_000_000
        apply_setting(cfg, "dram.read_ns", "15.0")
        assert cfg.dram.read_ns == 15.0
        apply_setting(cfg, "monitor.top_n", " 50 ")
        assert cfg.monitor.top_n == 50

    def test_apply_setting_unknown_key(self):
        cfg = SimConfig()
        with pytest.raises(ConfigError, match="monitor.topn"):
            apply_setting(cfg, "monitor.topn", "10")
        with pytest.raises(ConfigError, match="unknown config key"):
            apply_setting(cfg, "nosuchsection.x", "1")
        with pytest.raises(ConfigError, match="unknown config key"):
            apply_setting(cfg, "interval_cycles", "1")  # section required

    def test_apply_setting_bad_value(self):
        cfg = SimConfig()
        with pytest.raises(ConfigError, match="monitor.top_n"):
            apply_setting(cfg, "monitor.top_n", "ten")
        with pytest.raises(ConfigError):
            apply_setting(cfg, "monitor.top_n", "1.5")  # non-integral

    def test_interval_floor(self):
        cfg = SimConfig()
        cfg.monitor.interval_cycles = 99_999
        with pytest.raises(ConfigError, match="interval_cycles"):
            cfg.finalize()
        cfg.monitor.interval_cycles = 100_000
        cfg.finalize()

    def test_validate_collects_errors(self):
        cfg = SimConfig()
        cfg.monitor.interval_cycles = 1
        cfg.nvm.write_ns = 1.0  # below read_ns
        with pytest.raises(ConfigError) as exc:
            cfg.finalize()
        msg = str(exc.value)
        assert "interval_cycles" in msg and "nvm.write_ns" in msg

    def test_capacity_granularity(self):
        cfg = SimConfig()
        cfg.dram.capacity_bytes = (4 << 30) + 4096
        with pytest.raises(ConfigError, match="dram.capacity_bytes"):
            cfg.finalize()


class TestConfigFile:
    def test_load_and_override(self, tmp_path):
        path = tmp_path / "sim.cfg"
        path.write_text(
            "# comment line\n"
            "cpu.freq_ghz = 3.2\n"
            "dram.read_ns = 13.5   # trailing comment\n"
            "monitor.interval_cycles = 2e5\n"
            "\n"
            "tlb.l2_entries = 1024\n")
        cfg = load_config(path)
        assert cfg.monitor.interval_cycles == 200_000
        assert cfg.tlb.l2_entries == 1024
        assert cfg.t_dr == 43

    def test_unknown_key_names_line(self, tmp_path):
        path = tmp_path / "sim.cfg"
        path.write_text("cpu.freq_ghz = 3.2\nmonitor.nope = 1\n")
        with pytest.raises(ConfigError) as exc:
            load_config(path)
        msg = str(exc.value)
        assert ":2:" in msg and "monitor.nope" in msg

    def test_missing_equals(self, tmp_path):
        path = tmp_path / "sim.cfg"
        path.write_text("cpu.freq_ghz 3.2\n")
        with pytest.raises(ConfigError, match="key = value"):
            load_config(path)
