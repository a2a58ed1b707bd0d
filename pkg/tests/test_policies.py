"""Policy construction and cross-policy behavioral contracts."""

import pytest

from rainbowsim.core import Device, apply_setting, default_config
from rainbowsim.engine import Engine
from rainbowsim.policies import POLICY_NAMES, build_policy
from rainbowsim.workload import GeneratorSpec, generate


def run_policy(name, records, cfg=None):
    cfg = cfg or default_config()
    return Engine(cfg, build_policy(name, cfg)).run(records, name)


class TestBuildPolicy:
    def test_names(self):
        assert set(POLICY_NAMES) == {
            "rainbow", "flat-static", "hscc-4k", "hscc-2m", "dram-only"}

    def test_unknown_name_lists_choices(self):
        with pytest.raises(ValueError, match="rainbow"):
            build_policy("rainbows", default_config())

    def test_rainbow_shape(self):
        p = build_policy("rainbow", default_config())
        assert p.use_4k_tlb and p.use_2m_tlb and p.remap
        assert p.migration == "small" and not p.count_pre_llc
        assert p.two_stage_monitor and not p.migrate_in_shootdown
        assert p.table_device_2m == Device.NVM
        assert p.migration_page_bytes == 4096 and p.cost_scale == 1

    def test_hscc_2m_shape(self):
        p = build_policy("hscc-2m", default_config())
        assert not p.use_4k_tlb and p.use_2m_tlb and not p.remap
        assert p.migration == "super" and p.count_pre_llc
        assert not p.two_stage_monitor and p.migrate_in_shootdown
        assert p.migration_page_bytes == 2 << 20 and p.cost_scale == 512

    def test_dram_only_capacity_swap(self):
        cfg = default_config()
        p = build_policy("dram-only", cfg)
        assert p.dram_capacity_bytes == cfg.nvm.capacity_bytes
        assert p.nvm_capacity_bytes == 0 and p.migration == "none"

    def test_flat_static_shape(self):
        p = build_policy("flat-static", default_config())
        assert p.use_4k_tlb and not p.use_2m_tlb and not p.remap
        assert p.static_dram_modulus == 9
        assert p.table_device_4k == Device.DRAM


@pytest.fixture(scope="module")
def trace():
    spec = GeneratorSpec(kind="hot-superpage", refs=60_000,
                         footprint_bytes=256 << 20,
                         working_set_bytes=32 << 20, seed=3)
    return list(generate(spec))


class TestPolicyContracts:
    def test_static_policies_never_migrate(self, trace):
        for name in ("flat-static", "dram-only"):
            rep = run_policy(name, trace)
            assert rep.pages_migrated == 0
            assert rep.migration_traffic_bytes == 0
            assert rep.shootdowns_full == rep.shootdowns_local == 0

    def test_dram_only_never_touches_nvm(self, trace):
        rep = run_policy("dram-only", trace)
        assert rep.nvm_reads == rep.nvm_writes == 0
        assert rep.nvm_read_miss_pj == rep.nvm_write_miss_pj == 0.0

    def test_superpage_policies_never_walk_four_levels(self, trace):
        for name in ("rainbow", "hscc-2m", "dram-only"):
            rep = run_policy(name, trace)
            assert rep.walk4_count == 0
            assert rep.pipe_2m_lookups == rep.refs

    def test_walk_rate_ordering(self, trace):
        # superpage translation covers the working set; per-4 KB-page does not
        flat = run_policy("flat-static", trace)
        for name in ("rainbow", "dram-only"):
            rep = run_policy(name, trace)
            assert rep.tlb_mpkr < flat.tlb_mpkr

    def test_migrating_policies_move_pages(self, trace):
        cfg = default_config()
        apply_setting(cfg, "monitor.interval_cycles", "200000")
        cfg.finalize()
        rainbow = run_policy("rainbow", trace, cfg)
        hscc = run_policy("hscc-4k", trace, cfg)
        assert rainbow.pages_migrated > 0
        assert hscc.pages_migrated > 0
        # every migrated byte is accounted
        assert rainbow.migration_traffic_bytes >= rainbow.pages_migrated * 4096

    def test_rainbow_cheapest_on_hot_superpage_mix(self, trace):
        flat = run_policy("flat-static", trace)
        rainbow = run_policy("rainbow", trace)
        assert rainbow.total_cycles < flat.total_cycles

    def test_reports_carry_policy_names(self, trace):
        rep = run_policy("hscc-2m", trace[:1000])
        assert rep.policy == "hscc-2m"
        assert rep.label == "hscc-2m"
