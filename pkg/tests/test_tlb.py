"""Split TLB structures: LRU exactness, latencies, fills, shootdowns."""

import random

import pytest

from rainbowsim.core import PageSize, default_config
from rainbowsim.tlb import SplitTlb, TlbLevel, walk_cost


class TestTlbLevel:
    def test_lru_eviction_order(self):
        lvl = TlbLevel(entries=4, ways=4, latency_cycles=1)
        for vpn in (0, 4, 8, 12):  # one set, fill all ways
            assert lvl.install(vpn, vpn) is None
        lvl.lookup(0)  # 0 becomes most recent; 4 is now LRU
        assert lvl.install(16, 16) == (4, 4)
        assert lvl.contains(0) and not lvl.contains(4)

    def test_install_refresh_keeps_size(self):
        lvl = TlbLevel(4, 4, 1)
        for vpn in (0, 4, 8, 12):
            lvl.install(vpn, None)
        assert lvl.install(0, "new") is None  # refresh, no eviction
        assert lvl.install(16, None) == (4, None)

    def test_set_indexing(self):
        lvl = TlbLevel(entries=8, ways=2, latency_cycles=1)
        # vpns 0,4,8 all map to set 0 of 4; third install evicts
        lvl.install(0, None)
        lvl.install(4, None)
        assert lvl.install(8, None) == (0, None)

    def test_counters(self):
        lvl = TlbLevel(4, 4, 1)
        assert lvl.lookup(7) is None
        lvl.install(7, "x")
        assert lvl.lookup(7) == "x"
        assert (lvl.hits, lvl.misses, lvl.lookups) == (1, 1, 2)

    def test_bad_geometry(self):
        with pytest.raises(ValueError):
            TlbLevel(10, 4, 1)

    def test_lru_against_oracle(self):
        # one 8-way set driven randomly vs. a list-based reference model
        lvl = TlbLevel(8, 8, 1)
        oracle = []
        rng = random.Random(9)
        for _ in range(3000):
            vpn = rng.randrange(16) * 8  # all in set 0
            if rng.random() < 0.5:
                got = lvl.lookup(vpn)
                if vpn in oracle:
                    oracle.remove(vpn)
                    oracle.append(vpn)
                    assert got is not None
                else:
                    assert got is None
            else:
                evicted = lvl.install(vpn, vpn)
                if vpn in oracle:
                    oracle.remove(vpn)
                    assert evicted is None
                elif len(oracle) == 8:
                    lru = oracle.pop(0)
                    assert evicted == (lru, lru)
                else:
                    assert evicted is None
                oracle.append(vpn)


def test_walk_cost():
    assert walk_cost(4, 43) == 172
    assert walk_cost(3, 62) == 186


class TestSplitTlb:
    def setup_method(self):
        self.cfg = default_config()

    def test_empty_lookup_latency(self):
        tlb = SplitTlb(self.cfg)
        p4, p2, lat = tlb.lookup(0x1000, tid=0)
        assert p4 is None and p2 is None
        assert lat == 1 + 8  # L1 then L2, both miss, pipes run in parallel

    def test_l1_hit_latency_still_bounded_by_other_pipe(self):
        tlb = SplitTlb(self.cfg)
        tlb.fill(PageSize.SUPER_2M, 0, ("payload"), tid=0)
        p4, p2, lat = tlb.lookup(0x1000, tid=0)
        assert p2 == "payload" and p4 is None
        assert lat == 9  # 4 KB pipe still misses through its L2

    def test_single_pipe_latency(self):
        tlb = SplitTlb(self.cfg, use_4k=False)
        tlb.fill(PageSize.SUPER_2M, 0, "s", tid=0)
        _, p2, lat = tlb.lookup(0x1000, tid=0)
        assert p2 == "s" and lat == 1

    def test_l2_hit_refills_l1(self):
        tlb = SplitTlb(self.cfg, use_2m=False)
        vpn = 0x77
        tlb.l2_4k.install(vpn, "from-l2")
        p4, _, lat = tlb.lookup(vpn << 12, tid=0)
        assert p4 == "from-l2" and lat == 9
        p4, _, lat = tlb.lookup(vpn << 12, tid=0)
        assert p4 == "from-l2" and lat == 1  # now in the core's L1

    def test_fill_is_per_core(self):
        tlb = SplitTlb(self.cfg)
        tlb.fill(PageSize.SMALL_4K, 5, "x", tid=0)
        assert tlb.l1_4k[0].contains(5)
        assert not tlb.l1_4k[1].contains(5)
        assert tlb.l2_4k.contains(5)

    def test_shootdown_full_vs_local(self):
        tlb = SplitTlb(self.cfg)
        tlb.fill(PageSize.SMALL_4K, 5, "x", tid=3)
        assert tlb.shootdown_4k(5) == self.cfg.tlb.shootdown_cycles
        assert not tlb.l2_4k.contains(5)
        # absent entry only pays the local invalidate
        assert tlb.shootdown_4k(5) == self.cfg.tlb.shootdown_local_cycles
        assert tlb.shootdowns_full == 1 and tlb.shootdowns_local == 1

    def test_shootdown_unused_pipe_is_free(self):
        tlb = SplitTlb(self.cfg, use_2m=False)
        assert tlb.shootdown_2m(0) == 0

    def test_pipe_counters_and_report_keys(self):
        tlb = SplitTlb(self.cfg)
        tlb.lookup(0, 0)
        tlb.fill(PageSize.SMALL_4K, 0, "x", 0)
        tlb.lookup(0, 0)
        assert tlb.pipe_4k_lookups == 2 and tlb.pipe_4k_hits == 1
        c = tlb.counters()
        assert set(c) == {"l1_4k", "l2_4k", "l1_2m", "l2_2m"}
        assert c["l1_4k"] == (1, 1)

    def test_unused_pipe_counters_zero(self):
        tlb = SplitTlb(self.cfg, use_4k=False)
        tlb.lookup(0, 0)
        assert tlb.counters()["l1_4k"] == (0, 0)
        assert tlb.pipe_4k_lookups == 0 and tlb.pipe_2m_lookups == 1
