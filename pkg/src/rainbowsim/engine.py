"""Per-reference simulation pipeline.

Every reference is translated first (split TLBs, then walks, bitmap probes
and redirect reads as the policy requires), because the physical address is
needed before the cache hierarchy can be probed.  The LLC then filters the
data access: a hit charges only LLC latency on top of translation, a miss
charges the device access and feeds the hot-page monitor.  Interval
boundaries on the simulated clock drive monitoring phases and migrations.
"""

import json
from dataclasses import dataclass, asdict, fields

from .core import Device, PageSize, WRITE, SMALL_PAGE_BYTES
from .dramcache import CostModel, DramCache
from .migmap import MigrationMap
from .monitor import AccessMonitor
from .tlb import SplitTlb

_DRAM = Device.DRAM
_NVM = Device.NVM
_SMALL = PageSize.SMALL_4K
_SUPER = PageSize.SUPER_2M
_DEV_TAG_SHIFT = 40  # device id above any line address


def analytical_dram_addressing_cost(r_hit, t_nr, t_dr):
    """Expected cycles to address a DRAM-cached page after a 4 KB TLB miss.

    With superpage hit rate r_hit the redirect costs one NVM read; a
    superpage miss adds the three-level walk first.  Returned alongside the
    conventional four-level walk cost for comparison.  Exact for Fraction
    inputs.
    """
    redirect = r_hit * t_nr + (1 - r_hit) * (4 * t_nr)
    return redirect, 4 * t_dr


class LlcFilter:
    """Last-level cache directory deciding which references reach memory."""

    def __init__(self, size_bytes, ways, line_bytes, latency_cycles):
        self.nsets = size_bytes // line_bytes // ways
        self.ways = ways
        self.latency = latency_cycles
        self.sets = [dict() for _ in range(self.nsets)]
        self.hits = 0
        self.misses = 0

    def access(self, line_addr) -> bool:
        s = self.sets[line_addr % self.nsets]
        if line_addr in s:
            del s[line_addr]
            s[line_addr] = None
            self.hits += 1
            return True
        self.misses += 1
        s[line_addr] = None
        if len(s) > self.ways:
            del s[next(iter(s))]
        return False

    def invalidate(self, line_addr):
        self.sets[line_addr % self.nsets].pop(line_addr, None)


class RowBufferEnergy:
    """One open row per bank; hit/miss picks the per-access energy."""

    def __init__(self, banks, row_bytes, read_hit_pj, read_miss_pj,
                 write_hit_pj, write_miss_pj):
        self.banks = banks
        self.row_bytes = row_bytes
        self.pj = (read_hit_pj, read_miss_pj, write_hit_pj, write_miss_pj)
        self.open_rows = {}

    def access(self, byte_addr, is_write):
        row = byte_addr // self.row_bytes
        bank = row % self.banks
        hit = self.open_rows.get(bank) == row
        if not hit:
            self.open_rows[bank] = row
        return self.pj[2 * is_write + (not hit)], hit


@dataclass
class SimReport:
    """Flat per-run metrics; field order is the CSV schema."""

    policy: str = ""
    label: str = ""
    seed: int = 0
    refs: int = 0
    total_cycles: int = 0
    cycles_per_kref: float = 0.0
    intervals_completed: int = 0
    l1_4k_hits: int = 0
    l1_4k_misses: int = 0
    l2_4k_hits: int = 0
    l2_4k_misses: int = 0
    l1_2m_hits: int = 0
    l1_2m_misses: int = 0
    l2_2m_hits: int = 0
    l2_2m_misses: int = 0
    pipe_4k_hits: int = 0
    pipe_4k_lookups: int = 0
    pipe_2m_hits: int = 0
    pipe_2m_lookups: int = 0
    r_hit: float = 0.0
    case_4k_hit: int = 0
    case_2m_hit: int = 0
    case_full_miss: int = 0
    walk4_count: int = 0
    sptw_count: int = 0
    tlb_mpkr: float = 0.0
    split_tlb_cycles: int = 0
    sptw_cycles: int = 0
    walk4_cycles: int = 0
    bitmap_hit_cycles: int = 0
    bitmap_miss_cycles: int = 0
    remap_cycles: int = 0
    translation_cycles: int = 0
    bitmap_hits: int = 0
    bitmap_misses: int = 0
    remap_events: int = 0
    remap_addressing_cycles: int = 0
    llc_hits: int = 0
    llc_misses: int = 0
    llc_cycles: int = 0
    dram_reads: int = 0
    dram_writes: int = 0
    nvm_reads: int = 0
    nvm_writes: int = 0
    device_cycles: int = 0
    pages_migrated: int = 0
    evictions_clean: int = 0
    evictions_dirty: int = 0
    migration_traffic_bytes: int = 0
    migration_overhead_cycles: int = 0
    shootdowns_full: int = 0
    shootdowns_local: int = 0
    threshold_final: int = 0
    monitor_tables_bytes_peak: int = 0
    dram_read_hit_pj: float = 0.0
    dram_read_miss_pj: float = 0.0
    dram_write_hit_pj: float = 0.0
    dram_write_miss_pj: float = 0.0
    nvm_read_hit_pj: float = 0.0
    nvm_read_miss_pj: float = 0.0
    nvm_write_hit_pj: float = 0.0
    nvm_write_miss_pj: float = 0.0
    dram_background_pj: float = 0.0
    energy_total_pj: float = 0.0

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2)

    def csv_row(self):
        return [getattr(self, f) for f in self.csv_fields()]

    @classmethod
    def csv_fields(cls):
        return tuple(f.name for f in fields(cls))


class CapacityError(RuntimeError):
    """A trace touched more memory than the policy's devices provide."""


class Engine:
    """One policy run over one reference stream."""

    def __init__(self, cfg, policy, seed=0):
        self.cfg = cfg
        self.policy = policy
        self.seed = seed

        self.tlb = SplitTlb(cfg, use_4k=policy.use_4k_tlb,
                            use_2m=policy.use_2m_tlb)
        self.llc = (LlcFilter(cfg.llc.size_bytes, cfg.llc.ways,
                              cfg.llc.line_bytes, cfg.llc.latency_cycles)
                    if cfg.llc.size_bytes else None)
        self.migmap = (MigrationMap(cfg.bitmap_cache.entries,
                                    cfg.bitmap_cache.ways,
                                    cfg.bitmap_cache.latency_cycles,
                                    backing_read_cycles=cfg.t_nr)
                       if policy.remap else None)

        if policy.migration != "none":
            self.model = CostModel.from_config(cfg, scale=policy.cost_scale)
            frames = policy.dram_capacity_bytes // policy.migration_page_bytes
            self.dram = DramCache(
                frames, policy.migration_page_bytes, self.model,
                cfg.migration.clflush_cycles * policy.cost_scale,
                shootdown_fn=self._shootdown_key,
                bitmap_set_fn=self._bitmap_set,
                bitmap_clear_fn=self._bitmap_clear,
                frame_invalidate_fn=self._frame_invalidate)
            self.monitor = AccessMonitor(cfg.monitor.top_n,
                                         cfg.monitor.write_weight,
                                         two_stage=policy.two_stage_monitor)
        else:
            self.model = None
            self.dram = None
            self.monitor = None

        # page-granting abstraction: superpages (and flat 4 KB pages) get
        # physical frames in first-touch order
        self._super_map = {}        # vsn -> superframe
        self._psn_to_vsn = {}
        self._next_super = 0
        self._super_device = _NVM if policy.nvm_capacity_bytes else _DRAM
        cap = policy.nvm_capacity_bytes or policy.dram_capacity_bytes
        self._super_capacity = cap // (1 << 21)
        self._small_map = {}        # flat-static: vpage -> (device, frame)
        self._next_small = {_DRAM: 0, _NVM: 0}
        self._small_capacity = {
            _DRAM: policy.dram_capacity_bytes // SMALL_PAGE_BYTES,
            _NVM: policy.nvm_capacity_bytes // SMALL_PAGE_BYTES,
        }

        self._table_read_4k = 0 if policy.table_device_4k is None else (
            cfg.t_dr if policy.table_device_4k == _DRAM else cfg.t_nr)
        self._table_read_2m = 0 if policy.table_device_2m is None else (
            cfg.t_dr if policy.table_device_2m == _DRAM else cfg.t_nr)
        self._mig_shift = policy.migration_page_bytes.bit_length() - 1

        d, n = cfg.dram, cfg.nvm
        line_bits = cfg.llc.line_bytes * 8
        self._dram_pj = (
            d.read_hit_ma * d.voltage * d.read_ns,
            (d.read_miss_ma + d.precharge_ma) * d.voltage * d.read_ns,
            d.write_hit_ma * d.voltage * d.write_ns,
            (d.write_miss_ma + d.precharge_ma) * d.voltage * d.write_ns,
        )
        self._nvm_pj = (
            n.rb_hit_pj_per_bit * line_bits,
            n.read_miss_pj_per_bit * line_bits,
            n.rb_hit_pj_per_bit * line_bits,
            n.write_miss_pj_per_bit * line_bits,
        )
        self.dram_rows = RowBufferEnergy(d.banks, d.cols * 8, *self._dram_pj)
        self.nvm_rows = RowBufferEnergy(n.banks, n.cols * 8, *self._nvm_pj)

        self.clock = 0
        self.refs = 0
        self.intervals_completed = 0
        self._next_boundary = cfg.monitor.interval_cycles

        self.split_tlb_cycles = 0
        self.sptw_cycles = 0
        self.walk4_cycles = 0
        self.bitmap_hit_cycles = 0
        self.bitmap_miss_cycles = 0
        self.remap_cycles = 0
        self.sptw_count = 0
        self.walk4_count = 0
        self.remap_events = 0
        self.remap_addressing_cycles = 0
        self.case_4k_hit = 0
        self.case_2m_hit = 0
        self.case_full_miss = 0
        self.llc_cycles = 0
        self.device_cycles = 0
        self.dram_reads = 0
        self.dram_writes = 0
        self.nvm_reads = 0
        self.nvm_writes = 0
        self.mig_overhead_cycles = 0
        # energy buckets in pJ: (device, op, row hit/miss)
        self.e_dram = [0.0, 0.0, 0.0, 0.0]  # read_hit, read_miss, write_hit, write_miss
        self.e_nvm = [0.0, 0.0, 0.0, 0.0]

    # ---- placement -------------------------------------------------------

    def _superframe(self, vsn):
        sf = self._super_map.get(vsn)
        if sf is None:
            sf = self._next_super
            if sf >= self._super_capacity:
                raise CapacityError(
                    f"out of {self._super_device.name} superpages "
                    f"({self._super_capacity}) under {self.policy.name}")
            self._next_super = sf + 1
            self._super_map[vsn] = sf
            self._psn_to_vsn[sf] = vsn
        return sf

    def _alloc_small(self, device):
        frame = self._next_small[device]
        if frame >= self._small_capacity[device]:
            raise CapacityError(
                f"out of {device.name} 4 KB frames under {self.policy.name}")
        self._next_small[device] = frame + 1
        return frame

    def _static_small_loc(self, vpage):
        loc = self._small_map.get(vpage)
        if loc is None:
            device = _DRAM if vpage % self.policy.static_dram_modulus == 0 else _NVM
            loc = (device, self._alloc_small(device))
            self._small_map[vpage] = loc
        return loc

    # ---- cross-subsystem hooks (DramCache callbacks) ---------------------

    def _bitmap_set(self, key):
        if self.migmap is not None:
            self.migmap.set_migrated(key[0], key[1])

    def _bitmap_clear(self, key):
        if self.migmap is not None:
            self.migmap.clear_migrated(key[0], key[1])

    def _shootdown_key(self, key):
        if len(key) == 1:
            vsn = self._psn_to_vsn.get(key[0])
            if vsn is None:
                return self.tlb.shootdown_local_cycles
            return self.tlb.shootdown_2m(vsn)
        psn, idx = key
        vsn = self._psn_to_vsn.get(psn)
        if vsn is None:
            return self.tlb.shootdown_local_cycles
        return self.tlb.shootdown_4k((vsn << 9) | idx)

    def _frame_invalidate(self, frame, key):
        self._invalidate_llc(_DRAM, frame << self._mig_shift,
                             self.policy.migration_page_bytes)

    def _invalidate_llc(self, device, base_byte, nbytes):
        if self.llc is None:
            return
        tag = device << _DEV_TAG_SHIFT
        inv = self.llc.invalidate
        for line in range(base_byte >> 6, (base_byte + nbytes) >> 6):
            inv(tag | line)

    # ---- energy ----------------------------------------------------------

    def _meta_read_energy(self, device, count):
        # metadata reads (walks, redirects, bitmap words) are scattered:
        # charge them at row-miss rates without touching row-buffer state
        if device == _DRAM:
            self.e_dram[1] += count * self._dram_pj[1]
        else:
            self.e_nvm[1] += count * self._nvm_pj[1]

    def _transfer_energy(self, src_rows, src_bucket, src_base,
                         dst_rows, dst_bucket, dst_base, nbytes):
        """Stream nbytes line-by-line: reads at src, writes at dst."""
        line = self.cfg.llc.line_bytes
        for off in range(0, nbytes, line):
            pj, hit = src_rows.access(src_base + off, False)
            src_bucket[0 if hit else 1] += pj
            pj, hit = dst_rows.access(dst_base + off, True)
            dst_bucket[2 if hit else 3] += pj

    # ---- migration execution ---------------------------------------------

    def _nvm_byte(self, key):
        if len(key) == 1:
            return key[0] << 21
        return (key[0] << 21) | (key[1] << 12)

    def _execute_migration(self, key) -> int:
        """Move one page into DRAM; returns all cycles charged."""
        result = self.dram.migrate_page(key)
        cycles = result.cycles
        if self.policy.migrate_in_shootdown:
            # the incoming page's old mapping is now stale
            cycles += self._shootdown_key(key)
        page_bytes = self.policy.migration_page_bytes
        src = self._nvm_byte(key)
        # clflush: the page's NVM-addressed lines leave the hierarchy
        self._invalidate_llc(_NVM, src, page_bytes)
        if result.evicted_key is not None:
            if result.evicted_dirty:
                self._transfer_energy(
                    self.dram_rows, self.e_dram,
                    result.evicted_frame << self._mig_shift,
                    self.nvm_rows, self.e_nvm,
                    self._nvm_byte(result.evicted_key), page_bytes)
            else:
                # clean eviction just restores the 8-byte redirect
                self.e_nvm[3] += 64 * self.cfg.nvm.write_miss_pj_per_bit
        self._transfer_energy(self.nvm_rows, self.e_nvm, src,
                              self.dram_rows, self.e_dram,
                              result.frame << self._mig_shift, page_bytes)
        return cycles

    def force_migrate(self, psn, idx=None) -> int:
        """Migrate one page outside the interval schedule (experiments/tests)."""
        cycles = self._execute_migration((psn,) if idx is None else (psn, idx))
        self.clock += cycles
        self.mig_overhead_cycles += cycles
        return cycles

    # ---- the per-reference pipeline --------------------------------------

    def step(self, record) -> int:
        op, vaddr, tid = record
        pol = self.policy
        cycles = 0

        p4, p2, tlat = self.tlb.lookup(vaddr, tid)
        cycles += tlat
        self.split_tlb_cycles += tlat

        walked = False
        if p4 is not None:
            self.case_4k_hit += 1
            device, frame = p4
            byte_addr = (frame << 12) | (vaddr & 0xFFF)
        elif pol.use_2m_tlb:
            vsn = vaddr >> 21
            if p2 is not None:
                self.case_2m_hit += 1
            else:
                self.case_full_miss += 1
                walked = True
                wc = 3 * self._table_read_2m
                cycles += wc
                self.sptw_cycles += wc
                self.sptw_count += 1
                self._meta_read_energy(pol.table_device_2m, 3)
                sf = self._superframe(vsn)
                if pol.migration == "super":
                    dframe = self.dram.frame_of((sf,))
                    p2 = ((_NVM, sf) if dframe is None else (_DRAM, dframe))
                else:
                    p2 = (self._super_device, sf)
                self.tlb.fill(_SUPER, vsn, p2, tid)
                if self.migmap is not None:
                    extra = self.migmap.fill_for_superpage_miss(p2[1])
                    if extra:
                        cycles += extra
                        self.bitmap_miss_cycles += extra
                        self._meta_read_energy(_NVM, 1)
            device, sframe = p2
            byte_addr = (sframe << 21) | (vaddr & 0x1FFFFF)
            if self.migmap is not None and device == _NVM:
                idx = (vaddr >> 12) & 0x1FF
                flag, blat, cache_hit = self.migmap.is_migrated(sframe, idx)
                cycles += blat
                if cache_hit:
                    self.bitmap_hit_cycles += blat
                else:
                    self.bitmap_miss_cycles += blat
                    self._meta_read_energy(_NVM, 1)
                if flag:
                    # read the in-page redirect, land in DRAM, and let the
                    # 4 KB TLB cache the small-page translation
                    rc = self.cfg.t_nr
                    cycles += rc
                    self.remap_cycles += rc
                    self.remap_events += 1
                    self.remap_addressing_cycles += rc + (
                        3 * self._table_read_2m if walked else 0)
                    self._meta_read_energy(_NVM, 1)
                    frame = self.dram.frame_of((sframe, idx))
                    self.tlb.fill(_SMALL, vaddr >> 12, (_DRAM, frame), tid)
                    device = _DRAM
                    byte_addr = (frame << 12) | (vaddr & 0xFFF)
        else:
            self.case_full_miss += 1
            wc = 4 * self._table_read_4k
            cycles += wc
            self.walk4_cycles += wc
            self.walk4_count += 1
            self._meta_read_energy(pol.table_device_4k, 4)
            vpage = vaddr >> 12
            if pol.migration == "small":
                # NVM keeps the superpage-contiguous layout; DRAM overrides it
                psn = self._superframe(vaddr >> 21)
                idx = vpage & 0x1FF
                dframe = self.dram.frame_of((psn, idx))
                loc = ((_NVM, (psn << 9) | idx) if dframe is None
                       else (_DRAM, dframe))
            else:
                loc = self._static_small_loc(vpage)
            self.tlb.fill(_SMALL, vpage, loc, tid)
            device, frame = loc
            byte_addr = (frame << 12) | (vaddr & 0xFFF)

        is_write = op == WRITE
        dram = self.dram
        track_dram = dram is not None and device == _DRAM
        if track_dram:
            mframe = byte_addr >> self._mig_shift
            if is_write:
                dram.mark_dirty(mframe)

        monitor = self.monitor
        if pol.count_pre_llc:
            if device == _NVM:
                monitor.record(byte_addr >> 21, (byte_addr >> 12) & 0x1FF,
                               is_write)
            elif track_dram:
                dram.note_access(mframe, is_write)

        hit = self.llc is not None and self.llc.access(
            (device << _DEV_TAG_SHIFT) | (byte_addr >> 6))
        if hit:
            cycles += self.llc.latency
            self.llc_cycles += self.llc.latency
        else:
            if self.llc is not None:
                cycles += self.llc.latency
                self.llc_cycles += self.llc.latency
            if device == _DRAM:
                dcyc = self.cfg.t_dw if is_write else self.cfg.t_dr
                pj, rb = self.dram_rows.access(byte_addr, is_write)
                self.e_dram[2 * is_write + (not rb)] += pj
                if is_write:
                    self.dram_writes += 1
                else:
                    self.dram_reads += 1
            else:
                dcyc = self.cfg.t_nw if is_write else self.cfg.t_nr
                pj, rb = self.nvm_rows.access(byte_addr, is_write)
                self.e_nvm[2 * is_write + (not rb)] += pj
                if is_write:
                    self.nvm_writes += 1
                else:
                    self.nvm_reads += 1
            cycles += dcyc
            self.device_cycles += dcyc
            if not pol.count_pre_llc and monitor is not None:
                if device == _NVM:
                    monitor.record(byte_addr >> 21, (byte_addr >> 12) & 0x1FF,
                                   is_write)
                elif track_dram:
                    dram.note_access(mframe, is_write)

        self.clock += cycles
        self.refs += 1
        return cycles

    # ---- interval schedule ------------------------------------------------

    def _on_boundary(self):
        self.intervals_completed += 1
        monitor = self.monitor
        if monitor is None:
            return
        decision_due = not monitor.two_stage or monitor.phase == 2
        candidates = monitor.end_interval(self.model.benefit,
                                          self.model.threshold)
        charged = 0
        if decision_due:
            dram = self.dram
            for hp in candidates:
                key = (hp.psn,) if hp.idx < 0 else (hp.psn, hp.idx)
                if key in dram.inverse:
                    continue
                victim = dram.peek_victim()
                if victim is not None and self.model.swap_benefit(
                        hp.reads, hp.writes,
                        victim.reads, victim.writes) <= self.model.threshold:
                    continue
                charged += self._execute_migration(key)
            self.model.adjust_threshold(
                dram.window_traffic_bytes, self.policy.dram_capacity_bytes,
                self.cfg.migration.traffic_high_fraction,
                self.cfg.migration.traffic_low_fraction)
            dram.window_traffic_bytes = 0
        self.dram.reset_interval_tallies()
        if charged:
            self.clock += charged
            self.mig_overhead_cycles += charged

    def run(self, records, label="") -> "SimReport":
        step = self.step
        interval = self.cfg.monitor.interval_cycles
        for rec in records:
            step(rec)
            while self.clock >= self._next_boundary:
                self._on_boundary()
                self._next_boundary += interval
        return self.report(label)

    # ---- reporting ---------------------------------------------------------

    def report(self, label="") -> SimReport:
        cfg = self.cfg
        tc = self.tlb.counters()
        translation = (self.split_tlb_cycles + self.sptw_cycles
                       + self.walk4_cycles + self.bitmap_hit_cycles
                       + self.bitmap_miss_cycles + self.remap_cycles)
        total = (translation + self.llc_cycles + self.device_cycles
                 + self.mig_overhead_cycles)
        if total != self.clock:
            raise RuntimeError(
                f"cycle accounting broken: clock={self.clock} buckets={total}")

        ns = self.clock / cfg.cpu.freq_ghz
        scale = self.policy.dram_capacity_bytes / cfg.dram.capacity_bytes
        background = ((cfg.dram.standby_ma + cfg.dram.refresh_ma)
                      * cfg.dram.voltage * ns * scale)
        energy_total = sum(self.e_dram) + sum(self.e_nvm) + background

        tlb = self.tlb
        krefs = self.refs / 1000.0
        mm = self.migmap
        dram = self.dram
        model = self.model
        return SimReport(
            policy=self.policy.name,
            label=label,
            seed=self.seed,
            refs=self.refs,
            total_cycles=self.clock,
            cycles_per_kref=self.clock / krefs if self.refs else 0.0,
            intervals_completed=self.intervals_completed,
            l1_4k_hits=tc["l1_4k"][0], l1_4k_misses=tc["l1_4k"][1],
            l2_4k_hits=tc["l2_4k"][0], l2_4k_misses=tc["l2_4k"][1],
            l1_2m_hits=tc["l1_2m"][0], l1_2m_misses=tc["l1_2m"][1],
            l2_2m_hits=tc["l2_2m"][0], l2_2m_misses=tc["l2_2m"][1],
            pipe_4k_hits=tlb.pipe_4k_hits,
            pipe_4k_lookups=tlb.pipe_4k_lookups,
            pipe_2m_hits=tlb.pipe_2m_hits,
            pipe_2m_lookups=tlb.pipe_2m_lookups,
            r_hit=(tlb.pipe_2m_hits / tlb.pipe_2m_lookups
                   if tlb.pipe_2m_lookups else 0.0),
            case_4k_hit=self.case_4k_hit,
            case_2m_hit=self.case_2m_hit,
            case_full_miss=self.case_full_miss,
            walk4_count=self.walk4_count,
            sptw_count=self.sptw_count,
            tlb_mpkr=((self.walk4_count + self.sptw_count) / krefs
                      if self.refs else 0.0),
            split_tlb_cycles=self.split_tlb_cycles,
            sptw_cycles=self.sptw_cycles,
            walk4_cycles=self.walk4_cycles,
            bitmap_hit_cycles=self.bitmap_hit_cycles,
            bitmap_miss_cycles=self.bitmap_miss_cycles,
            remap_cycles=self.remap_cycles,
            translation_cycles=translation,
            bitmap_hits=mm.cache.hits if mm else 0,
            bitmap_misses=mm.cache.misses if mm else 0,
            remap_events=self.remap_events,
            remap_addressing_cycles=self.remap_addressing_cycles,
            llc_hits=self.llc.hits if self.llc else 0,
            llc_misses=self.llc.misses if self.llc else 0,
            llc_cycles=self.llc_cycles,
            dram_reads=self.dram_reads,
            dram_writes=self.dram_writes,
            nvm_reads=self.nvm_reads,
            nvm_writes=self.nvm_writes,
            device_cycles=self.device_cycles,
            pages_migrated=dram.pages_migrated if dram else 0,
            evictions_clean=dram.clean_evictions if dram else 0,
            evictions_dirty=dram.dirty_evictions if dram else 0,
            migration_traffic_bytes=dram.traffic_bytes if dram else 0,
            migration_overhead_cycles=self.mig_overhead_cycles,
            shootdowns_full=tlb.shootdowns_full,
            shootdowns_local=tlb.shootdowns_local,
            threshold_final=model.threshold if model else 0,
            monitor_tables_bytes_peak=(self.monitor.tables_bytes_peak
                                       if self.monitor else 0),
            dram_read_hit_pj=self.e_dram[0],
            dram_read_miss_pj=self.e_dram[1],
            dram_write_hit_pj=self.e_dram[2],
            dram_write_miss_pj=self.e_dram[3],
            nvm_read_hit_pj=self.e_nvm[0],
            nvm_read_miss_pj=self.e_nvm[1],
            nvm_write_hit_pj=self.e_nvm[2],
            nvm_write_miss_pj=self.e_nvm[3],
            dram_background_pj=background,
            energy_total_pj=energy_total,
        )
