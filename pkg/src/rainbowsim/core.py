"""Address arithmetic, trace records, and simulator configuration.

Virtual addresses are 48-bit canonical.  NVM is managed in 2 MB superpages,
each holding 512 small pages of 4 KB: bits [47:21] select the superpage,
bits [20:12] the small page within it, bits [11:0] the byte offset.
"""

import math
from dataclasses import dataclass, field, fields
from enum import IntEnum
from fractions import Fraction
from typing import NamedTuple

SMALL_PAGE_BYTES = 4096
SUPERPAGE_BYTES = 2 * 1024 * 1024
PAGES_PER_SUPERPAGE = 512
ADDR_BITS = 48

IDX_MASK = PAGES_PER_SUPERPAGE - 1
OFFSET_MASK = SMALL_PAGE_BYTES - 1

READ = 0
WRITE = 1


class Device(IntEnum):
    DRAM = 0
    NVM = 1


class PageSize(IntEnum):
    SMALL_4K = 0
    SUPER_2M = 1


class TraceRecord(NamedTuple):
    """One memory reference: op is READ or WRITE, vaddr a 48-bit address."""

    op: int
    vaddr: int
    tid: int = 0


class PhysicalLocation(NamedTuple):
    device: Device
    frame: int
    page_size: PageSize


def split_address(vaddr: int):
    """Decompose vaddr into (superpage number, small-page index, byte offset)."""
    return vaddr >> 21, (vaddr >> 12) & IDX_MASK, vaddr & OFFSET_MASK


def join_address(vsn: int, idx: int, offset: int) -> int:
    return (vsn << 21) | (idx << 12) | offset


def ns_to_cycles(ns, freq_ghz) -> int:
    """Convert a nanosecond latency to whole cycles, rounding half up.

    Uses exact rational arithmetic so results do not depend on float
    summation order.  All device latencies are converted once, at config
    load; downstream cost arithmetic stays integral.
    """
    if ns < 0:
        raise ValueError(f"negative latency: {ns}")
    return math.floor(Fraction(ns) * Fraction(freq_ghz) + Fraction(1, 2))


class ConfigError(ValueError):
    """Raised for malformed config files and out-of-range values."""


@dataclass
class CpuConfig:
    freq_ghz: float = 3.2
    cores: int = 8


@dataclass
class TlbConfig:
    # per-core L1, one instance per page size
    l1_entries: int = 32
    l1_ways: int = 4
    l1_latency_cycles: int = 1
    # shared L2, one instance per page size
    l2_entries: int = 512
    l2_ways: int = 8
    l2_latency_cycles: int = 8
    # full shootdown (entry resident somewhere) vs. local invalidate
    shootdown_cycles: int = 4000
    shootdown_local_cycles: int = 40


@dataclass
class LlcConfig:
    size_bytes: int = 8 * 1024 * 1024  # 0 disables the filter entirely
    ways: int = 16
    line_bytes: int = 64
    latency_cycles: int = 34


@dataclass
class DramConfig:
    capacity_bytes: int = 4 * 1024 * 1024 * 1024
    read_ns: float = 13.5
    write_ns: float = 28.5
    banks: int = 32
    rows: int = 32768
    cols: int = 64
    voltage: float = 1.5
    # operation currents in mA; background currents cover the reference
    # capacity above and are scaled linearly for larger configurations
    standby_ma: float = 77.0
    refresh_ma: float = 160.0
    precharge_ma: float = 37.0
    read_hit_ma: float = 120.0
    write_hit_ma: float = 125.0
    read_miss_ma: float = 237.0
    write_miss_ma: float = 242.0


@dataclass
class NvmConfig:
    capacity_bytes: int = 32 * 1024 * 1024 * 1024
    read_ns: float = 19.5
    write_ns: float = 171.0
    banks: int = 256  # 4 channels x 8 ranks x 8 banks
    rows: int = 65536
    cols: int = 32
    rb_hit_pj_per_bit: float = 1.616
    read_miss_pj_per_bit: float = 81.2
    write_miss_pj_per_bit: float = 1684.8


@dataclass
class BitmapCacheConfig:
    entries: int = 4000
    ways: int = 8
    latency_cycles: int = 9


@dataclass
class MonitorConfig:
    interval_cycles: int = 100_000_000
    top_n: int = 100
    write_weight: int = 4


@dataclass
class MigrationConfig:
    bandwidth_gbps: float = 10.7  # 1 GB/s = 1e9 bytes/s
    clflush_cycles: int = 512     # flat per-4KB-page cache flush charge
    threshold_initial: int = 0
    threshold_max: int = 1_000_000
    traffic_high_fraction: float = 0.25
    traffic_low_fraction: float = 0.05
    # 0 means derive from bandwidth and device latencies
    t_mig_cycles: int = 0
    t_writeback_cycles: int = 0


_SECTION_NAMES = ("cpu", "tlb", "llc", "dram", "nvm", "bitmap_cache",
                  "monitor", "migration")


@dataclass
class SimConfig:
    """All simulator parameters, defaulting to the reference machine."""

    cpu: CpuConfig = field(default_factory=CpuConfig)
    tlb: TlbConfig = field(default_factory=TlbConfig)
    llc: LlcConfig = field(default_factory=LlcConfig)
    dram: DramConfig = field(default_factory=DramConfig)
    nvm: NvmConfig = field(default_factory=NvmConfig)
    bitmap_cache: BitmapCacheConfig = field(default_factory=BitmapCacheConfig)
    monitor: MonitorConfig = field(default_factory=MonitorConfig)
    migration: MigrationConfig = field(default_factory=MigrationConfig)

    # device latencies in cycles, fixed once by finalize()
    t_dr: int = field(init=False, default=0)
    t_dw: int = field(init=False, default=0)
    t_nr: int = field(init=False, default=0)
    t_nw: int = field(init=False, default=0)
    t_mig: int = field(init=False, default=0)
    t_writeback: int = field(init=False, default=0)

    def finalize(self):
        """Validate fields and freeze derived integer-cycle latencies."""
        self.validate()
        f = self.cpu.freq_ghz
        self.t_dr = ns_to_cycles(self.dram.read_ns, f)
        self.t_dw = ns_to_cycles(self.dram.write_ns, f)
        self.t_nr = ns_to_cycles(self.nvm.read_ns, f)
        self.t_nw = ns_to_cycles(self.nvm.write_ns, f)
        transfer = ns_to_cycles(
            Fraction(SMALL_PAGE_BYTES) / Fraction(self.migration.bandwidth_gbps), f)
        self.t_mig = self.migration.t_mig_cycles or (transfer + self.t_nr + self.t_dw)
        self.t_writeback = self.migration.t_writeback_cycles or (
            transfer + self.t_dr + self.t_nw)
        return self

    def validate(self):
        err = []

        def positive(section, name, allow_zero=False):
            v = getattr(getattr(self, section), name)
            if v < 0 or (v == 0 and not allow_zero):
                err.append(f"{section}.{name} must be positive (got {v})")
            return v

        positive("cpu", "freq_ghz")
        positive("cpu", "cores")
        for lvl in ("l1", "l2"):
            e = positive("tlb", f"{lvl}_entries")
            w = positive("tlb", f"{lvl}_ways")
            if w and e % w:
                err.append(f"tlb.{lvl}_entries ({e}) not a multiple of tlb.{lvl}_ways ({w})")
            positive("tlb", f"{lvl}_latency_cycles")
        positive("tlb", "shootdown_cycles", allow_zero=True)
        positive("tlb", "shootdown_local_cycles", allow_zero=True)

        positive("llc", "size_bytes", allow_zero=True)
        positive("llc", "latency_cycles")
        line = positive("llc", "line_bytes")
        ways = positive("llc", "ways")
        if self.llc.size_bytes and line and ways:
            if self.llc.size_bytes % (line * ways):
                err.append("llc.size_bytes not a multiple of llc.ways * llc.line_bytes")

        for dev in ("dram", "nvm"):
            positive(dev, "read_ns")
            positive(dev, "write_ns")
            positive(dev, "banks")
            positive(dev, "rows")
            positive(dev, "cols")
            cap = positive(dev, "capacity_bytes")
            if cap % SUPERPAGE_BYTES:
                err.append(f"{dev}.capacity_bytes not a multiple of {SUPERPAGE_BYTES}")
        if self.nvm.write_ns < self.nvm.read_ns:
            err.append("nvm.write_ns must be >= nvm.read_ns")

        e = positive("bitmap_cache", "entries")
        w = positive("bitmap_cache", "ways")
        if w and e % w:
            err.append("bitmap_cache.entries not a multiple of bitmap_cache.ways")
        positive("bitmap_cache", "latency_cycles")

        if self.monitor.interval_cycles < 100_000:
            err.append(f"monitor.interval_cycles must be >= 100000 "
                       f"(got {self.monitor.interval_cycles})")
        positive("monitor", "top_n", allow_zero=True)
        positive("monitor", "write_weight")

        positive("migration", "bandwidth_gbps")
        positive("migration", "clflush_cycles", allow_zero=True)
        positive("migration", "threshold_initial", allow_zero=True)
        if self.migration.threshold_max < self.migration.threshold_initial:
            err.append("migration.threshold_max below migration.threshold_initial")
        lo, hi = self.migration.traffic_low_fraction, self.migration.traffic_high_fraction
        if not (0.0 <= lo <= hi <= 1.0):
            err.append(f"migration traffic watermarks must satisfy "
                       f"0 <= low ({lo}) <= high ({hi}) <= 1")
        positive("migration", "t_mig_cycles", allow_zero=True)
        positive("migration", "t_writeback_cycles", allow_zero=True)

        if err:
            raise ConfigError("; ".join(err))


def _convert(section_name, field_name, current, raw):
    raw = raw.strip()
    try:
        if isinstance(current, float):
            return float(raw)
        # int fields also accept scientific notation ("1e8") when integral
        try:
            return int(raw)
        except ValueError:
            v = float(raw)
            if not v.is_integer():
                raise
            return int(v)
    except ValueError:
        raise ConfigError(
            f"bad value for {section_name}.{field_name}: {raw!r}") from None


def apply_setting(cfg: SimConfig, key: str, raw: str):
    """Apply one 'section.field = value' setting; unknown keys are fatal."""
    section_name, dot, field_name = key.partition(".")
    if not dot or section_name not in _SECTION_NAMES:
        raise ConfigError(f"unknown config key: {key!r}")
    section = getattr(cfg, section_name)
    if field_name not in {f.name for f in fields(section)}:
        raise ConfigError(f"unknown config key: {key!r}")
    current = getattr(section, field_name)
    setattr(section, field_name, _convert(section_name, field_name, current, raw))


def default_config() -> SimConfig:
    return SimConfig().finalize()


def load_config(path) -> SimConfig:
    """Parse a 'section.key = value' file; absent keys keep their defaults."""
    cfg = SimConfig()
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            body = line.split("#", 1)[0].strip()
            if not body:
                continue
            key, eq, raw = body.partition("=")
            if not eq:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {body!r}")
            try:
                apply_setting(cfg, key.strip(), raw)
            except ConfigError as exc:
                raise ConfigError(f"{path}:{lineno}: {exc}") from None
    return cfg.finalize()
