"""Trace-driven simulator for hybrid DRAM/NVM memory systems.

NVM is managed purely in 2 MB superpages while DRAM acts as a 4 KB hot-page
cache; alternative management policies run over the same traces for
comparison of timing, translation overhead, migration traffic, and energy.
"""

from .core import (
    ADDR_BITS,
    ConfigError,
    Device,
    PageSize,
    PhysicalLocation,
    READ,
    SMALL_PAGE_BYTES,
    SUPERPAGE_BYTES,
    PAGES_PER_SUPERPAGE,
    SimConfig,
    TraceRecord,
    WRITE,
    apply_setting,
    default_config,
    join_address,
    load_config,
    ns_to_cycles,
    split_address,
)
from .dramcache import CostModel, DramCache
from .engine import Engine, LlcFilter, SimReport, analytical_dram_addressing_cost
from .migmap import BitmapCache, MigrationBitmap, MigrationMap, storage_accounting
from .monitor import AccessMonitor, FineGrainTable, HotPage, SuperpageCounters
from .policies import POLICY_NAMES, PolicyModel, build_policy
from .tlb import SplitTlb, TlbLevel, walk_cost
from .workload import (
    BUCKETS,
    GeneratorSpec,
    TraceFormatError,
    generate,
    interleave,
    read_trace,
    write_trace,
)

__version__ = "0.1.0"

__all__ = [
    "ADDR_BITS",
    "AccessMonitor",
    "BUCKETS",
    "BitmapCache",
    "ConfigError",
    "CostModel",
    "Device",
    "DramCache",
    "Engine",
    "FineGrainTable",
    "GeneratorSpec",
    "HotPage",
    "LlcFilter",
    "MigrationBitmap",
    "MigrationMap",
    "PAGES_PER_SUPERPAGE",
    "POLICY_NAMES",
    "PageSize",
    "PhysicalLocation",
    "PolicyModel",
    "READ",
    "SMALL_PAGE_BYTES",
    "SUPERPAGE_BYTES",
    "SimConfig",
    "SimReport",
    "SplitTlb",
    "SuperpageCounters",
    "TlbLevel",
    "TraceFormatError",
    "TraceRecord",
    "WRITE",
    "analytical_dram_addressing_cost",
    "apply_setting",
    "build_policy",
    "default_config",
    "generate",
    "interleave",
    "join_address",
    "load_config",
    "ns_to_cycles",
    "read_trace",
    "split_address",
    "storage_accounting",
    "walk_cost",
    "write_trace",
]
