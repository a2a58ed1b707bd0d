"""The five memory-organization policies as engine parameterizations.

rainbow      superpage-only NVM, DRAM as a 4 KB hot-page cache reached
             through migration bitmaps and in-page redirects
flat-static  4 KB pages everywhere, fixed 1:8 DRAM:NVM interleave, no
             migration, four-level walks with tables in DRAM
hscc-4k      4 KB migration with the same monitor but no superpage TLB and
             TLB-level (pre-LLC) access counting
hscc-2m      whole-superpage migration: same economics scaled by 512, with
             superpage shootdowns
dram-only    everything in DRAM at 2 MB, the performance upper bound
"""

from dataclasses import dataclass

from .core import Device, SMALL_PAGE_BYTES, SUPERPAGE_BYTES, PAGES_PER_SUPERPAGE

POLICY_NAMES = ("rainbow", "flat-static", "hscc-4k", "hscc-2m", "dram-only")


@dataclass(frozen=True)
class PolicyModel:
    name: str
    use_4k_tlb: bool
    use_2m_tlb: bool
    remap: bool                        # migration bitmap + redirect machinery
    migration: str                     # "none" | "small" | "super"
    count_pre_llc: bool                # monitor sees refs before the LLC filter
    migrate_in_shootdown: bool         # migrating in changes the page mapping
    two_stage_monitor: bool
    table_device_4k: Device | None     # residence of 4-level page tables
    table_device_2m: Device | None     # residence of 3-level superpage tables
    static_dram_modulus: int | None    # flat placement: DRAM iff page % m == 0
    dram_capacity_bytes: int
    nvm_capacity_bytes: int
    migration_page_bytes: int
    cost_scale: int                    # transfer-cost multiplier (512 for 2 MB)


def build_policy(name: str, cfg) -> PolicyModel:
    if name == "rainbow":
        return PolicyModel(
            name=name, use_4k_tlb=True, use_2m_tlb=True, remap=True,
            migration="small", count_pre_llc=False, migrate_in_shootdown=False,
            two_stage_monitor=True, table_device_4k=None,
            table_device_2m=Device.NVM, static_dram_modulus=None,
            dram_capacity_bytes=cfg.dram.capacity_bytes,
            nvm_capacity_bytes=cfg.nvm.capacity_bytes,
            migration_page_bytes=SMALL_PAGE_BYTES, cost_scale=1)
    if name == "flat-static":
        return PolicyModel(
            name=name, use_4k_tlb=True, use_2m_tlb=False, remap=False,
            migration="none", count_pre_llc=False, migrate_in_shootdown=False,
            two_stage_monitor=True, table_device_4k=Device.DRAM,
            table_device_2m=None, static_dram_modulus=9,
            dram_capacity_bytes=cfg.dram.capacity_bytes,
            nvm_capacity_bytes=cfg.nvm.capacity_bytes,
            migration_page_bytes=SMALL_PAGE_BYTES, cost_scale=1)
    if name == "hscc-4k":
        return PolicyModel(
            name=name, use_4k_tlb=True, use_2m_tlb=False, remap=False,
            migration="small", count_pre_llc=True, migrate_in_shootdown=True,
            two_stage_monitor=True, table_device_4k=Device.DRAM,
            table_device_2m=None, static_dram_modulus=None,
            dram_capacity_bytes=cfg.dram.capacity_bytes,
            nvm_capacity_bytes=cfg.nvm.capacity_bytes,
            migration_page_bytes=SMALL_PAGE_BYTES, cost_scale=1)
    if name == "hscc-2m":
        return PolicyModel(
            name=name, use_4k_tlb=False, use_2m_tlb=True, remap=False,
            migration="super", count_pre_llc=True, migrate_in_shootdown=True,
            two_stage_monitor=False, table_device_4k=None,
            table_device_2m=Device.NVM, static_dram_modulus=None,
            dram_capacity_bytes=cfg.dram.capacity_bytes,
            nvm_capacity_bytes=cfg.nvm.capacity_bytes,
            migration_page_bytes=SUPERPAGE_BYTES,
            cost_scale=PAGES_PER_SUPERPAGE)
    if name == "dram-only":
        # the all-DRAM bound gets DRAM sized like the hybrid's NVM
        return PolicyModel(
            name=name, use_4k_tlb=False, use_2m_tlb=True, remap=False,
            migration="none", count_pre_llc=False, migrate_in_shootdown=False,
            two_stage_monitor=True, table_device_4k=None,
            table_device_2m=Device.DRAM, static_dram_modulus=None,
            dram_capacity_bytes=cfg.nvm.capacity_bytes,
            nvm_capacity_bytes=0,
            migration_page_bytes=SUPERPAGE_BYTES, cost_scale=1)
    raise ValueError(f"unknown policy {name!r}; expected one of {POLICY_NAMES}")
