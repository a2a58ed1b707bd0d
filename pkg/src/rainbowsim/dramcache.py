"""DRAM page-cache bookkeeping and migration economics.

DRAM frames move between a free list, a clean list, and a dirty list (FIFO
within each).  Migration targets take a free frame when one exists and
otherwise evict, preferring clean victims.  The cost model prices a
candidate from its interval access counts: cycles saved by the latency gap
minus the transfer, and for a forced swap, minus the victim's lost benefit
and its writeback.
"""

from collections import deque
from typing import NamedTuple


class CostModel:
    """Integer-cycle migration economics with a dynamic benefit threshold."""

    def __init__(self, t_nr, t_nw, t_dr, t_dw, t_mig, t_writeback,
                 threshold_initial=0, threshold_max=1_000_000):
        if t_nr <= t_dr or t_nw <= t_dw:
            raise ValueError(
                "migration cannot pay off: NVM latencies must exceed DRAM's "
                f"(t_nr={t_nr} t_dr={t_dr} t_nw={t_nw} t_dw={t_dw})")
        self.t_nr = t_nr
        self.t_nw = t_nw
        self.t_dr = t_dr
        self.t_dw = t_dw
        self.t_mig = t_mig
        self.t_writeback = t_writeback
        self.threshold_initial = threshold_initial
        self.threshold_max = threshold_max
        self.threshold = threshold_initial

    @classmethod
    def from_config(cls, cfg, scale=1):
        """Build from a finalized SimConfig; scale multiplies the transfer
        costs for policies that move whole superpages."""
        m = cfg.migration
        return cls(cfg.t_nr, cfg.t_nw, cfg.t_dr, cfg.t_dw,
                   cfg.t_mig * scale, cfg.t_writeback * scale,
                   m.threshold_initial, m.threshold_max)

    def benefit(self, reads, writes) -> int:
        """Cycles saved by serving the page from DRAM, minus the move itself."""
        return ((self.t_nr - self.t_dr) * reads
                + (self.t_nw - self.t_dw) * writes
                - self.t_mig)

    def swap_benefit(self, in_reads, in_writes, out_reads, out_writes) -> int:
        """Net benefit when caching one page forces another page out."""
        return ((self.t_nr - self.t_dr) * (in_reads - out_reads)
                + (self.t_nw - self.t_dw) * (in_writes - out_writes)
                - self.t_mig - self.t_writeback)

    def adjust_threshold(self, window_traffic_bytes, dram_capacity_bytes,
                         high_fraction, low_fraction) -> int:
        """Double under heavy swap traffic, decay toward initial when calm."""
        if window_traffic_bytes > high_fraction * dram_capacity_bytes:
            # a zero threshold cannot double; seed it with the full swap cost
            grown = self.threshold * 2 if self.threshold else (
                self.t_mig + self.t_writeback)
            self.threshold = min(self.threshold_max, grown)
        elif window_traffic_bytes < low_fraction * dram_capacity_bytes:
            self.threshold = max(self.threshold_initial, self.threshold // 2)
        return self.threshold


class Victim(NamedTuple):
    frame: int
    key: tuple
    dirty: bool
    reads: int
    writes: int


class MigrationResult(NamedTuple):
    frame: int
    cycles: int
    evicted_frame: int          # -1 when no eviction happened
    evicted_key: tuple | None
    evicted_dirty: bool


class DramCache:
    """Frame lists, the page remap table, and the migration executor.

    Keys are policy-defined page identities, e.g. (psn, idx) for 4 KB pages
    or (psn,) for whole superpages.  Cross-subsystem effects are injected as
    callbacks so this module carries no TLB or bitmap dependencies:

      shootdown_fn(key) -> cycles     charged when an eviction drops a mapping
      bitmap_set_fn(key)              mark the page migrated
      bitmap_clear_fn(key)            mark it NVM-resident again
      frame_invalidate_fn(frame, key) flush the frame's cache lines
    """

    def __init__(self, frame_count, page_bytes, model: CostModel,
                 clflush_cycles, shootdown_fn=None, bitmap_set_fn=None,
                 bitmap_clear_fn=None, frame_invalidate_fn=None):
        self.frame_count = frame_count
        self.page_bytes = page_bytes
        self.model = model
        self.clflush_cycles = clflush_cycles
        self.shootdown_fn = shootdown_fn
        self.bitmap_set_fn = bitmap_set_fn
        self.bitmap_clear_fn = bitmap_clear_fn
        self.frame_invalidate_fn = frame_invalidate_fn

        self._fresh = 0            # next never-used frame number
        self._recycled = deque()
        self.clean = {}            # frame -> None, FIFO order
        self.dirty = {}
        self.forward = {}          # frame -> key
        self.inverse = {}          # key -> frame
        self.tally = {}            # frame -> [reads, writes] this interval

        self.pages_migrated = 0
        self.clean_evictions = 0
        self.dirty_evictions = 0
        self.traffic_bytes = 0
        self.window_traffic_bytes = 0

    def free_frames(self) -> int:
        return self.frame_count - self._fresh + len(self._recycled)

    def frame_of(self, key):
        return self.inverse.get(key)

    def key_of(self, frame):
        return self.forward.get(frame)

    def is_dirty(self, frame) -> bool:
        return frame in self.dirty

    def note_access(self, frame, is_write):
        t = self.tally.get(frame)
        if t is None:
            self.tally[frame] = t = [0, 0]
        t[1 if is_write else 0] += 1

    def mark_dirty(self, frame):
        if frame in self.clean:
            del self.clean[frame]
            self.dirty[frame] = None

    def reset_interval_tallies(self):
        self.tally = {}

    def peek_victim(self):
        """The frame the next migration would evict; None while frames remain."""
        if self.free_frames() > 0:
            return None
        if self.clean:
            frame, dirty = next(iter(self.clean)), False
        elif self.dirty:
            frame, dirty = next(iter(self.dirty)), True
        else:
            return None
        t = self.tally.get(frame, (0, 0))
        return Victim(frame, self.forward[frame], dirty, t[0], t[1])

    def migrate_page(self, key) -> MigrationResult:
        """Bring one NVM page into DRAM, evicting first when full."""
        if self.frame_count == 0:
            raise RuntimeError("no DRAM frames configured")
        if key in self.inverse:
            raise ValueError(f"page already cached: {key!r}")
        cycles = 0
        evicted_frame, evicted_key, evicted_dirty = -1, None, False
        if self.free_frames() == 0:
            victim = self.peek_victim()
            evicted_frame, evicted_key, evicted_dirty = (
                victim.frame, victim.key, victim.dirty)
            cycles += self.evict_page(victim.frame)
        frame = self._take_frame()
        self.forward[frame] = key
        self.inverse[key] = frame
        self.clean[frame] = None  # freshly copied, identical to the NVM copy
        cycles += self.model.t_mig + self.clflush_cycles
        self.traffic_bytes += self.page_bytes
        self.window_traffic_bytes += self.page_bytes
        self.pages_migrated += 1
        if self.bitmap_set_fn is not None:
            self.bitmap_set_fn(key)
        return MigrationResult(frame, cycles, evicted_frame, evicted_key,
                               evicted_dirty)

    def evict_page(self, frame) -> int:
        """Return one occupied frame to the free list; returns cycles charged.

        A dirty victim pays the full page writeback; a clean one only
        restores the 8-byte redirect in the NVM copy (one write).  Both drop
        the victim's translation, so the shootdown charge always applies.
        """
        key = self.forward.pop(frame, None)
        if key is None:
            raise ValueError(f"frame not occupied: {frame}")
        del self.inverse[key]
        if frame in self.dirty:
            del self.dirty[frame]
            cycles = self.model.t_writeback
            self.traffic_bytes += self.page_bytes
            self.window_traffic_bytes += self.page_bytes
            self.dirty_evictions += 1
        else:
            del self.clean[frame]
            cycles = self.model.t_nw
            self.clean_evictions += 1
        if self.bitmap_clear_fn is not None:
            self.bitmap_clear_fn(key)
        if self.frame_invalidate_fn is not None:
            self.frame_invalidate_fn(frame, key)
        if self.shootdown_fn is not None:
            cycles += self.shootdown_fn(key)
        self.tally.pop(frame, None)
        self._recycled.append(frame)
        return cycles

    def _take_frame(self):
        if self._recycled:
            return self._recycled.popleft()
        frame = self._fresh
        self._fresh += 1
        return frame

    def list_sizes(self):
        """(free, clean, dirty) sizes; they always partition the frames."""
        return self.free_frames(), len(self.clean), len(self.dirty)
