"""Two-stage hot-page identification.

Stage 1 keeps a cheap 2-byte saturating counter per superpage and, at the
end of its interval, nominates the top-N superpages.  Stage 2 then counts
individual 4 KB pages inside the nominated superpages with 15-bit counters
plus an overflow bit; an overflowed page is hot unconditionally.  The two
stages run in alternating intervals, so migration candidates emerge at the
end of every stage-2 interval.
"""

from typing import NamedTuple

STAGE1_COUNTER_MAX = 0xFFFF   # two bytes per superpage
STAGE2_VALUE_MAX = 0x7FFF     # 15-bit value, bit 15 reserved for overflow
FINE_TABLE_BYTES = 4 + 512 * 2  # PSN field plus 512 two-byte counters


class HotPage(NamedTuple):
    """A migration candidate: idx is -1 when the whole superpage is the unit."""

    benefit: int
    psn: int
    idx: int
    reads: int
    writes: int
    overflow: bool


class SuperpageCounters:
    """Stage-1 table: weighted saturating access counts per physical superpage."""

    def __init__(self, write_weight=4):
        self.write_weight = write_weight
        self.counts = {}
        self.reads = {}   # unweighted tallies, kept for superpage-grain policies
        self.writes = {}

    def record(self, psn, is_write):
        counts = self.counts
        w = self.write_weight if is_write else 1
        c = counts.get(psn, 0) + w
        counts[psn] = c if c < STAGE1_COUNTER_MAX else STAGE1_COUNTER_MAX
        side = self.writes if is_write else self.reads
        side[psn] = side.get(psn, 0) + 1

    def top_n(self, n):
        """The n busiest superpages, ties broken toward the lower PSN."""
        ranked = sorted(self.counts.items(), key=lambda kv: (-kv[1], kv[0]))
        return [psn for psn, count in ranked[:n] if count > 0]

    def reset(self):
        self.counts = {}
        self.reads = {}
        self.writes = {}


class FineGrainTable:
    """Stage-2 table for one superpage: 512 counters with overflow bits."""

    __slots__ = ("psn", "values", "overflow", "reads", "writes")

    def __init__(self, psn):
        self.psn = psn
        self.values = [0] * 512
        self.overflow = [False] * 512
        self.reads = [0] * 512
        self.writes = [0] * 512

    def record(self, idx, is_write, weight):
        v = self.values[idx] + (weight if is_write else 1)
        if v > STAGE2_VALUE_MAX:
            self.values[idx] = STAGE2_VALUE_MAX
            self.overflow[idx] = True
        else:
            self.values[idx] = v
        if is_write:
            self.writes[idx] += 1
        else:
            self.reads[idx] += 1


class AccessMonitor:
    """Interval-driven monitor; single-stage mode classifies whole superpages."""

    def __init__(self, top_n, write_weight, two_stage=True):
        self.top_n = top_n
        self.write_weight = write_weight
        self.two_stage = two_stage
        self.phase = 1
        self.stage1 = SuperpageCounters(write_weight)
        self.tables = {}  # psn -> FineGrainTable while stage 2 runs
        self.tables_bytes_peak = 0

    def record(self, psn, idx, is_write):
        if self.phase == 1:
            self.stage1.record(psn, is_write)
        else:
            table = self.tables.get(psn)
            if table is not None:
                table.record(idx, is_write, self.write_weight)

    def monitored_bytes(self):
        return FINE_TABLE_BYTES * len(self.tables)

    def end_interval(self, benefit_fn, threshold):
        """Advance the interval schedule.

        Returns the sorted migration candidates when a decision is due
        (every stage-2 end, or every interval in single-stage mode) and []
        otherwise.  benefit_fn(reads, writes) prices one candidate.
        """
        if not self.two_stage:
            hot = self._classify_superpages(benefit_fn, threshold)
            self.stage1.reset()
            return hot
        if self.phase == 1:
            monitored = self.stage1.top_n(self.top_n)
            self.tables = {psn: FineGrainTable(psn) for psn in monitored}
            self.tables_bytes_peak = max(self.tables_bytes_peak,
                                         self.monitored_bytes())
            self.stage1.reset()
            self.phase = 2
            return []
        hot = self._classify_pages(benefit_fn, threshold)
        self.tables = {}
        self.phase = 1
        return hot

    def _classify_pages(self, benefit_fn, threshold):
        hot = []
        for psn, table in self.tables.items():
            reads, writes, overflow = table.reads, table.writes, table.overflow
            for idx in range(512):
                r, w = reads[idx], writes[idx]
                of = overflow[idx]
                if not (r or w or of):
                    continue
                b = benefit_fn(r, w)
                if of or b > threshold:
                    hot.append(HotPage(b, psn, idx, r, w, of))
        hot.sort(key=lambda h: (-h.benefit, h.psn, h.idx))
        return hot

    def _classify_superpages(self, benefit_fn, threshold):
        hot = []
        s1 = self.stage1
        for psn in s1.counts:
            r = s1.reads.get(psn, 0)
            w = s1.writes.get(psn, 0)
            b = benefit_fn(r, w)
            if b > threshold:
                hot.append(HotPage(b, psn, -1, r, w, False))
        hot.sort(key=lambda h: (-h.benefit, h.psn, h.idx))
        return hot
