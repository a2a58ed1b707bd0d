"""Split two-level TLBs (separate 4 KB and 2 MB pipes) with exact LRU.

Both page-size pipes are consulted in parallel for every reference; each
pipe tries its per-core L1 first and the shared L2 on an L1 miss.  The
charged latency is the deepest level reached on either active pipe.  A 4 KB
mapping, when present, always wins downstream because small pages shadow
their superpage translation.
"""

from .core import PageSize


class TlbLevel:
    """One set-associative translation structure (a single level, one page size)."""

    def __init__(self, entries, ways, latency_cycles, name=""):
        if entries <= 0 or ways <= 0 or entries % ways:
            raise ValueError(f"bad TLB geometry: {entries} entries, {ways} ways")
        self.nsets = entries // ways
        self.ways = ways
        self.latency = latency_cycles
        self.name = name
        # per-set dicts double as LRU queues: first key is least recent
        self.sets = [dict() for _ in range(self.nsets)]
        self.hits = 0
        self.misses = 0

    def lookup(self, vpn):
        s = self.sets[vpn % self.nsets]
        payload = s.pop(vpn, None)
        if payload is None:
            self.misses += 1
            return None
        s[vpn] = payload  # move to most-recent position
        self.hits += 1
        return payload

    def install(self, vpn, payload):
        """Insert or refresh a mapping; returns the evicted (vpn, payload) or None."""
        s = self.sets[vpn % self.nsets]
        if vpn in s:
            del s[vpn]
            s[vpn] = payload
            return None
        s[vpn] = payload
        if len(s) > self.ways:
            victim = next(iter(s))
            return victim, s.pop(victim)
        return None

    def invalidate(self, vpn) -> bool:
        return self.sets[vpn % self.nsets].pop(vpn, None) is not None

    def contains(self, vpn) -> bool:
        return vpn in self.sets[vpn % self.nsets]

    @property
    def lookups(self):
        return self.hits + self.misses

    def occupancy(self):
        return sum(len(s) for s in self.sets)


def walk_cost(levels: int, table_read_cycles: int) -> int:
    """Hardware page-table walk charge: one table read per level."""
    return levels * table_read_cycles


class SplitTlb:
    """Per-core L1s and shared L2s for each page size the policy translates."""

    def __init__(self, cfg, use_4k=True, use_2m=True):
        t = cfg.tlb
        self.cores = cfg.cpu.cores
        self.use_4k = use_4k
        self.use_2m = use_2m

        def l1(tag):
            return [TlbLevel(t.l1_entries, t.l1_ways, t.l1_latency_cycles,
                             f"l1_{tag}[{c}]") for c in range(self.cores)]

        self.l1_4k = l1("4k") if use_4k else None
        self.l2_4k = (TlbLevel(t.l2_entries, t.l2_ways, t.l2_latency_cycles, "l2_4k")
                      if use_4k else None)
        self.l1_2m = l1("2m") if use_2m else None
        self.l2_2m = (TlbLevel(t.l2_entries, t.l2_ways, t.l2_latency_cycles, "l2_2m")
                      if use_2m else None)

        self.shootdown_cycles = t.shootdown_cycles
        self.shootdown_local_cycles = t.shootdown_local_cycles
        self.pipe_4k_hits = 0
        self.pipe_4k_lookups = 0
        self.pipe_2m_hits = 0
        self.pipe_2m_lookups = 0
        self.shootdowns_full = 0
        self.shootdowns_local = 0

    def _pipe(self, l1, l2, vpn):
        lat = l1.latency
        payload = l1.lookup(vpn)
        if payload is not None:
            return payload, lat
        lat += l2.latency
        payload = l2.lookup(vpn)
        if payload is not None:
            l1.install(vpn, payload)  # refill L1 on an L2 hit
        return payload, lat

    def lookup(self, vaddr, tid):
        """Returns (payload_4k, payload_2m, latency) for one reference."""
        core = tid % self.cores
        p4 = p2 = None
        lat4 = lat2 = 0
        if self.use_4k:
            p4, lat4 = self._pipe(self.l1_4k[core], self.l2_4k, vaddr >> 12)
            self.pipe_4k_lookups += 1
            if p4 is not None:
                self.pipe_4k_hits += 1
        if self.use_2m:
            p2, lat2 = self._pipe(self.l1_2m[core], self.l2_2m, vaddr >> 21)
            self.pipe_2m_lookups += 1
            if p2 is not None:
                self.pipe_2m_hits += 1
        return p4, p2, lat4 if lat4 >= lat2 else lat2

    def fill(self, page_size, vpn, payload, tid):
        """Install into the filling core's L1 and the shared L2.

        Returns the list of entries evicted along the way (possibly empty).
        """
        if page_size == PageSize.SMALL_4K:
            l1, l2 = self.l1_4k[tid % self.cores], self.l2_4k
        else:
            l1, l2 = self.l1_2m[tid % self.cores], self.l2_2m
        evicted = []
        for lvl in (l1, l2):
            out = lvl.install(vpn, payload)
            if out is not None:
                evicted.append(out)
        return evicted

    def _shootdown(self, l1s, l2, vpn):
        found = False
        for lvl in l1s:
            found |= lvl.invalidate(vpn)
        found |= l2.invalidate(vpn)
        if found:
            self.shootdowns_full += 1
            return self.shootdown_cycles
        self.shootdowns_local += 1
        return self.shootdown_local_cycles

    def shootdown_4k(self, vpn):
        """Drop a 4 KB vpn everywhere; full cost only if it was resident."""
        if not self.use_4k:
            return 0
        return self._shootdown(self.l1_4k, self.l2_4k, vpn)

    def shootdown_2m(self, vsn):
        if not self.use_2m:
            return 0
        return self._shootdown(self.l1_2m, self.l2_2m, vsn)

    def counters(self):
        """Aggregate (hits, misses) per structure group."""
        out = {}
        for tag, l1s, l2 in (("4k", self.l1_4k, self.l2_4k),
                             ("2m", self.l1_2m, self.l2_2m)):
            if l1s is None:
                out[f"l1_{tag}"] = (0, 0)
                out[f"l2_{tag}"] = (0, 0)
                continue
            out[f"l1_{tag}"] = (sum(l.hits for l in l1s), sum(l.misses for l in l1s))
            out[f"l2_{tag}"] = (l2.hits, l2.misses)
        return out
