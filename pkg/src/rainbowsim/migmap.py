"""Per-superpage migration bitmaps and the memory-controller bitmap cache.

Each superpage owns a 512-bit map with one bit per small page; a set bit
means the page now lives in DRAM and its NVM copy starts with a redirect
pointer.  The controller caches recently used bitmaps so the common case
costs one SRAM access instead of an NVM read.
"""

from .core import PAGES_PER_SUPERPAGE, SMALL_PAGE_BYTES, SUPERPAGE_BYTES

ENTRY_TAG_BYTES = 4
ENTRY_BITS_BYTES = PAGES_PER_SUPERPAGE // 8

_MISS = object()


class MigrationBitmap:
    """Authoritative migrated-page bits, one 512-bit word per superpage."""

    def __init__(self):
        self.words = {}

    def test(self, psn, idx) -> bool:
        return bool((self.words.get(psn, 0) >> idx) & 1)

    def set(self, psn, idx):
        self.words[psn] = self.words.get(psn, 0) | (1 << idx)

    def clear(self, psn, idx):
        word = self.words.get(psn, 0) & ~(1 << idx)
        if word:
            self.words[psn] = word
        else:
            self.words.pop(psn, None)

    def word(self, psn) -> int:
        return self.words.get(psn, 0)

    def popcount(self, psn) -> int:
        return self.words.get(psn, 0).bit_count()


class BitmapCache:
    """Set-associative cache of bitmap words, indexed and tagged by PSN."""

    def __init__(self, entries, ways, latency_cycles):
        if entries <= 0 or ways <= 0 or entries % ways:
            raise ValueError(f"bad bitmap cache geometry: {entries}/{ways}")
        self.nsets = entries // ways
        self.ways = ways
        self.entries = entries
        self.latency = latency_cycles
        self.sets = [dict() for _ in range(self.nsets)]  # psn -> word, LRU order
        self.hits = 0
        self.misses = 0

    def lookup(self, psn):
        s = self.sets[psn % self.nsets]
        word = s.pop(psn, _MISS)
        if word is _MISS:
            self.misses += 1
            return None
        s[psn] = word
        self.hits += 1
        return word

    def install(self, psn, word):
        s = self.sets[psn % self.nsets]
        if psn in s:
            del s[psn]
        s[psn] = word
        if len(s) > self.ways:
            victim = next(iter(s))
            del s[victim]
            return victim
        return None

    def touch(self, psn) -> bool:
        """LRU-refresh without counting a lookup; True if resident."""
        s = self.sets[psn % self.nsets]
        word = s.pop(psn, _MISS)
        if word is _MISS:
            return False
        s[psn] = word
        return True

    def update_if_resident(self, psn, word):
        s = self.sets[psn % self.nsets]
        if psn in s:
            s[psn] = word

    def contains(self, psn) -> bool:
        return psn in self.sets[psn % self.nsets]

    def capacity_bytes(self) -> int:
        return self.entries * (ENTRY_TAG_BYTES + ENTRY_BITS_BYTES)


class MigrationMap:
    """Backing bitmaps plus the controller cache, with latency accounting."""

    def __init__(self, cache_entries, cache_ways, cache_latency_cycles,
                 backing_read_cycles):
        self.backing = MigrationBitmap()
        self.cache = BitmapCache(cache_entries, cache_ways, cache_latency_cycles)
        self.backing_read_cycles = backing_read_cycles

    def is_migrated(self, psn, idx):
        """Probe one page's bit.

        Returns (flag, cycles, cache_hit); a cache miss adds one read of the
        backing word and installs it.
        """
        word = self.cache.lookup(psn)
        if word is not None:
            return bool((word >> idx) & 1), self.cache.latency, True
        word = self.backing.word(psn)
        self.cache.install(psn, word)
        return (bool((word >> idx) & 1),
                self.cache.latency + self.backing_read_cycles, False)

    def set_migrated(self, psn, idx):
        self.backing.set(psn, idx)
        self.cache.update_if_resident(psn, self.backing.word(psn))

    def clear_migrated(self, psn, idx):
        self.backing.clear(psn, idx)
        self.cache.update_if_resident(psn, self.backing.word(psn))

    def fill_for_superpage_miss(self, psn) -> int:
        """Prefill done alongside a superpage TLB miss.

        Returns the extra cycles charged: one backing read when the word was
        absent, zero (an LRU refresh) when already cached.
        """
        if self.cache.touch(psn):
            return 0
        self.cache.install(psn, self.backing.word(psn))
        return self.backing_read_cycles


def storage_accounting(nvm_bytes, top_n, cache_entries=4000):
    """Itemized bytes of the bookkeeping structures for a given NVM size.

    The four SRAM items live on the memory controller; full_bitmap_bytes is
    the in-memory backing store that the cache fronts.
    """
    if nvm_bytes % SUPERPAGE_BYTES:
        raise ValueError(f"nvm_bytes must be whole superpages: {nvm_bytes}")
    superpages = nvm_bytes // SUPERPAGE_BYTES
    items = {
        "bitmap_cache_bytes": cache_entries * (ENTRY_TAG_BYTES + ENTRY_BITS_BYTES),
        "superpage_counter_bytes": 2 * superpages,
        "psn_list_bytes": 4 * top_n,
        "fine_grain_counter_bytes": 2 * 512 * top_n,
    }
    items["sram_total_bytes"] = sum(items.values())
    items["full_bitmap_bytes"] = nvm_bytes // (SMALL_PAGE_BYTES * 8)
    return items
