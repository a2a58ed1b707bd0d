"""Migration bitmaps, the bitmap cache, and storage accounting."""

import random

import pytest

from rainbowsim.migmap import (
    BitmapCache,
    MigrationBitmap,
    MigrationMap,
    storage_accounting,
)


class TestMigrationBitmap:
    def test_set_clear_test(self):
        bm = MigrationBitmap()
        assert not bm.test(3, 100)
        bm.set(3, 100)
        assert bm.test(3, 100)
        assert not bm.test(3, 101)
        bm.clear(3, 100)
        assert not bm.test(3, 100)

    def test_word_and_popcount(self):
        bm = MigrationBitmap()
        for idx in (0, 5, 511):
            bm.set(2, idx)
        assert bm.word(2) == (1 << 0) | (1 << 5) | (1 << 511)
        assert bm.popcount(2) == 3
        assert bm.popcount(9) == 0
        assert bm.word(9) == 0


class TestBitmapCache:
    def test_geometry_capacity(self):
        cache = BitmapCache(entries=4000, ways=8, latency_cycles=9)
        # 4-byte tag + 64-byte vector per entry
        assert cache.capacity_bytes() == 4000 * 68 == 272_000

    def test_miss_install_hit(self):
        cache = BitmapCache(16, 4, 9)
        assert cache.lookup(1) is None
        cache.install(1, 0xF0)
        assert cache.lookup(1) == 0xF0
        assert (cache.hits, cache.misses) == (1, 1)

    def test_lru_within_set(self):
        cache = BitmapCache(entries=8, ways=2, latency_cycles=9)
        nsets = 4
        a, b, c = 0, nsets, 2 * nsets  # same set
        cache.install(a, 1)
        cache.install(b, 2)
        cache.lookup(a)  # b becomes LRU
        assert cache.install(c, 3) == b
        assert cache.contains(a) and not cache.contains(b)

    def test_touch_refreshes_without_counting(self):
        cache = BitmapCache(8, 2, 9)
        cache.install(0, 1)
        assert cache.touch(0)
        assert not cache.touch(4)
        assert (cache.hits, cache.misses) == (0, 0)

    def test_update_if_resident(self):
        cache = BitmapCache(8, 2, 9)
        cache.install(0, 1)
        cache.update_if_resident(0, 99)
        cache.update_if_resident(4, 99)  # absent: not installed
        assert cache.lookup(0) == 99
        assert not cache.contains(4)


class TestMigrationMap:
    def make(self):
        return MigrationMap(16, 4, 9, backing_read_cycles=62)

    def test_probe_costs(self):
        mm = self.make()
        mm.set_migrated(1, 5)
        flag, cycles, hit = mm.is_migrated(1, 5)
        assert (flag, cycles, hit) == (True, 9 + 62, False)  # cold: word fetch
        flag, cycles, hit = mm.is_migrated(1, 6)
        assert (flag, cycles, hit) == (False, 9, True)

    def test_write_through(self):
        mm = self.make()
        mm.is_migrated(2, 0)  # cache the (empty) word
        mm.set_migrated(2, 7)
        assert mm.is_migrated(2, 7) == (True, 9, True)
        mm.clear_migrated(2, 7)
        assert mm.is_migrated(2, 7) == (False, 9, True)

    def test_superpage_miss_fill(self):
        mm = self.make()
        assert mm.fill_for_superpage_miss(3) == 62
        assert mm.fill_for_superpage_miss(3) == 0  # resident: refresh only
        assert mm.is_migrated(3, 0) == (False, 9, True)

    def test_random_ops_match_shadow(self):
        # small randomized screen; the full-size oracle run lives in acceptance
        rng = random.Random(77)
        mm = self.make()
        shadow = set()
        for _ in range(5000):
            psn, idx = rng.randrange(32), rng.randrange(512)
            roll = rng.random()
            if roll < 0.4:
                mm.set_migrated(psn, idx)
                shadow.add((psn, idx))
            elif roll < 0.6:
                mm.clear_migrated(psn, idx)
                shadow.discard((psn, idx))
            else:
                flag, _, _ = mm.is_migrated(psn, idx)
                assert flag == ((psn, idx) in shadow)


class TestStorageAccounting:
    def test_terabyte_nvm(self):
        acc = storage_accounting(1 << 40, top_n=100)
        assert acc["bitmap_cache_bytes"] == 272_000
        assert acc["superpage_counter_bytes"] == 1 << 20
        assert acc["psn_list_bytes"] == 400
        assert acc["fine_grain_counter_bytes"] == 100 * 1024
        assert acc["sram_total_bytes"] == sum(
            (272_000, 1 << 20, 400, 100 * 1024))
        assert acc["full_bitmap_bytes"] == 32 << 20

    def test_scales_with_inputs(self):
        acc = storage_accounting(2 << 20, top_n=0)
        assert acc["superpage_counter_bytes"] == 2  # one superpage
        assert acc["psn_list_bytes"] == 0
        assert acc["fine_grain_counter_bytes"] == 0
        assert acc["full_bitmap_bytes"] == 64

    def test_rejects_partial_superpages(self):
        with pytest.raises(ValueError):
            storage_accounting((2 << 20) + 1, top_n=4)
