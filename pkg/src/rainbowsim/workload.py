"""Synthetic reference streams and the binary trace container.

Generators are pure functions of (spec, seed): all randomness flows through
one numpy PCG64 generator drawn in a fixed order, so the same spec always
yields the same byte-identical trace.
"""

import struct
from dataclasses import dataclass

import numpy as np

from .core import ADDR_BITS, SUPERPAGE_BYTES, SMALL_PAGE_BYTES, TraceRecord

MAGIC = b"RNBWTRC1"
_HEADER = struct.Struct("<8sQ")
_RECORD = struct.Struct("<BB6xQ")
_CHUNK = 1 << 20

# hot-pages-per-superpage bucket edges (inclusive)
BUCKETS = ((1, 32), (33, 64), (65, 128), (129, 256), (257, 384), (385, 512))

# named hot-page-count shapes, from very concentrated to nearly flat
HIST_PRESETS = {
    "concentrated": (0.955, 0.045, 0.0, 0.0, 0.0, 0.0),
    "clustered": (0.60, 0.20, 0.12, 0.05, 0.02, 0.01),
    "spread": (0.10, 0.10, 0.20, 0.25, 0.20, 0.15),
}

KINDS = ("uniform", "zipf", "hot-superpage", "random-update")


class TraceFormatError(ValueError):
    """Trace file violates the on-disk format."""


@dataclass
class GeneratorSpec:
    kind: str = "zipf"
    refs: int = 1_000_000
    footprint_bytes: int = 1 << 30
    working_set_bytes: int = 0      # 0 = whole footprint
    zipf_s: float = 1.1
    write_fraction: float = 0.2
    hot_fraction: float = 0.7
    hist: tuple = HIST_PRESETS["concentrated"]
    seed: int = 1
    tid: int = 0

    def validate(self):
        problems = []
        if self.kind not in KINDS:
            problems.append(f"unknown kind {self.kind!r} (choose from {KINDS})")
        if self.refs <= 0:
            problems.append("refs must be positive")
        if self.footprint_bytes < SUPERPAGE_BYTES:
            problems.append("footprint_bytes must cover at least one superpage")
        if self.working_set_bytes < 0 or self.working_set_bytes > self.footprint_bytes:
            problems.append("working_set_bytes must lie within the footprint")
        if not 0.0 <= self.write_fraction <= 1.0:
            problems.append("write_fraction must be in [0, 1]")
        if not 0.0 <= self.hot_fraction <= 1.0:
            problems.append("hot_fraction must be in [0, 1]")
        if self.zipf_s <= 0:
            problems.append("zipf_s must be positive")
        if len(self.hist) != len(BUCKETS):
            problems.append(f"hist needs {len(BUCKETS)} bucket fractions")
        elif min(self.hist) < 0 or abs(sum(self.hist) - 1.0) > 1e-9:
            problems.append("hist fractions must be non-negative and sum to 1")
        if not 0 <= self.tid <= 255:
            problems.append("tid must fit in one byte")
        if problems:
            raise ValueError("; ".join(problems))


def parse_hist(text):
    """A preset name or six comma-separated fractions."""
    if text in HIST_PRESETS:
        return HIST_PRESETS[text]
    parts = text.split(",")
    if len(parts) != len(BUCKETS):
        raise ValueError(
            f"hist must be one of {sorted(HIST_PRESETS)} or "
            f"{len(BUCKETS)} comma-separated fractions")
    return tuple(float(p) for p in parts)


def _chunk_sizes(total):
    done = 0
    while done < total:
        n = min(_CHUNK, total - done)
        yield n
        done += n


def _ops(rng, n, write_fraction):
    return (rng.random(n) < write_fraction).astype(np.uint8)


def _page_addrs(rng, pages):
    # reads/writes land on a word-aligned offset inside the page
    return pages * SMALL_PAGE_BYTES + rng.integers(
        0, SMALL_PAGE_BYTES // 8, len(pages), dtype=np.int64) * 8


def _gen_uniform(spec, rng):
    n_pages = spec.footprint_bytes // SMALL_PAGE_BYTES
    for n in _chunk_sizes(spec.refs):
        pages = rng.integers(0, n_pages, n, dtype=np.int64)
        yield _ops(rng, n, spec.write_fraction), _page_addrs(rng, pages)


def _gen_zipf(spec, rng):
    n_pages = spec.footprint_bytes // SMALL_PAGE_BYTES
    weights = 1.0 / np.arange(1, n_pages + 1, dtype=np.float64) ** spec.zipf_s
    cdf = np.cumsum(weights)
    cdf /= cdf[-1]
    cdf[-1] = 1.0
    # rank popularity should not correlate with address order
    perm = rng.permutation(n_pages)
    for n in _chunk_sizes(spec.refs):
        ranks = np.searchsorted(cdf, rng.random(n), side="right")
        yield _ops(rng, n, spec.write_fraction), _page_addrs(rng, perm[ranks])


def _gen_hot_superpage(spec, rng):
    pages_per_super = SUPERPAGE_BYTES // SMALL_PAGE_BYTES
    n_super = spec.footprint_bytes // SUPERPAGE_BYTES
    n_work = (spec.working_set_bytes // SUPERPAGE_BYTES
              if spec.working_set_bytes else n_super)
    n_work = max(1, min(n_work, n_super))
    work = rng.choice(n_super, n_work, replace=False)
    bucket = rng.choice(len(BUCKETS), n_work, p=np.asarray(spec.hist))
    lo = np.array([b[0] for b in BUCKETS])[bucket]
    hi = np.array([b[1] for b in BUCKETS])[bucket]
    hot_counts = rng.integers(lo, hi + 1)
    starts = np.concatenate(([0], np.cumsum(hot_counts)))[:-1]
    hot_flat = np.concatenate(
        [rng.permutation(pages_per_super)[:c] for c in hot_counts])
    for n in _chunk_sizes(spec.refs):
        s = rng.integers(0, n_work, n)
        hot = rng.random(n) < spec.hot_fraction
        pick = (rng.random(n) * hot_counts[s]).astype(np.int64)
        idx = np.where(hot, hot_flat[starts[s] + pick],
                       rng.integers(0, pages_per_super, n))
        pages = work[s] * pages_per_super + idx
        yield _ops(rng, n, spec.write_fraction), _page_addrs(rng, pages)


def _gen_random_update(spec, rng):
    # read-modify-write pairs over the working set, GUPS style
    span = spec.working_set_bytes or spec.footprint_bytes
    n_pages = span // SMALL_PAGE_BYTES
    remaining = spec.refs
    for n in _chunk_sizes((spec.refs + 1) // 2):
        pages = rng.integers(0, n_pages, n, dtype=np.int64)
        addrs = np.repeat(_page_addrs(rng, pages), 2)
        ops = np.zeros(2 * n, dtype=np.uint8)
        ops[1::2] = 1
        take = min(remaining, 2 * n)
        remaining -= take
        yield ops[:take], addrs[:take]


_KIND_FNS = {
    "uniform": _gen_uniform,
    "zipf": _gen_zipf,
    "hot-superpage": _gen_hot_superpage,
    "random-update": _gen_random_update,
}


def generate(spec: GeneratorSpec):
    """Yield spec.refs TraceRecords, deterministically for a fixed seed."""
    spec.validate()
    rng = np.random.default_rng(spec.seed)
    tid = spec.tid
    for ops, vaddrs in _KIND_FNS[spec.kind](spec, rng):
        for op, vaddr in zip(ops.tolist(), vaddrs.tolist()):
            yield TraceRecord(op, vaddr, tid)


def interleave(traces, shift_bits=40):
    """Round-robin merge of record streams into disjoint address lanes.

    Stream i keeps its op sequence but moves to vaddr | (i << shift_bits)
    with tid i, so merged programs never share pages.
    """
    lanes = 1 << (ADDR_BITS - shift_bits)
    iters = [iter(t) for t in traces]
    if len(iters) > lanes:
        raise ValueError(f"at most {lanes} traces fit above bit {shift_bits}")
    active = list(range(len(iters)))
    while active:
        still = []
        for i in active:
            rec = next(iters[i], None)
            if rec is None:
                continue
            if rec.vaddr >> shift_bits:
                raise ValueError(f"trace {i} address crosses the lane boundary")
            yield TraceRecord(rec.op, rec.vaddr | (i << shift_bits), i)
            still.append(i)
        active = still


def write_trace(records, path) -> int:
    """Write records to path; returns how many were written."""
    with open(path, "wb") as f:
        f.write(_HEADER.pack(MAGIC, 0))
        pack = _RECORD.pack
        buf = bytearray()
        count = 0
        for op, vaddr, tid in records:
            if vaddr >> ADDR_BITS:
                raise ValueError(f"address beyond {ADDR_BITS} bits: {vaddr:#x}")
            buf += pack(op, tid, vaddr)
            count += 1
            if len(buf) >= _CHUNK:
                f.write(buf)
                buf.clear()
        f.write(buf)
        f.seek(len(MAGIC))
        f.write(struct.pack("<Q", count))
    return count


def read_trace(path):
    """Stream records back; validates the header before returning."""
    f = open(path, "rb")
    try:
        header = f.read(_HEADER.size)
        if len(header) < _HEADER.size:
            raise TraceFormatError(f"{path}: truncated header at byte {len(header)}")
        magic, count = _HEADER.unpack(header)
        if magic != MAGIC:
            raise TraceFormatError(f"{path}: bad magic {magic!r}")
    except Exception:
        f.close()
        raise
    return _read_records(f, path, count)


def _read_records(f, path, count):
    with f:
        unpack = _RECORD.unpack
        offset = _HEADER.size
        for i in range(count):
            raw = f.read(_RECORD.size)
            if len(raw) < _RECORD.size:
                raise TraceFormatError(
                    f"{path}: truncated record {i} at byte {offset + len(raw)}")
            op, tid, vaddr = unpack(raw)
            if op > 1:
                raise TraceFormatError(f"{path}: bad op {op} at byte {offset}")
            if vaddr >> ADDR_BITS:
                raise TraceFormatError(
                    f"{path}: address beyond {ADDR_BITS} bits at byte {offset}")
            offset += _RECORD.size
            yield TraceRecord(op, vaddr, tid)
        if f.read(1):
            raise TraceFormatError(f"{path}: trailing data at byte {offset}")
