"""Parallel dictionary/bruteforce executor over keyspaces and hash targets.

Keyspaces are scanned in the order given.  Inside a keyspace the index
space is cut into contiguous chunks that a thread pool scans concurrently
(``hashlib.pbkdf2_hmac`` releases the GIL, so threads scale with cores).
For each target the reported match is the one with the lowest candidate
index, so results do not depend on the worker count or on scheduling.
"""

import enum
import hashlib
import math
import os
import threading
import time
from concurrent.futures import FIRST_COMPLETED, ThreadPoolExecutor, wait
from dataclasses import dataclass, field

from . import crypto
from .keyspace import split_ranges

DEFAULT_CHUNK = 4096
PROGRESS_INTERVAL = 0.5
_POLL = 0.25
_CHECK_EVERY = 64


class StopPolicy(str, enum.Enum):
    FIRST_MATCH_PER_TARGET = "first-match"
    EXHAUST = "exhaust"


@dataclass
class CrackJob:
    targets: list
    keyspaces: list
    worker_count: int = 1
    stop_policy: StopPolicy = StopPolicy.FIRST_MATCH_PER_TARGET
    chunk_size: int = DEFAULT_CHUNK

    def __post_init__(self):
        if not self.targets:
            raise ValueError("a crack job needs at least one target")
        if not self.keyspaces:
            raise ValueError("a crack job needs at least one keyspace")
        if self.worker_count < 1:
            raise ValueError("worker_count must be at least 1")
        if self.chunk_size < 1:
            raise ValueError("chunk_size must be at least 1")
        self.stop_policy = StopPolicy(self.stop_policy)


@dataclass
class CrackResult:
    target_id: int
    passphrase: str = None
    keyspace_kind: str = None
    keyspace: str = None
    candidate_index: int = None
    candidates_tried: int = 0
    skipped: int = 0
    elapsed: float = 0.0
    throughput: float = 0.0
    error: str = None

    @property
    def found(self) -> bool:
        return self.passphrase is not None

    def key(self):
        return (self.target_id, self.passphrase, self.candidate_index)


@dataclass
class _Chunk:
    found: dict = field(default_factory=dict)  # tid -> local index
    checked: dict = field(default_factory=dict)  # tid -> candidates tested
    skipped: int = 0


class _Progress:
    def __init__(self):
        self.lock = threading.Lock()
        self.tried = 0

    def add(self, n):
        with self.lock:
            self.tried += n


def _essid(target) -> bytes:
    essid = target.essid
    return essid.encode("utf-8") if isinstance(essid, str) else bytes(essid)


def _check_target(target):
    if len(_essid(target)) > crypto.MAX_ESSID:
        raise ValueError("ESSID longer than 32 bytes")
    target.matches(bytes(crypto.PMK_LEN))


def _chunk_ranges(total, workers, chunk_size):
    if total <= 0:
        return iter(())
    parts = max(math.ceil(total / chunk_size), min(total, workers * 4))
    return ((a, b) for a, b in split_ranges(total, parts) if b > a)


class _KeyspaceScan:
    def __init__(self, job, keyspace, open_ids, progress):
        self.job = job
        self.ks = keyspace
        self.open_ids = list(open_ids)
        self.progress = progress
        self.first_match = job.stop_policy is StopPolicy.FIRST_MATCH_PER_TARGET
        self.best = {}
        self.lock = threading.Lock()
        self.checked = {tid: 0 for tid in open_ids}
        self.skipped = {tid: 0 for tid in open_ids}

    def _record(self, tid, idx):
        with self.lock:
            if idx < self.best.get(tid, math.inf):
                self.best[tid] = idx

    def scan(self, start, stop, active):
        targets = self.job.targets
        groups = {}
        for tid in active:
            groups.setdefault(_essid(targets[tid]), []).append(tid)
        remaining = set(active)
        out = _Chunk(checked={tid: 0 for tid in active})
        pending = 0
        idx = start
        for cand in self.ks.iter_range(start, stop):
            if self.first_match and (idx - start) % _CHECK_EVERY == 0:
                self.progress.add(pending)
                pending = 0
                for tid in [t for t in remaining if self.best.get(t, math.inf) < idx]:
                    remaining.discard(tid)
                if not remaining:
                    break
            pending += 1
            try:
                password = crypto.check_passphrase(cand)
            except crypto.CryptoError:
                out.skipped += 1
                for tid in remaining:
                    out.checked[tid] += 1
                idx += 1
                continue
            for essid, tids in groups.items():
                live = [t for t in tids if t in remaining]
                if not live:
                    continue
                pmk = hashlib.pbkdf2_hmac("sha1", password, essid, crypto.PBKDF2_ITERATIONS, crypto.PMK_LEN)
                for tid in live:
                    out.checked[tid] += 1
                    if targets[tid].matches(pmk) and tid not in out.found:
                        out.found[tid] = idx
                        self._record(tid, idx)
                        if self.first_match:
                            remaining.discard(tid)
            idx += 1
            if self.first_match and not remaining:
                break
        self.progress.add(pending)
        return out, active

    def merge(self, chunk: _Chunk, active):
        for tid, idx in chunk.found.items():
            self._record(tid, idx)
        for tid, n in chunk.checked.items():
            self.checked[tid] += n
        for tid in active:
            self.skipped[tid] += chunk.skipped

    def run(self, pool, tick):
        workers = self.job.worker_count
        ranges = _chunk_ranges(self.ks.cardinality(), workers, self.job.chunk_size)
        in_flight = set()
        exhausted = False
        while True:
            while not exhausted and len(in_flight) < workers * 2:
                r = next(ranges, None)
                if r is None:
                    exhausted = True
                    break
                start, stop = r
                if self.first_match:
                    active = [t for t in self.open_ids if self.best.get(t, math.inf) > start]
                else:
                    active = list(self.open_ids)
                if not active:
                    # every later chunk starts even higher
                    exhausted = True
                    break
                in_flight.add(pool.submit(self.scan, start, stop, active))
            if not in_flight:
                break
            done, _ = wait(in_flight, timeout=_POLL, return_when=FIRST_COMPLETED)
            for fut in done:
                in_flight.discard(fut)
                self.merge(*fut.result())
            tick()
        return self.best


def run(job: CrackJob, progress_sink=None):
    """Scan ``job.keyspaces`` in order against ``job.targets``.

    ``progress_sink(candidates_tried, keyspace_kind, found_flags)`` is called
    at least every second while work is running and once at the end.
    """
    t0 = time.monotonic()
    results = [CrackResult(target_id=i) for i in range(len(job.targets))]
    open_ids = []
    for tid, target in enumerate(job.targets):
        try:
            _check_target(target)
        except Exception as exc:  # per-target failure, not fatal for the job
            results[tid].error = f"{type(exc).__name__}: {exc}"
        else:
            open_ids.append(tid)

    progress = _Progress()
    last = [0.0, -1]
    current_kind = [None]

    def tick(force=False):
        if progress_sink is None:
            return
        now = time.monotonic()
        if force or now - last[0] >= PROGRESS_INTERVAL:
            tried = max(progress.tried, last[1])
            last[:] = [now, tried]
            progress_sink(tried, current_kind[0], [r.found for r in results])

    first_match = job.stop_policy is StopPolicy.FIRST_MATCH_PER_TARGET
    with ThreadPoolExecutor(max_workers=job.worker_count) as pool:
        for ks in job.keyspaces:
            if not open_ids:
                break
            current_kind[0] = ks.kind.value
            scan = _KeyspaceScan(job, ks, open_ids, progress)
            best = scan.run(pool, tick)
            for tid in scan.open_ids:
                res = results[tid]
                res.candidates_tried += scan.checked[tid]
                res.skipped += scan.skipped[tid]
                if tid in best and not res.found:
                    res.passphrase = ks.candidate(best[tid])
                    res.keyspace_kind = ks.kind.value
                    res.keyspace = ks.describe()
                    res.candidate_index = ks.base_index(best[tid])
                    res.elapsed = time.monotonic() - t0
            if first_match:
                open_ids = [t for t in open_ids if not results[t].found]
        tick(force=True)

    total = time.monotonic() - t0
    for res in results:
        if not res.found:
            res.elapsed = total
        res.throughput = res.candidates_tried / res.elapsed if res.elapsed > 0 else 0.0
    for res in results:
        if res.found:
            target = job.targets[res.target_id]
            if not target.matches(crypto.derive_pmk(res.passphrase, _essid(target))):
                raise AssertionError(f"reported passphrase for target {res.target_id} does not verify")
    return results


@dataclass(frozen=True)
class BenchmarkReport:
    single_rate: float
    multi_rate: float
    workers: int
    duration: float

    def projected_seconds(self, candidates: int, multi: bool = True) -> float:
        rate = self.multi_rate if multi else self.single_rate
        return candidates / rate if rate > 0 else math.inf


def _spin(target, deadline):
    n = 0
    i = 0
    while time.monotonic() < deadline:
        crypto.verify_pmkid_candidate(f"{i:08d}", target)
        i += 1
        n += 1
    return n


def benchmark(duration: float = 3.0, workers: int = None) -> BenchmarkReport:
    """Measure PMKID verifications per second on one core and on all cores."""
    if duration < 1:
        raise ValueError("benchmark duration must be at least 1 second")
    from .formats import HashTarget

    workers = workers or os.cpu_count() or 1
    pmk = crypto.derive_pmk("benchmark", b"bench")
    target = HashTarget(crypto.compute_pmkid(pmk, bytes(6), bytes(6)), bytes(6), bytes(6), b"bench")

    half = duration / 2
    start = time.monotonic()
    single = _spin(target, start + half) / (time.monotonic() - start)

    start = time.monotonic()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        counts = list(pool.map(lambda _: _spin(target, start + half), range(workers)))
    multi = sum(counts) / (time.monotonic() - start)
    return BenchmarkReport(single, multi, workers, duration)
