"""Walk the full ``W``-orbit of ``rho`` and collect gcd signatures.

For ``y = rho w``, every prime ``p`` dividing ``gcd(y_2 - y_1, ..., y_r - y_1)``
has ``y = c rho (mod p)`` with ``c = y_1 mod p``; the depth of ``y`` in the
descent tree equals the Coxeter length of ``w``, so the scan also yields the
length parity of every such transporter.

Because ``rho`` is strictly dominant its stabilizer is trivial, the orbit is
in bijection with ``W``, and the minimal-descent parent rule (parent of ``z``
is ``z s_k`` for the smallest ``k`` with ``z_k < 0``) turns the orbit into a
tree rooted at ``rho``.  Walking that tree needs no visited set, and disjoint
subtrees can be handed to independent workers.
"""
from __future__ import annotations

import os
import sys
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .alcove import is_prime
from .rootdata import RootDatum

# every coordinate of rho w is bounded by <rho, highest coroot>, so gcd
# signatures never exceed twice that value
WILDCARD_PRIME_FLOOR = 31


@dataclass(frozen=True)
class ScanConfig:
    workers: int = field(default_factory=lambda: os.cpu_count() or 1)
    split_depth: int = 4
    prime_cap: int | None = None
    progress_interval: int = 0
    max_depth: int | None = None

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("workers must be positive")
        if not 0 <= self.split_depth <= 10:
            raise ValueError("split_depth must lie in 0..10")
        if self.prime_cap is not None and self.prime_cap < 2:
            raise ValueError("prime_cap must be at least 2")
        if self.max_depth is not None and self.max_depth < 0:
            raise ValueError("max_depth must be non-negative")


@dataclass
class ScanSummary:
    """Aggregated result of an orbit walk.

    ``hits[p][c] = [even, odd]`` counts orbit points congruent to ``c rho``
    modulo ``p`` by the parity of the transporter length.
    """

    node_count: int = 0
    hits: dict = field(default_factory=dict)
    max_gcd: int = 0
    max_abs_coord: int = 0
    depth_profile: list = field(default_factory=list)
    elapsed: float = 0.0
    worker_nodes: list = field(default_factory=list)

    def scalars(self, p: int) -> dict:
        """Map each scalar seen modulo ``p`` to its set of parities (0 even, 1 odd)."""
        out = {}
        for c, (ev, od) in self.hits.get(p, {}).items():
            out[c] = frozenset(k for k, n in ((0, ev), (1, od)) if n)
        return out

    def exceptional_primes(self, coprime_to: int | None = None) -> list[int]:
        """Primes with a scalar beyond +-1 or an odd transporter.

        With ``coprime_to`` (typically ``|W|``) primes dividing it are left out.
        """
        out = []
        for p, per_c in self.hits.items():
            if coprime_to is not None and coprime_to % p == 0:
                continue
            trivial = {1, p - 1}
            if any(c not in trivial or od for c, (_, od) in per_c.items()):
                out.append(p)
        return sorted(out)

    def to_dict(self, include_elapsed: bool = True) -> dict:
        primes = {}
        for p in sorted(self.hits):
            primes[str(p)] = {
                str(c): {
                    "parities": sorted("odd" if k else "even" for k in self.scalars(p)[c]),
                    "hits": list(self.hits[p][c]),
                }
                for c in sorted(self.hits[p])
            }
        d = {
            "node_count": self.node_count,
            "max_gcd": self.max_gcd,
            "max_abs_coord": self.max_abs_coord,
            "depth_profile": list(self.depth_profile),
            "exceptional_primes": self.exceptional_primes(),
            "primes": primes,
        }
        if include_elapsed:
            d["elapsed"] = self.elapsed
        return d


def merge(a: ScanSummary, b: ScanSummary) -> ScanSummary:
    hits = {p: {c: list(v) for c, v in per.items()} for p, per in a.hits.items()}
    for p, per in b.hits.items():
        dst = hits.setdefault(p, {})
        for c, (ev, od) in per.items():
            cur = dst.setdefault(c, [0, 0])
            cur[0] += ev
            cur[1] += od
    n = max(len(a.depth_profile), len(b.depth_profile))
    prof = [0] * n
    for src in (a.depth_profile, b.depth_profile):
        for k, v in enumerate(src):
            prof[k] += v
    return ScanSummary(
        node_count=a.node_count + b.node_count,
        hits=hits,
        max_gcd=max(a.max_gcd, b.max_gcd),
        max_abs_coord=max(a.max_abs_coord, b.max_abs_coord),
        depth_profile=prof,
        elapsed=max(a.elapsed, b.elapsed),
        worker_nodes=a.worker_nodes + b.worker_nodes,
    )


def gcd_signature(y) -> int:
    """``gcd(y_2 - y_1, ..., y_r - y_1)``; zero iff all coordinates agree."""
    y = np.asarray(y, dtype=np.int64)
    if y.shape[0] < 2:
        raise ValueError("gcd signature needs rank >= 2")
    return int(kernels.gcd_signature_kernel(y))


def children(datum: RootDatum, y) -> list:
    """Children of ``y`` in the descent tree, as ``(j, y s_j)`` with 1-based ``j``."""
    y = np.asarray(y, dtype=np.int64)
    out = []
    for j in range(datum.rank):
        if y[j] <= 0:
            continue
        z = y - y[j] * datum.cartan[j]
        if np.flatnonzero(z < 0)[0] == j:
            out.append((j + 1, z))
    return out


def _primes_for(config: ScanConfig, datum: RootDatum) -> np.ndarray:
    top = 2 * int(datum.rho @ datum.highest_coroot)
    if config.prime_cap is not None:
        top = min(top, config.prime_cap)
    return np.array([q for q in range(2, top + 1) if is_prime(q)], dtype=np.int64)


def _wildcard_primes(config: ScanConfig) -> list[int]:
    top = max(WILDCARD_PRIME_FLOOR, config.prime_cap or 0)
    return [q for q in range(2, top + 1) if is_prime(q)]


class _Accumulator:
    def __init__(self, datum: RootDatum, primes: np.ndarray):
        width = int(primes.max()) if len(primes) else 1
        self.primes = primes
        self.hits = np.zeros((len(primes), width, 2), dtype=np.int64)
        self.wild = np.zeros((2, 2), dtype=np.int64)
        self.stats = np.zeros(3, dtype=np.int64)
        self.depth_counts = np.zeros(datum.n_positive + 1, dtype=np.int64)

    def run(self, datum, start, depth, max_level):
        kernels.scan_subtree_kernel(
            start, depth, datum.cartan, max_level, self.primes,
            self.hits, self.wild, self.stats, self.depth_counts,
        )

    def summary(self, wildcard_primes) -> ScanSummary:
        hits: dict = {}
        for q, p in enumerate(self.primes.tolist()):
            nz = np.argwhere(self.hits[q].sum(axis=1) > 0).ravel()
            if len(nz):
                hits[p] = {int(c): [int(v) for v in self.hits[q, c]] for c in nz}
        for p in wildcard_primes:
            for sign, c in ((0, 1 % p), (1, (p - 1) % p)):
                ev, od = (int(v) for v in self.wild[sign])
                if ev or od:
                    cur = hits.setdefault(p, {}).setdefault(c, [0, 0])
                    cur[0] += ev
                    cur[1] += od
        prof = self.depth_counts.tolist()
        while prof and prof[-1] == 0:
            prof.pop()
        return ScanSummary(
            node_count=int(self.stats[0]),
            hits={p: dict(sorted(v.items())) for p, v in sorted(hits.items())},
            max_gcd=int(self.stats[1]),
            max_abs_coord=int(self.stats[2]),
            depth_profile=prof,
            worker_nodes=[int(self.stats[0])],
        )


def frontier(datum: RootDatum, depth: int, max_depth: int | None = None):
    """Tree nodes strictly above ``depth`` and the subtree roots at ``depth``."""
    upper, level = [], [np.asarray(datum.rho, dtype=np.int64).copy()]
    for d in range(depth):
        if max_depth is not None and d >= max_depth:
            return upper + [(y, d) for y in level], []
        upper.extend((y, d) for y in level)
        level = [z for y in level for _, z in children(datum, y)]
    if max_depth is not None and depth > max_depth:
        return upper, []
    return upper, level


def scan_rho_orbit(datum: RootDatum, config: ScanConfig | None = None) -> ScanSummary:
    """Traverse the orbit of ``rho`` and summarize scalar multiples modulo primes."""
    config = config or ScanConfig()
    t0 = time.perf_counter()
    primes = _primes_for(config, datum)
    upper, roots = frontier(datum, config.split_depth, config.max_depth)
    depth0 = config.split_depth

    head = _Accumulator(datum, primes)
    for y, d in upper:
        head.run(datum, y, d, 0)

    shards = [roots[k::config.workers] for k in range(config.workers)]
    limit = -1 if config.max_depth is None else config.max_depth - depth0
    lock = threading.Lock()
    seen = {"head": int(head.stats[0])}
    next_report = [config.progress_interval]

    def work(k):
        acc = _Accumulator(datum, primes)
        for y in shards[k]:
            acc.run(datum, y, depth0, limit)
            if config.progress_interval:
                with lock:
                    seen[k] = int(acc.stats[0])
                    done = sum(seen.values())
                    if done >= next_report[0]:
                        next_report[0] = (done // config.progress_interval + 1) * config.progress_interval
                        print(f"[scan] {done:,} nodes, {time.perf_counter() - t0:.1f}s",
                              file=sys.stderr, flush=True)
        return acc

    if config.workers == 1:
        accs = [work(0)]
    else:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            accs = list(pool.map(work, range(config.workers)))

    wildcard_primes = _wildcard_primes(config)
    summary = head.summary(wildcard_primes)
    for acc in accs:
        summary = merge(summary, acc.summary(wildcard_primes))
    # the head nodes are walked on the calling thread; book them to worker 0
    summary.worker_nodes = [int(a.stats[0]) for a in accs]
    summary.worker_nodes[0] += int(head.stats[0])
    summary.elapsed = time.perf_counter() - t0
    return summary
