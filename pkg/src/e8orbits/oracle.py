"""Brute-force reference computations for small ranks (G2, F4).

Nothing here uses alcoves: groups are closed explicitly as sets of matrices
and orbits on ``F_p^r`` are connected components of the generator graph.
Only data whose root lattice equals the weight lattice are meaningful
inputs; for the shipped types that means G2 and F4.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import CapExceeded, TwistedUnavailable
from .families import Family, FamilyOrbitData, Verdict, fourth_root, validate
from .rootdata import RootDatum

DEFAULT_GROUP_CAP = 10**7
MAX_BRUTE_VECTORS = 17**4


@dataclass(frozen=True)
class MatrixGroup:
    elements: list
    generators: list
    modulus: int | None

    @property
    def order(self) -> int:
        return len(self.elements)


def close_group(generators, modulus: int | None = None, cap: int = DEFAULT_GROUP_CAP) -> MatrixGroup:
    """Breadth-first closure of ``generators`` under right multiplication."""
    gens = [np.asarray(g, dtype=np.int64) for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].shape[0]
    if any(g.shape != (n, n) for g in gens):
        raise ValueError("generators must be square matrices of one size")
    if modulus is not None:
        gens = [g % modulus for g in gens]
    ident = np.eye(n, dtype=np.int64)
    seen = {ident.tobytes(): ident}
    queue = deque([ident])
    while queue:
        a = queue.popleft()
        for g in gens:
            b = a @ g
            if modulus is not None:
                b %= modulus
            key = b.tobytes()
            if key not in seen:
                if len(seen) >= cap:
                    raise CapExceeded(f"group closure exceeded {cap} elements")
                seen[key] = b
                queue.append(b)
    return MatrixGroup(list(seen.values()), gens, modulus)


def all_vectors(r: int, p: int) -> np.ndarray:
    """Every vector of ``F_p^r``; row ``k`` has code ``k`` in base ``p`` (first coordinate least significant)."""
    codes = np.arange(p**r, dtype=np.int64)
    return np.stack([(codes // p**t) % p for t in range(r)], axis=1)


def encode(v: np.ndarray, p: int) -> np.ndarray:
    v = np.asarray(v, dtype=np.int64) % p
    weights = p ** np.arange(v.shape[-1], dtype=np.int64)
    return v @ weights


@dataclass(frozen=True)
class Partition:
    """Orbits of a matrix group on ``F_p^r``."""

    p: int
    labels: np.ndarray
    sizes: np.ndarray
    group_order: int

    def orbit_size(self, x) -> int:
        return int(self.sizes[self.labels[encode(x, self.p)]])

    def stabilizer_order(self, x) -> int:
        return self.group_order // self.orbit_size(x)

    def same_orbit(self, x, y) -> bool:
        return bool(self.labels[encode(x, self.p)] == self.labels[encode(y, self.p)])

    def scalar_set(self, x) -> list[int]:
        x = np.asarray(x, dtype=np.int64)
        return [c for c in range(1, self.p) if self.same_orbit(x, c * x)]

    @property
    def n_orbits(self) -> int:
        return len(self.sizes)


def partition(generators, p: int, r: int, group_order: int) -> Partition:
    if p**r > MAX_BRUTE_VECTORS:
        raise CapExceeded(f"p^r = {p**r} vectors exceeds the brute-force limit")
    vecs = all_vectors(r, p)
    n = len(vecs)
    src, dst = [], []
    for g in generators:
        src.append(np.arange(n, dtype=np.int64))
        dst.append(encode(vecs @ (np.asarray(g) % p), p))
    src = np.concatenate(src)
    dst = np.concatenate(dst)
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n))
    _, labels = connected_components(graph, directed=True, connection="weak")
    sizes = np.bincount(labels)
    return Partition(p, labels, sizes, group_order)


def family_generators(datum: RootDatum, p: int, family, m: int = 1) -> list:
    """Generators over ``F_p`` of ``Z o G`` with ``|Z| = m``."""
    family = Family.parse(family)
    simple = [datum.reflection(j) % p for j in range(1, datum.rank + 1)]
    if family is Family.FULL:
        gens = simple
    elif family is Family.DERIVED:
        gens = [(a @ b) % p for a in simple for b in simple]
    else:
        if p % 4 != 1:
            raise TwistedUnavailable(f"the twisted group needs p = 1 mod 4, got p = {p}")
        i = fourth_root(p)
        gens = [(i * s) % p for s in simple]
    if m > 1:
        z = pow(primitive_root(p), (p - 1) // m, p)
        gens = gens + [z * np.eye(datum.rank, dtype=np.int64)]
    return gens


def primitive_root(p: int) -> int:
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in _prime_factors(p - 1)):
            return g
    return 1


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def family_partition(datum: RootDatum, p: int, family, m: int = 1) -> Partition:
    gens = family_generators(datum, p, family, m)
    group = close_group(gens, p)
    return partition(gens, p, datum.rank, group.order)


def brute_orbits(datum: RootDatum, p: int) -> Partition:
    """Partition of ``F_p^r`` into ``W``-orbits, with the group closed explicitly."""
    return family_partition(datum, p, Family.FULL, 1)


def brute_family_data(datum: RootDatum, p: int, family, x) -> FamilyOrbitData:
    part = family_partition(datum, p, family, 1)
    return FamilyOrbitData(part.stabilizer_order(x), len(part.scalar_set(x)))


def brute_verdict(datum: RootDatum, p: int, family, m: int) -> Verdict:
    """Regular-orbit verdict for ``Z o G`` read off an explicit orbit partition."""
    p, family, m = validate(datum, p, family, m)
    part = family_partition(datum, p, family, m)
    hits = np.flatnonzero(part.sizes[part.labels] == part.group_order)
    witness = None
    if len(hits):
        witness = tuple(int(v) for v in all_vectors(datum.rank, p)[hits[0]])
    return Verdict(p, family, m, witness is not None, witness, part.n_orbits)
