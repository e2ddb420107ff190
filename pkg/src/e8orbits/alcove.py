"""Alcove geometry of the affine Weyl group ``W_p``.

``W_p`` is generated by ``W`` and translations by ``pX``.  Integral points of
the closed bottom alcove

    0 <= x_j,    <x, highest coroot> <= p

index the ``W``-orbits on ``X / pX``.  The stabilizer of a closed-alcove
point in ``W`` is generated by the ``s_j`` whose wall contains it, together
with ``s_0`` when ``<x, highest coroot> = p``.  A non-trivial stabilizer is
thus generated by reflections, so it contains odd elements and meets both
cosets of the even subgroup in equal halves; ``families`` relies on this.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

from . import kernels
from .errors import (
    BoundExceeded,
    InvalidPrime,
    IterationCap,
    NotReduced,
    UnsupportedLattice,
    ZeroVector,
)
from .rootdata import RootDatum, classify_subdiagram, coxeter_length

DEFAULT_MAX_STEPS = 10**6
ENUMERATION_BOUND = 257

EVEN, ODD = 0, 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_prime(p) -> int:
    if isinstance(p, bool) or int(p) != p or not is_prime(int(p)):
        raise InvalidPrime(f"{p!r} is not a prime")
    return int(p)


def _require_simply_connected(datum: RootDatum) -> None:
    if datum.connection_index != 1:
        raise UnsupportedLattice(
            f"root lattice has index {datum.connection_index} in the weight lattice; "
            "alcove operations need index 1"
        )


def _vec(x, datum: RootDatum) -> np.ndarray:
    v = np.asarray(x, dtype=np.int64).reshape(-1)
    if v.shape[0] != datum.rank:
        raise ValueError(f"expected {datum.rank} coordinates, got {v.shape[0]}")
    return v


@dataclass(frozen=True)
class ReductionResult:
    representative: np.ndarray
    steps: int
    linear_part: np.ndarray
    length: int
    parity: int
    word: tuple = field(repr=False)
    linear_inverse: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class StabilizerInfo:
    J: tuple
    order: int
    parity_split: bool


@dataclass(frozen=True)
class TransporterEntry:
    present: bool
    parities: frozenset = frozenset()
    canonical_length: int | None = None


@dataclass(frozen=True)
class TransporterTable:
    base: np.ndarray
    p: int
    representative: np.ndarray
    stabilizer: StabilizerInfo
    entries: dict

    def present(self) -> list[int]:
        return [c for c, e in self.entries.items() if e.present]

    def presence_order(self) -> int:
        return len(self.present())


def pairing_max(datum: RootDatum, x) -> int:
    return int(_vec(x, datum) @ datum.highest_coroot)


def in_closed_alcove(datum: RootDatum, x, p: int) -> bool:
    x = _vec(x, datum)
    return bool(np.all(x >= 0) and int(x @ datum.highest_coroot) <= p)


def in_open_alcove(datum: RootDatum, x, p: int) -> bool:
    x = _vec(x, datum)
    return bool(np.all(x > 0) and int(x @ datum.highest_coroot) < p)


def reduce_to_alcove(datum: RootDatum, x, p: int, max_steps: int = DEFAULT_MAX_STEPS) -> ReductionResult:
    """Closed-alcove representative of ``x`` modulo ``pX`` and the word reaching it.

    Coordinates are first translated into ``[0, p)`` unless ``x`` already lies
    in the closed alcove.  Then, repeatedly, the smallest index with a negative
    coordinate is reflected, or, when no coordinate is negative and
    ``<x, alpha_0^vee> > p``, the affine wall of ``alpha_0`` is crossed.
    """
    _require_simply_connected(datum)
    x = _vec(x, datum)
    status, rep, word, steps, L, Linv = kernels.reduce_kernel(
        x, p, datum.cartan, datum.alpha0, datum.highest_coroot, max_steps
    )
    if status != kernels.REDUCE_OK:
        raise IterationCap(f"reduction of {x.tolist()} mod {p} exceeded {max_steps} steps")
    length = coxeter_length(datum, L)
    return ReductionResult(
        representative=np.asarray(rep),
        steps=int(steps),
        linear_part=np.asarray(L),
        length=length,
        parity=int(steps) & 1,
        word=tuple(int(k) for k in word),
        linear_inverse=np.asarray(Linv),
    )


def representative(datum: RootDatum, x, p: int) -> tuple:
    """Only the representative of ``x``, as a hashable tuple."""
    return tuple(int(v) for v in reduce_to_alcove(datum, x, p).representative)


def wall_set(datum: RootDatum, x, p: int) -> tuple:
    x = _vec(x, datum)
    J = [j + 1 for j in range(datum.rank) if x[j] == 0]
    if int(x @ datum.highest_coroot) == p:
        J.insert(0, 0)
    return tuple(J)


def stabilizer_info(datum: RootDatum, rep, p: int) -> StabilizerInfo:
    """Stabilizer in ``W`` of a closed-alcove point modulo ``p``."""
    if not in_closed_alcove(datum, rep, p):
        raise NotReduced(f"{_vec(rep, datum).tolist()} is not in the closed alcove for p={p}")
    J = wall_set(datum, rep, p)
    order = _subdiagram_order(datum, J)
    return StabilizerInfo(J=J, order=order, parity_split=order > 1)


def _subdiagram_order(datum: RootDatum, J: tuple) -> int:
    return _order_cache(datum)(J)


_ORDER_CACHES: dict = {}


def _order_cache(datum: RootDatum):
    key = id(datum)
    if key not in _ORDER_CACHES:
        @lru_cache(maxsize=None)
        def order(J):
            return classify_subdiagram(datum, J)[1]
        _ORDER_CACHES[key] = (datum, order)
    return _ORDER_CACHES[key][1]


def _compositions(marks: tuple, total: int, start: int) -> Iterator[list]:
    # lexicographic: x_start runs upwards, later coordinates absorb the rest
    m = marks[start]
    if start == len(marks) - 1:
        if total % m == 0:
            yield [total // m]
        return
    for v in range(total // m + 1):
        for tail in _compositions(marks, total - v * m, start + 1):
            yield [v] + tail


def enumerate_alcove_points(datum: RootDatum, p: int, bound: int = ENUMERATION_BOUND,
                            with_stabilizers: bool = True):
    """Yield every integral point of the closed alcove for ``p``.

    Points come ordered by ``<x, alpha_0^vee>`` and then lexicographically,
    each paired with its :class:`StabilizerInfo` (or ``None`` when
    ``with_stabilizers`` is false).
    """
    _require_simply_connected(datum)
    if p > bound:
        raise BoundExceeded(f"p={p} exceeds the enumeration bound {bound}")
    marks = datum.marks
    for level in range(p + 1):
        for coords in _compositions(marks, level, 0):
            x = np.array(coords, dtype=np.int64)
            if with_stabilizers:
                J = tuple(([0] if level == p else []) + [j + 1 for j, v in enumerate(coords) if v == 0])
                order = _subdiagram_order(datum, J)
                yield x, StabilizerInfo(J=J, order=order, parity_split=order > 1)
            else:
                yield x, None


def count_alcove_points(datum: RootDatum, p: int) -> int:
    """Number of integral closed-alcove points, by dynamic programming on the marks."""
    ways = [1] + [0] * p
    for m in datum.marks:
        for v in range(m, p + 1):
            ways[v] += ways[v - m]
    return sum(ways)


def scalar_transporter_table(datum: RootDatum, x, p: int) -> TransporterTable:
    """For each scalar ``c`` in ``1..p-1``, decide whether ``c x`` lies in ``x W`` mod ``p``.

    The canonical transporter for a present ``c`` is
    ``L_x * L_cx^{-1}`` built from the two reduction words, so
    ``x t = c x (mod p)``.
    """
    p = check_prime(p)
    x = _vec(x, datum)
    if np.all(x % p == 0):
        raise ZeroVector("the zero vector has no scalar transporters")
    base = reduce_to_alcove(datum, x, p)
    rep = base.representative
    stab = stabilizer_info(datum, rep, p)
    entries = {}
    for c in range(1, p):
        red = reduce_to_alcove(datum, (c * x) % p, p)
        if not np.array_equal(red.representative, rep):
            entries[c] = TransporterEntry(present=False)
            continue
        t = base.linear_part @ red.linear_inverse
        parity = base.parity ^ red.parity
        if stab.parity_split:
            parities = frozenset((EVEN, ODD))
        else:
            parities = frozenset((parity,))
        entries[c] = TransporterEntry(True, parities, coxeter_length(datum, t))
    return TransporterTable(base=x, p=p, representative=rep, stabilizer=stab, entries=entries)
