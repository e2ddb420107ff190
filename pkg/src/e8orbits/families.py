"""Regular orbits of ``Z o G`` for the three groups built from a Weyl group.

``G`` is one of

* ``Family.FULL`` (``"w"``): the Weyl group ``W`` itself, of structure 2.O8+(2).2 for E8;
* ``Family.DERIVED`` (``"wprime"``): the even-length subgroup ``W'`` = 2.O8+(2);
* ``Family.TWISTED`` (``"wtilde"``): the isoclinic group generated by ``i s_j``
  with ``i`` of multiplicative order 4, i.e. ``W' u i (W \\ W')``; it only
  exists over ``F_p`` with ``p = 1 mod 4``.

Regularity of a central product
-------------------------------
Let ``S = {c : c x in x G}`` and ``Stab = Stab_G(x)``.  Elements of ``Z o G``
are pairs ``(z, g)`` modulo ``Z n G``, and ``-1 = w_0`` is the only
non-trivial scalar in each ``G`` (so ``|Z n G| = gcd(m, 2)``).  The pair
``(z, g)`` fixes ``x`` iff ``x g = z^{-1} x``, which has ``|Stab|`` solutions
when ``z^{-1}`` lies in ``S`` and none otherwise.  All of ``Z``, ``S``,
``{+-1}`` are subgroups of the cyclic group ``F_p^x``, hence::

    |Stab_{Z o G}(x)| = |Stab| * gcd(m, |S|) / gcd(m, 2)

and ``x`` has a regular orbit iff ``|Stab| * gcd(m, |S|) == gcd(m, 2)``.
Since ``-1`` is in ``S`` this forces ``|Stab| = 1``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable

from .alcove import (
    EVEN,
    ODD,
    StabilizerInfo,
    TransporterTable,
    check_prime,
    enumerate_alcove_points,
    is_prime,
    scalar_transporter_table,
)
from .errors import InvalidPrime, InvalidZOrder, NoFourthRoot, TwistedUnavailable
from .rootdata import RootDatum


class Family(enum.Enum):
    DERIVED = "wprime"
    FULL = "w"
    TWISTED = "wtilde"

    @classmethod
    def parse(cls, value) -> "Family":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown family {value!r}; use wprime, w or wtilde") from None


@dataclass(frozen=True)
class FamilyOrbitData:
    stab_order: int
    scalar_order: int


@dataclass(frozen=True)
class Verdict:
    p: int
    family: Family
    m: int
    regular: bool
    witness: tuple | None
    points_examined: int
    witness_data: FamilyOrbitData | None = field(default=None, compare=False)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "family": self.family.value,
            "z_order": self.m,
            "regular": self.regular,
            "witness": list(self.witness) if self.witness is not None else None,
            "points_examined": self.points_examined,
        }


def fourth_root(p: int) -> int:
    """Smallest residue of multiplicative order 4 modulo ``p``."""
    p = check_prime(p)
    if p % 4 != 1:
        raise NoFourthRoot(f"F_{p} has no element of order 4 (p = {p % 4} mod 4)")
    for c in range(2, p):
        if c * c % p == p - 1:
            return c
    raise AssertionError("unreachable for p = 1 mod 4")


def multiplicative_order(c: int, p: int) -> int:
    c %= p
    if c == 0:
        raise ValueError("0 has no multiplicative order")
    k, v = 1, c
    while v != 1:
        v = v * c % p
        k += 1
    return k


def subgroup_order(elements: Iterable[int], p: int) -> int:
    """Order of the subgroup of the cyclic group ``F_p^x`` generated by ``elements``."""
    out = 1
    for c in elements:
        k = multiplicative_order(c, p)
        out = out * k // gcd(out, k)
    return out


def _parity_counts(stab: StabilizerInfo, entry) -> dict:
    """Number of transporters of each parity inside one present coset."""
    if not entry.present:
        return {EVEN: 0, ODD: 0}
    if stab.parity_split:
        half = stab.order // 2
        return {EVEN: half, ODD: half}
    (par,) = entry.parities
    return {EVEN: int(par == EVEN), ODD: int(par == ODD)}


def family_orbit_data(family, stab: StabilizerInfo, table: TransporterTable, p: int,
                      i: int | None = None) -> FamilyOrbitData:
    """Stabilizer order and scalar-set order of one point for ``family``.

    ``i`` selects the fourth root of unity used for the twisted group; it
    defaults to :func:`fourth_root`.
    """
    family = Family.parse(family)
    present = [c for c, e in table.entries.items() if e.present]
    if family is Family.FULL:
        return FamilyOrbitData(stab.order, len(present))
    if family is Family.DERIVED:
        if stab.parity_split:
            return FamilyOrbitData(stab.order // 2, len(present))
        even = [c for c in present if EVEN in table.entries[c].parities]
        return FamilyOrbitData(1, len(even))
    if p % 4 != 1:
        raise TwistedUnavailable(f"the twisted group needs p = 1 mod 4, got p = {p}")
    if i is None:
        i = fourth_root(p)
    # g = i^par(w) w sends x to c i^par(w) x
    gens = [p - 1]
    for c in present:
        for par in table.entries[c].parities:
            gens.append(c * pow(i, par, p) % p)
    scalar_order = subgroup_order(gens, p)
    # g fixes x iff (w even, x w = x) or (w odd, x w = i^{-1} x)
    inv_i = pow(i, 3, p)
    fixed = _parity_counts(stab, table.entries[1])[EVEN]
    fixed += _parity_counts(stab, table.entries[inv_i])[ODD]
    return FamilyOrbitData(fixed, scalar_order)


def is_regular(data: FamilyOrbitData, m: int, p: int | None = None) -> bool:
    """Whether the point behind ``data`` has a regular ``Z o G`` orbit, ``|Z| = m``."""
    if isinstance(m, bool) or int(m) != m or m < 1:
        raise InvalidZOrder(f"|Z| must be a positive integer, got {m!r}")
    if p is not None and (p - 1) % m:
        raise InvalidZOrder(f"|Z| = {m} does not divide p - 1 = {p - 1}")
    return data.stab_order * gcd(m, data.scalar_order) == gcd(m, 2)


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def validate(datum: RootDatum, p, family, m) -> tuple[int, Family, int]:
    p = check_prime(p)
    family = Family.parse(family)
    if datum.weyl_order % p == 0:
        raise InvalidPrime(f"p = {p} divides |W| = {datum.weyl_order}")
    if isinstance(m, bool) or int(m) != m or m < 1 or (p - 1) % int(m):
        raise InvalidZOrder(f"|Z| = {m!r} must be a positive divisor of p - 1 = {p - 1}")
    if family is Family.TWISTED and p % 4 != 1:
        raise TwistedUnavailable(f"the twisted group needs p = 1 mod 4, got p = {p}")
    return p, family, int(m)


class TableCache:
    """Memoized transporter tables keyed by ``(p, point)``."""

    def __init__(self, datum: RootDatum):
        self.datum = datum
        self._tables: dict = {}

    def __call__(self, x, p: int) -> TransporterTable:
        key = (p, tuple(int(v) for v in x))
        if key not in self._tables:
            self._tables[key] = scalar_transporter_table(self.datum, x, p)
        return self._tables[key]


def _stab_lower_bound(family: Family, stab: StabilizerInfo) -> int:
    if family is Family.FULL:
        return stab.order
    return max(1, stab.order // 2)


def decide_regular(datum: RootDatum, p, family, m, cache: TableCache | None = None) -> Verdict:
    """Search the closed alcove for a point with a regular ``Z o G`` orbit.

    Points whose stabilizer in ``G`` is certainly non-trivial are skipped
    without building a transporter table.
    """
    p, family, m = validate(datum, p, family, m)
    cache = cache or TableCache(datum)
    examined = 0
    for x, stab in enumerate_alcove_points(datum, p):
        examined += 1
        if _stab_lower_bound(family, stab) > 1:
            continue
        data = family_orbit_data(family, stab, cache(x, p), p)
        if is_regular(data, m):
            return Verdict(p, family, m, True, tuple(int(v) for v in x), examined, data)
    return Verdict(p, family, m, False, None, examined)


def families_for(p: int) -> list[Family]:
    fams = [Family.DERIVED, Family.FULL]
    if p % 4 == 1:
        fams.append(Family.TWISTED)
    return fams


def theorem_table(datum: RootDatum, p_range: Iterable[int]) -> list[Verdict]:
    """One verdict per prime in ``p_range`` (coprime to ``|W|``), family and ``|Z|``."""
    rows = []
    cache = TableCache(datum)
    for p in p_range:
        p = int(p)
        if p < 2 or not is_prime(p) or datum.weyl_order % p == 0:
            continue
        for fam in families_for(p):
            for m in divisors(p - 1):
                rows.append(decide_regular(datum, p, fam, m, cache))
    return rows
