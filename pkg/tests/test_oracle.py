import numpy as np
import pytest

from e8orbits.alcove import enumerate_alcove_points, scalar_transporter_table
from e8orbits.errors import CapExceeded, TwistedUnavailable
from e8orbits.families import Family, family_orbit_data
from e8orbits.oracle import (
    all_vectors,
    brute_orbits,
    close_group,
    encode,
    family_generators,
    family_partition,
    partition,
    primitive_root,
)


def test_close_group_small(g2, f4):
    assert close_group([g2.reflection(1), g2.reflection(2)]).order == 12
    assert close_group([f4.reflection(j) for j in range(1, 5)]).order == 1152
    assert close_group([np.array([[0, 1], [1, 0]])]).order == 2
    with pytest.raises(CapExceeded):
        close_group([f4.reflection(j) for j in range(1, 5)], cap=100)


def test_encode_roundtrip():
    vecs = all_vectors(3, 5)
    assert np.array_equal(encode(vecs, 5), np.arange(125))


def test_primitive_root():
    for p in (5, 7, 11, 13, 17, 29, 31):
        g = primitive_root(p)
        assert len({pow(g, k, p) for k in range(p - 1)}) == p - 1


def test_partitions_cover_space(g2):
    for p in (5, 7):
        part = brute_orbits(g2, p)
        assert part.sizes.sum() == p**2
        # orbit-stabilizer on every point
        for x in all_vectors(2, p):
            assert part.orbit_size(x) * part.stabilizer_order(x) == 12


def test_family_group_orders(f4, g2):
    for d in (g2, f4):
        w = d.weyl_order
        p = 13
        orders = {fam: close_group(family_generators(d, p, fam), p).order for fam in Family}
        assert orders == {Family.FULL: w, Family.DERIVED: w // 2, Family.TWISTED: w}
        # Z o W with |Z| = 4 shares only -1 with W
        assert close_group(family_generators(d, p, Family.FULL, 4), p).order == 2 * w


def test_twisted_needs_fourth_root(g2):
    with pytest.raises(TwistedUnavailable):
        family_generators(g2, 7, Family.TWISTED)


def test_partition_limit(f4):
    with pytest.raises(CapExceeded):
        partition([np.eye(4, dtype=int)], 19, 4, 1)


@pytest.mark.parametrize("name,p", [("G2", 7), ("G2", 13), ("F4", 5), ("F4", 7), ("F4", 13)])
@pytest.mark.parametrize("family", list(Family))
def test_family_data_matches_brute(name, p, family):
    from e8orbits.rootdata import named_datum
    d = named_datum(name)
    if family is Family.TWISTED and p % 4 != 1:
        pytest.skip("no fourth root of unity")
    part = family_partition(d, p, family)
    rng = np.random.default_rng(p)
    points = [(x, s) for x, s in enumerate_alcove_points(d, p) if x.any()]
    points += [(v, None) for v in rng.integers(-50, 50, size=(20, d.rank)) if (v % p).any()]
    for x, _ in points:
        table = scalar_transporter_table(d, x, p)
        data = family_orbit_data(family, table.stabilizer, table, p)
        assert data.stab_order == part.stabilizer_order(x)
        assert data.scalar_order == len(part.scalar_set(x))
