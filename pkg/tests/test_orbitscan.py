import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from e8orbits.alcove import scalar_transporter_table
from e8orbits.orbitscan import ScanConfig, ScanSummary, children, frontier, gcd_signature, merge, scan_rho_orbit

from oracles import weyl_group_over_z


def test_gcd_signature():
    assert gcd_signature([1] * 8) == 0
    assert gcd_signature([3, 5, 7]) == 2
    assert gcd_signature([-1, 1, 2, 1, 1, 1, 1, 1]) == 1
    assert gcd_signature([0, 31, -62, 93]) == 31
    with pytest.raises(ValueError):
        gcd_signature([4])


def test_children_of_rho(e8):
    kids = children(e8, e8.rho)
    assert [j for j, _ in kids] == list(range(1, 9))
    for j, z in kids:
        assert z[j - 1] == -1


def test_children_rule(e8):
    # y s_1 has a negative first coordinate, so extending by s_2 keeps it as the leading negative
    y = children(e8, e8.rho)[0][1]
    assert [j for j, _ in children(e8, y)] == [3]


@pytest.mark.parametrize("small", ["G2", "F4"], indirect=True)
def test_tree_covers_orbit_once(small):
    summary = scan_rho_orbit(small, ScanConfig(workers=1, split_depth=0))
    assert summary.node_count == small.weyl_order
    orbit = {tuple(small.rho @ g) for g in weyl_group_over_z(small).elements}
    assert len(orbit) == small.weyl_order
    # depth profile is the length generating function, symmetric about the middle
    prof = summary.depth_profile
    assert sum(prof) == small.weyl_order and prof == prof[::-1]
    assert len(prof) == small.n_positive + 1


def test_frontier_partitions_tree(f4):
    prof = scan_rho_orbit(f4, ScanConfig(workers=1, split_depth=0)).depth_profile
    for depth in range(8):
        upper, roots = frontier(f4, depth)
        assert len(upper) == sum(prof[:depth])
        assert len(roots) == prof[depth]
        assert len({tuple(y) for y in roots}) == len(roots)


@pytest.mark.parametrize("small,primes", [("G2", [7]), ("F4", [13, 17, 19])], indirect=["small"])
def test_scan_matches_transporter_tables(small, primes):
    summary = scan_rho_orbit(small, ScanConfig(workers=1, split_depth=1))
    for p in primes:
        table = scalar_transporter_table(small, small.rho, p)
        seen = summary.scalars(p)
        assert sorted(seen) == table.present()
        for c, parities in seen.items():
            assert parities == table.entries[c].parities


def test_scan_identity_hits(e8):
    s = scan_rho_orbit(e8, ScanConfig(workers=1, max_depth=6))
    for p in (2, 3, 5, 31):
        assert s.hits[p][1 % p][0] >= 1


def _fingerprint(s):
    return s.to_dict(include_elapsed=False)


@pytest.mark.parametrize("workers,split", [(2, 2), (3, 4), (5, 3)])
def test_workers_do_not_change_results(e8, workers, split):
    base = scan_rho_orbit(e8, ScanConfig(workers=1, split_depth=split, max_depth=14))
    other = scan_rho_orbit(e8, ScanConfig(workers=workers, split_depth=split, max_depth=14))
    assert _fingerprint(base) == _fingerprint(other)
    assert base.node_count == sum(base.depth_profile)


def test_split_depth_does_not_change_results(f4):
    outs = [_fingerprint(scan_rho_orbit(f4, ScanConfig(workers=2, split_depth=d))) for d in (0, 1, 3, 7)]
    assert all(o == outs[0] for o in outs)


def poincare(degrees, top):
    """Coefficients up to ``q^top`` of prod (1 - q^d) / (1 - q)."""
    poly = np.array([1], dtype=object)
    for d in degrees:
        poly = np.convolve(poly, np.ones(d, dtype=object))
    return [int(v) for v in poly[: top + 1]]


def test_depth_limited_profile(e8):
    s = scan_rho_orbit(e8, ScanConfig(workers=1, max_depth=10))
    expected = poincare([2, 8, 12, 14, 18, 20, 24, 30], 10)
    assert s.depth_profile == expected
    assert s.node_count == sum(expected)


def test_config_validation():
    for bad in (dict(workers=0), dict(split_depth=-1), dict(prime_cap=1), dict(max_depth=-2)):
        with pytest.raises(ValueError):
            ScanConfig(**bad)


def _summary(draw_hits, n, prof, mg, ma):
    return ScanSummary(node_count=n, hits=draw_hits, max_gcd=mg, max_abs_coord=ma, depth_profile=prof)


hits_st = st.dictionaries(
    st.sampled_from([2, 3, 5, 7, 29, 31]),
    st.dictionaries(st.integers(1, 30), st.lists(st.integers(0, 5), min_size=2, max_size=2), max_size=4),
    max_size=4,
)
summary_st = st.builds(_summary, hits_st, st.integers(0, 10**9),
                       st.lists(st.integers(0, 100), max_size=6), st.integers(0, 99), st.integers(0, 99))


@settings(max_examples=500, deadline=None)
@given(summary_st, summary_st, summary_st)
def test_merge_is_commutative_and_associative(a, b, c):
    assert _fingerprint(merge(a, b)) == _fingerprint(merge(b, a))
    assert _fingerprint(merge(merge(a, b), c)) == _fingerprint(merge(a, merge(b, c)))
    assert _fingerprint(merge(a, ScanSummary())) == _fingerprint(a)


def test_exceptional_primes():
    s = ScanSummary(hits={29: {1: [1, 1], 28: [1, 1]}, 37: {1: [1, 0], 36: [1, 0]}, 31: {5: [1, 0]}})
    assert s.exceptional_primes() == [29, 31]
