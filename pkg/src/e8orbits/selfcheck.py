"""Checks behind ``e8orbits selfcheck``."""
from __future__ import annotations

from .alcove import count_alcove_points, enumerate_alcove_points, reduce_to_alcove
from .families import decide_regular, divisors, families_for
from .oracle import brute_orbits, brute_verdict
from .rootdata import coxeter_length, e8, named_datum, weyl_order_from_marks


def _partition(datum, p):
    total = sum(datum.weyl_order // stab.order for _, stab in enumerate_alcove_points(datum, p))
    return total == p**datum.rank, f"sum |W|/|Stab| = {total}, p^r = {p**datum.rank}"


def _oracle_suite(name):
    datum = named_datum(name)
    mismatches = []
    checked = 0
    for p in (5, 7, 11, 13, 17):
        if datum.weyl_order % p == 0:
            continue
        for fam in families_for(p):
            for m in divisors(p - 1):
                checked += 1
                if decide_regular(datum, p, fam, m).regular != brute_verdict(datum, p, fam, m).regular:
                    mismatches.append((p, fam.value, m))
    return not mismatches, f"{checked} verdicts, mismatches {mismatches}"


def _alcove_vs_brute(name, p):
    datum = named_datum(name)
    part = brute_orbits(datum, p)
    reps = [x for x, _ in enumerate_alcove_points(datum, p, with_stabilizers=False)]
    ok = len(reps) == part.n_orbits
    for x, stab in enumerate_alcove_points(datum, p):
        ok &= part.stabilizer_order(x) == stab.order
    return ok, f"{len(reps)} alcove points vs {part.n_orbits} brute orbits"


def run_checks(level: str = "quick", inject_fault: bool = False):
    """Run the check list for ``level``; returns ``(name, passed, detail)`` triples."""
    d8 = e8()
    checks = []

    def add(name, fn):
        try:
            passed, detail = fn()
        except Exception as exc:  # a crashing check is a failing check
            passed, detail = False, f"raised {type(exc).__name__}: {exc}"
        checks.append((name, bool(passed), detail))

    expected_roots = 241 if inject_fault else 240
    add("E8 root count", lambda: (len(d8.roots) == expected_roots, f"{len(d8.roots)} roots"))
    add("E8 highest coroot", lambda: (d8.marks == (2, 3, 4, 6, 5, 4, 3, 2), str(d8.marks)))
    add("E8 length of s_0", lambda: (coxeter_length(d8, d8.reflection(0)) == 57, "57 expected"))
    add("E8 Weyl order", lambda: (
        d8.weyl_order == weyl_order_from_marks(d8) == 696729600, str(d8.weyl_order)))
    add("E8 reduce(-rho) mod 37", lambda: (
        reduce_to_alcove(d8, -d8.rho, 37).representative.tolist() == [1] * 8, "rho expected"))
    g2 = named_datum("G2")
    for p in (5, 7, 11, 13):
        add(f"G2 partition p={p}", lambda p=p: _partition(g2, p))
    add("G2 alcove vs brute p=7", lambda: _alcove_vs_brute("G2", 7))
    add("G2 oracle verdicts", lambda: _oracle_suite("G2"))
    if level == "full":
        add("F4 alcove vs brute p=13", lambda: _alcove_vs_brute("F4", 13))
        add("F4 oracle verdicts", lambda: _oracle_suite("F4"))
        for p in (11, 13):
            add(f"E8 partition p={p}", lambda p=p: _partition(d8, p))
        add("E8 alcove count p=31", lambda: (count_alcove_points(d8, 31) == sum(
            1 for _ in enumerate_alcove_points(d8, 31, with_stabilizers=False)), "DP vs enumeration"))
    return checks
