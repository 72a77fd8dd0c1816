import math
import random

import numpy as np
import pytest

from trilattice import lattice
from trilattice.errors import CapabilityError
from trilattice.lattice import (
    ConditionReport,
    Family,
    Triple,
    check_condition,
    classify_families,
    enumerate_satisfying,
    orbit,
    verify_range,
)


def brute_holds(n, s, t):
    """Naive oracle: loop every unit in plain Python."""
    for a in range(1, n):
        if math.gcd(a, n) != 1:
            continue
        total = (a * s) % n + (a * t) % n
        if not n < 2 * total < 3 * n:
            return False, a
    return True, None


def brute_satisfying_pairs(n):
    """Grid oracle: all (s, t) at once, per-unit full masks, no pruning."""
    if n == 1:
        return {(1, 1)}
    us = [a for a in range(1, n) if math.gcd(a, n) == 1]
    vals = np.arange(1, n + 1, dtype=np.int64)
    ok = np.ones((n, n), dtype=bool)
    for a in us:
        r = (a * vals) % n
        sums = r[:, None] + r[None, :]
        ok &= (n < 2 * sums) & (2 * sums < 3 * n)
    g = np.gcd(np.gcd(vals[:, None], vals[None, :]), n)
    ok &= g == 1
    si, ti = np.nonzero(ok)
    return {(int(a) + 1, int(b) + 1) for a, b in zip(si, ti)}


def test_triple_validation():
    Triple(12, 1, 1)
    Triple(5, 5, 3)   # s = n allowed when the gcd stays 1
    with pytest.raises(ValueError):
        Triple(0, 1, 1)
    with pytest.raises(ValueError):
        Triple(5, 0, 1)
    with pytest.raises(ValueError):
        Triple(5, 1, 6)
    with pytest.raises(ValueError):
        Triple(6, 2, 4)  # gcd(6, 2, 4) = 2


def test_check_condition_examples():
    rep = check_condition(Triple(5, 1, 4))
    assert rep.holds and rep.witness is None
    assert rep.min_sum == rep.max_sum == 5

    rep = check_condition(Triple(12, 1, 1))
    assert not rep.holds and rep.witness == 1
    assert rep.min_sum is None and rep.max_sum is None

    rep = check_condition(Triple(8, 1, 5), "full_scan")
    assert rep.holds
    assert (rep.min_sum, rep.max_sum) == (6, 10)


def test_check_condition_modes_agree():
    for n in range(1, 41):
        for s in range(1, n + 1):
            for t in range(1, n + 1):
                if math.gcd(math.gcd(s, t), n) != 1:
                    continue
                tr = Triple(n, s, t)
                early = check_condition(tr, "early_exit")
                full = check_condition(tr, "full_scan")
                want_holds, want_witness = brute_holds(n, s, t)
                assert early.holds == full.holds == want_holds
                assert early.witness == full.witness == want_witness
                if want_holds and n > 1:
                    assert n < 2 * full.min_sum
                    assert 2 * full.max_sum < 3 * n


def test_check_condition_mode_error():
    with pytest.raises(ValueError):
        check_condition(Triple(5, 1, 4), "fast")


def test_n1_vacuous():
    rep = check_condition(Triple(1, 1, 1))
    assert rep.holds and rep.witness is None


def test_swap_symmetry():
    rng = random.Random(411)
    for _ in range(400):
        n = rng.randrange(2, 200)
        s = rng.randrange(1, n + 1)
        t = rng.randrange(1, n + 1)
        if math.gcd(math.gcd(s, t), n) != 1:
            continue
        a = check_condition(Triple(n, s, t))
        b = check_condition(Triple(n, t, s))
        assert a.holds == b.holds


def test_reflection_identity():
    # pairing a with n - a forces min_sum + max_sum = 2n when s, t < n
    rng = random.Random(902)
    for _ in range(300):
        n = rng.randrange(3, 300)
        s = rng.randrange(1, n)
        t = rng.randrange(1, n)
        if math.gcd(math.gcd(s, t), n) != 1:
            continue
        rep = check_condition(Triple(n, s, t), "full_scan")
        assert rep.min_sum + rep.max_sum == 2 * n


def test_classify_examples():
    assert classify_families(Triple(5, 1, 4)) == {Family.SMALL_N, Family.SUM}
    assert classify_families(Triple(100, 49, 51)) == {Family.SUM}
    # bare-integer form: family relations are defined regardless of the
    # gcd-1 restriction that Triple construction enforces
    assert classify_families(200, 30, 130) == {Family.HALF_DIFF}
    assert classify_families(Triple(3, 1, 1)) == {
        Family.SMALL_N, Family.S_PLUS_2T, Family.TWO_S_PLUS_T}


def test_classify_congruence_forms():
    # the relations are congruences mod n: s + 2t = 158 = 2n here, and
    # the orbit member (79, 1, 39) realizes the equality s + 2t = n
    assert classify_families(Triple(79, 2, 78)) == {Family.S_PLUS_2T}
    # t = n/2 makes a*t mod n equal to n/2 at every odd unit, so the
    # condition holds for any s; the half-modulus branch covers it
    assert classify_families(Triple(80, 1, 40)) == {Family.HALF_DIFF}
    assert check_condition(Triple(80, 1, 40)).holds
    rep = check_condition(Triple(80, 1, 40), mode="full_scan")
    assert rep.min_sum == 41 and rep.max_sum == 119


def test_half_diff_requires_even_n():
    # |7 - 14| would be n/2 if n were even; n = 21 odd, so no HALF_DIFF
    fams = classify_families(Triple(21, 16, 5))
    assert Family.HALF_DIFF not in fams


def test_orbit_examples():
    assert orbit(Triple(5, 1, 4)) == {
        Triple(5, 1, 4), Triple(5, 2, 3), Triple(5, 3, 2), Triple(5, 4, 1)}
    assert orbit(Triple(1, 1, 1)) == {Triple(1, 1, 1)}
    assert orbit(Triple(6, 3, 2)) == {Triple(6, 3, 2), Triple(6, 3, 4)}


def test_orbit_residue_zero_maps_to_n():
    # s = n stays representable: unit multiples of n are all congruent 0
    members = orbit(Triple(4, 4, 1))
    assert members == {Triple(4, 4, 1), Triple(4, 4, 3)}


def test_orbit_invariance():
    rng = random.Random(333)
    for _ in range(200):
        n = rng.randrange(2, 120)
        s = rng.randrange(1, n + 1)
        t = rng.randrange(1, n + 1)
        if math.gcd(math.gcd(s, t), n) != 1:
            continue
        base = check_condition(Triple(n, s, t)).holds
        for member in orbit(Triple(n, s, t)):
            assert check_condition(member).holds == base


def test_engines_agree_small():
    for n in range(1, 121):
        direct = lattice._scan_direct(n)
        via_orbits = lattice._scan_orbit(n)
        assert np.array_equal(direct, via_orbits), f"engines disagree at n={n}"


def test_scan_matches_grid_oracle():
    for n in range(1, 61):
        got = {(int(s), int(t)) for s, t in lattice._scan_direct(n).tolist()}
        assert got == brute_satisfying_pairs(n), f"n={n}"


def test_enumerate_examples():
    assert [(tr.s, tr.t) for tr in enumerate_satisfying(2)] == [(1, 1)]
    pairs4 = [(tr.s, tr.t) for tr in enumerate_satisfying(4)]
    assert (1, 3) in pairs4 and (3, 1) in pairs4
    assert len(enumerate_satisfying(5)) == 12
    # ascending lexicographic order
    pairs5 = [(tr.s, tr.t) for tr in enumerate_satisfying(5)]
    assert pairs5 == sorted(pairs5)


def test_enumerate_79_all_classified():
    for tr in enumerate_satisfying(79):
        assert classify_families(tr), f"unclassified {tr}"


def test_satisfying_triples_avoid_boundary():
    # for n >= 2 no satisfying triple has s = n or t = n, which makes the
    # a = 1 sum window a true necessary filter
    for n in range(2, 61):
        for tr in enumerate_satisfying(n):
            assert tr.s < n and tr.t < n
            assert n < 2 * (tr.s + tr.t) < 3 * n


def test_enumerate_cap():
    with pytest.raises(CapabilityError):
        enumerate_satisfying(10**4 + 1)
    with pytest.raises(ValueError):
        enumerate_satisfying(0)


def test_verify_range_single_n():
    rep = verify_range(5, 5)
    assert rep.counts == {5: 12}
    assert rep.violations == [] and rep.small_n_exceptions == []


def test_verify_range_n1():
    rep = verify_range(1, 1)
    assert rep.counts == {1: 1}
    assert rep.violations == []
    # every congruence holds mod 1, so the degenerate triple is
    # family-classified rather than exceptional
    assert rep.small_n_exceptions == []


def test_verify_range_79_100():
    rep = verify_range(79, 100)
    assert rep.violations == []
    assert rep.small_n_exceptions == []


def test_verify_range_collects_small_n_exceptions():
    rep = verify_range(2, 12)
    assert rep.violations == []
    got = {(tr.n, tr.s, tr.t) for tr in rep.small_n_exceptions}
    # the first genuinely sporadic modulus is 9
    assert (9, 2, 3) in got
    assert min(n for n, s, t in got) == 9
    for n, s, t in got:
        assert n <= 78
        assert check_condition(Triple(n, s, t)).holds
        # exceptional means outside every algebraic family
        assert classify_families(n, s, t) == {Family.SMALL_N}


def test_small_n_exception_catalogue():
    # the complete catalogue of condition-satisfying triples outside all
    # algebraic families; the largest modulus carrying any is exactly 78,
    # the cutoff that the SMALL_N clause exists for
    rep = verify_range(2, 78)
    assert rep.violations == []
    counts = {}
    for tr in rep.small_n_exceptions:
        counts[tr.n] = counts.get(tr.n, 0) + 1
    assert counts == {9: 12, 12: 24, 14: 12, 15: 24, 18: 24, 20: 48,
                      21: 48, 24: 48, 30: 120, 42: 156, 60: 96, 78: 48}
    assert len(rep.small_n_exceptions) == 660
    # spot-check the largest sporadic modulus against the direct scan
    assert check_condition(Triple(78, 1, 55), mode="full_scan").holds


def test_verify_range_worker_independence():
    one = verify_range(2, 60, workers=1)
    two = verify_range(2, 60, workers=2)
    assert one.counts == two.counts
    assert one.violations == two.violations
    assert one.small_n_exceptions == two.small_n_exceptions
    for n in one.counts:
        assert np.array_equal(one.satisfying[n], two.satisfying[n])


def test_verify_range_orbit_engine_equivalence():
    direct = verify_range(2, 100, use_orbits=False)
    orbital = verify_range(2, 100, use_orbits=True)
    assert direct.counts == orbital.counts
    for n in direct.counts:
        assert np.array_equal(direct.satisfying[n], orbital.satisfying[n])


def test_verify_range_argument_errors():
    with pytest.raises(ValueError):
        verify_range(5, 2)
    with pytest.raises(ValueError):
        verify_range(0, 5)
    with pytest.raises(ValueError):
        verify_range(2, 5, workers=0)
    with pytest.raises(CapabilityError):
        verify_range(2, lattice.RANGE_N_CAP + 1)
