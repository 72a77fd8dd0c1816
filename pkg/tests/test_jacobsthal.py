import math
import random

import pytest

from trilattice.errors import CapabilityError
from trilattice.jacobsthal import (
    LINEAR_BOUND_EXCEPTIONS,
    GapCache,
    check_f_bounds,
    check_g_linear_bound,
    check_g_omega_monotone,
    f_least,
    g_table,
    jacobsthal_g,
    primorial_g,
    _f_table,
    _radical,
)


def brute_g(n):
    """Naive oracle: coprime positions over two periods, plain gcd loop."""
    pos = [x for x in range(0, 2 * n + 1) if math.gcd(x, n) == 1]
    return max(b - a for a, b in zip(pos, pos[1:]))


def brute_f(n):
    a = 1
    while math.gcd(a * (a + 2), n) != 1:
        a += 1
    return a


def assert_gap_certificate(res):
    """The attaining pair is re-checkable without the scan: endpoints
    coprime, interior all sharing a factor, width equal to g."""
    x, y = res.attaining_pair
    assert y - x == res.g
    assert math.gcd(x, res.n) == 1 or res.n == 1
    assert math.gcd(y, res.n) == 1
    for z in range(x + 1, y):
        assert math.gcd(z, res.n) > 1


# ---------------------------------------------------------------------------
# g(n)
# ---------------------------------------------------------------------------


def test_g_examples():
    assert jacobsthal_g(12).g == 4
    assert jacobsthal_g(2).g == 2
    assert jacobsthal_g(30).g == 6
    res1 = jacobsthal_g(1)
    assert res1.g == 1 and res1.attaining_pair == (1, 2)


def test_g_matches_oracle_small():
    for n in range(1, 301):
        res = jacobsthal_g(n)
        assert res.g == brute_g(n), n
        assert_gap_certificate(res)


def test_g_matches_oracle_sampled():
    rng = random.Random(1105)
    for _ in range(60):
        n = rng.randrange(301, 5001)
        assert jacobsthal_g(n).g == brute_g(n), n


def test_g_depends_only_on_radical():
    for n, rad in [(12, 6), (8, 2), (9, 3), (1000, 10), (2**20, 2),
                   (360, 30)]:
        assert _radical(n)[0] == rad
        assert jacobsthal_g(n).g == jacobsthal_g(rad).g


def test_g_argument_errors():
    with pytest.raises(ValueError):
        jacobsthal_g(0)
    with pytest.raises(ValueError):
        f_least(0)


def test_g_radical_cap():
    # 15485863 is prime, so it is its own radical and exceeds the cap
    with pytest.raises(CapabilityError):
        jacobsthal_g(15485863)


def test_gap_cache_lru():
    cache = GapCache(maxsize=2)
    cache.put(2, (2, (1, 3)))
    cache.put(6, (4, (1, 5)))
    assert cache.get(2) is not None   # refreshes 2
    cache.put(30, (6, (1, 7)))        # evicts 6, the stalest
    assert cache.get(6) is None
    assert cache.get(2) is not None
    assert len(cache) == 2


def test_g_private_cache_isolated():
    cache = GapCache(maxsize=1)
    assert jacobsthal_g(6, cache=cache).g == 4
    assert jacobsthal_g(10, cache=cache).g == 4
    assert len(cache) == 1


# ---------------------------------------------------------------------------
# f(n)
# ---------------------------------------------------------------------------


def test_f_examples():
    assert f_least(1) == 1
    assert f_least(3) == 2
    assert f_least(35) == 1
    assert f_least(105) == 2
    assert f_least(1024) == 1
    # n = 2*3*5*7: a must be odd and 2 mod 3, which leaves 5, 11, 17, ...
    # and 5, 7 knock out a = 5; the first admissible a is 11 (11*13 = 143)
    assert f_least(210) == 11


def test_f_matches_oracle_sampled():
    rng = random.Random(915)
    for _ in range(80):
        n = rng.randrange(1, 10**6)
        assert f_least(n) == brute_f(n), n


def test_f_table_matches_f_least():
    table = _f_table(3000)
    for n in range(1, 3001):
        assert int(table[n]) == f_least(n), n


def test_f_congruence_when_divisible_by_three():
    # a(a+2) coprime to 3 forces a = 2 (mod 3)
    table = _f_table(10**4)
    for n in range(3, 10**4 + 1, 3):
        assert int(table[n]) % 3 == 2, n


# ---------------------------------------------------------------------------
# range checks
# ---------------------------------------------------------------------------


def test_g_table_matches_scalar():
    table = g_table(2000)
    for n in range(1, 2001):
        assert int(table[n]) == jacobsthal_g(n).g, n


def test_linear_bound_small_range():
    assert check_g_linear_bound(100) == []
    assert check_g_linear_bound(1) == []


def test_linear_bound_exceptions_are_real():
    # each excluded n genuinely breaks 5g(n) <= 2n, so the exclusion
    # list is doing actual work
    for n in sorted(LINEAR_BOUND_EXCEPTIONS):
        assert 5 * jacobsthal_g(n).g > 2 * n, n


def test_f_bounds_clean_to_ten_thousand():
    assert check_f_bounds(10**4) == []


def test_range_caps():
    with pytest.raises(CapabilityError):
        g_table(10**6 + 1)
    with pytest.raises(CapabilityError):
        check_g_linear_bound(2 * 10**6)
    with pytest.raises(CapabilityError):
        check_f_bounds(2 * 10**6)
    with pytest.raises(CapabilityError):
        check_g_omega_monotone(3, 2 * 10**6)


# ---------------------------------------------------------------------------
# primorials and the omega comparison
# ---------------------------------------------------------------------------


def test_primorial_values():
    expected = {1: (2, 2), 2: (6, 4), 3: (30, 6), 4: (210, 10),
                5: (2310, 14)}
    for k, (value, g) in expected.items():
        res = primorial_g(k)
        assert res.n == value and res.g == g
        assert_gap_certificate(res)


def test_primorial_k8():
    res = primorial_g(8)
    assert res.n == 9699690
    assert res.g == 34
    assert_gap_certificate(res)


def test_primorial_k_range():
    with pytest.raises(CapabilityError):
        primorial_g(0)
    with pytest.raises(CapabilityError):
        primorial_g(9)


def test_omega_monotone_small():
    assert check_g_omega_monotone(1, 10**4) == []
    assert check_g_omega_monotone(2, 10**4) == []
    # the bound g(P_2) = 4 is attained inside the range, at n = 6
    assert jacobsthal_g(6).g == primorial_g(2).g
