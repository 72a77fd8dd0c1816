"""Maximal coprime gaps g(n), the companion quantity f(n), and their bounds.

g(n) is the largest difference between consecutive integers coprime to n.
It only depends on the radical of n, so single values come from a direct
scan of one squarefree period and range checks come from a batch engine
that extends gap structures prime by prime instead of rescanning.

f(n) is the least a >= 1 with a(a+2) coprime to n. The checks at the bottom
of the module verify the inequalities relating f and g to n that the rest
of the toolkit relies on.
"""

from __future__ import annotations

import math
from collections import OrderedDict
from dataclasses import dataclass

import numpy as np

from . import arith
from .errors import CapabilityError

RADICAL_CAP = 10**7          # largest radical a direct scan will attempt
RANGE_CAP = 10**6            # largest limit for batch range checks
PRIMORIAL_MAX_K = 8          # product of the first 8 primes is the last
                             # one whose full period fits a desk-scale scan
LINEAR_BOUND_EXCEPTIONS = frozenset({1, 2, 3, 4, 6})


@dataclass(frozen=True)
class GapScanResult:
    """g(n) with a certificate: a pair of consecutive coprime integers
    realizing the gap, re-checkable without repeating the scan."""

    n: int
    g: int
    attaining_pair: tuple


class GapCache:
    """Bounded LRU memo for gap scans, keyed by radical."""

    def __init__(self, maxsize: int = 4096):
        self.maxsize = maxsize
        self._data: OrderedDict = OrderedDict()

    def get(self, radical: int):
        hit = self._data.get(radical)
        if hit is not None:
            self._data.move_to_end(radical)
        return hit

    def put(self, radical: int, value) -> None:
        self._data[radical] = value
        self._data.move_to_end(radical)
        while len(self._data) > self.maxsize:
            self._data.popitem(last=False)

    def __len__(self) -> int:
        return len(self._data)


_DEFAULT_CACHE = GapCache()


def _radical(n: int):
    """Radical of n and its ascending prime divisors, by trial division."""
    rest = n
    primes = []
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            primes.append(p)
            while rest % p == 0:
                rest //= p
        p += 1 if p == 2 else 2
    if rest > 1:
        primes.append(rest)
    rad = 1
    for p in primes:
        rad *= p
    return rad, primes


def _scan_gap(radical: int, primes) -> tuple:
    """Maximal gap of the coprime pattern by direct scan of [0, 2*radical].

    Two periods cover the gap straddling the period boundary, so no
    modular wraparound bookkeeping is needed. Returns (g, (x, y)) with
    (x, y) the first attaining pair in the window.
    """
    if radical == 1:
        return 1, (1, 2)
    ok = np.ones(2 * radical + 1, dtype=bool)
    for p in primes:
        ok[::p] = False
    pos = np.flatnonzero(ok)
    diffs = np.diff(pos)
    i = int(np.argmax(diffs))
    return int(diffs[i]), (int(pos[i]), int(pos[i + 1]))


def jacobsthal_g(n: int, cache: GapCache | None = None) -> GapScanResult:
    """Exact g(n) via a circular scan of the coprime pattern of radical(n).

    Results are memoized by radical; consecutive integers coprime to the
    radical are coprime to n itself, so the certificate carries over.
    """
    if n < 1:
        raise ValueError(f"g expects a positive integer, got {n}")
    cache = cache if cache is not None else _DEFAULT_CACHE
    rad, primes = _radical(n)
    if rad > RADICAL_CAP:
        raise CapabilityError(
            f"radical {rad} exceeds the direct-scan cap {RADICAL_CAP}"
        )
    hit = cache.get(rad)
    if hit is None:
        hit = _scan_gap(rad, primes)
        cache.put(rad, hit)
    g, pair = hit
    return GapScanResult(n=n, g=g, attaining_pair=pair)


def f_least(n: int) -> int:
    """Least a >= 1 with gcd(a*(a+2), n) = 1.

    Always terminates: within any window of length 2*radical(n) some a
    avoids every prime divisor of n at both a and a+2.
    """
    if n < 1:
        raise ValueError(f"f expects a positive integer, got {n}")
    a = 1
    while math.gcd(a * (a + 2), n) != 1:
        a += 1
    return a


# ---------------------------------------------------------------------------
# batch engines for range checks
# ---------------------------------------------------------------------------

_TABLE_CACHE: dict = {}


def _squarefree_g_table(limit: int) -> np.ndarray:
    """g(r) for every squarefree r <= limit, 0 at non-squarefree slots.

    Walks the tree of squarefree numbers ordered by largest prime factor.
    A node m carries its sorted coprime residues C in [0, m). For a child
    r = m*p the coprime positions of r are p shifted copies of C with one
    congruence class removed; consecutive removals land in the same copy
    exactly when the residues agree mod p, so maximal runs of agreement
    (circular, wrapping via C[0] + m) give every candidate gap of r in
    O(phi(m)) without materializing the child pattern. Child patterns are
    built only for nodes that have children of their own.
    """
    g = np.zeros(limit + 1, dtype=np.int16)
    if limit >= 1:
        g[1] = 1
    primes = arith._primes_upto(limit)
    g[primes] = 2
    plist = primes.tolist()
    nprimes = len(plist)

    def visit(m: int, pidx: int, C: np.ndarray) -> None:
        phi = len(C)
        k = pidx + 1
        while k < nprimes:
            p = plist[k]
            r = m * p
            if r > limit:
                break
            w = C % p
            wn = np.roll(w, -1)
            wn[-1] = (int(C[0]) + m) % p
            ends = np.flatnonzero(w != wn)        # run boundaries
            prev = np.roll(ends, 1).astype(np.int64)
            prev[0] -= phi
            hi = ends + 1
            cand = (C[hi % phi].astype(np.int64) + (hi // phi) * m) \
                 - (C[prev % phi].astype(np.int64) + (prev // phi) * m)
            g[r] = cand.max()
            if k + 1 < nprimes and r * plist[k + 1] <= limit:
                inv = pow(m, -1, p)
                hole = ((-C.astype(np.int64)) * inv) % p
                V = C[None, :].astype(np.int32) \
                    + (m * np.arange(p, dtype=np.int32))[:, None]
                keep = np.ones((p, phi), dtype=bool)
                keep[hole, np.arange(phi)] = False
                visit(r, k, V[keep])
            k += 1

    for i, p in enumerate(plist):
        if i + 1 < nprimes and p * plist[i + 1] <= limit:
            visit(p, i, np.arange(1, p, dtype=np.int32))
    return g


def _cached_table(kind: str, limit: int, builder) -> np.ndarray:
    have = _TABLE_CACHE.get(kind)
    if have is None or len(have) < limit + 1:
        have = builder(limit)
        _TABLE_CACHE[kind] = have
    return have[: limit + 1]


def _radical_sieve(limit: int) -> np.ndarray:
    def build(lim):
        rad = np.ones(lim + 1, dtype=np.int32)
        for p in arith._primes_upto(lim).tolist():
            rad[p::p] *= p
        return rad
    return _cached_table("radical", limit, build)


def _omega_sieve(limit: int) -> np.ndarray:
    def build(lim):
        w = np.zeros(lim + 1, dtype=np.int8)
        for p in arith._primes_upto(lim).tolist():
            w[p::p] += 1
        return w
    return _cached_table("omega", limit, build)


def _top_two_prime_sieves(limit: int):
    """Largest and second-largest distinct prime divisor of each n <= limit."""
    def build(lim):
        largest = np.zeros(lim + 1, dtype=np.int32)
        second = np.zeros(lim + 1, dtype=np.int32)
        for p in arith._primes_upto(lim).tolist():
            sl = slice(p, None, p)
            second[sl] = largest[sl]
            largest[sl] = p
        return np.stack([largest, second])
    both = _cached_table("top2", limit, build)
    return both[0], both[1]


def g_table(limit: int) -> np.ndarray:
    """g(n) for every n in [1, limit] (index 0 unused)."""
    if limit > RANGE_CAP:
        raise CapabilityError(f"g table limit {limit} exceeds cap {RANGE_CAP}")
    gsq = _cached_table("gsq", limit, _squarefree_g_table)
    return gsq[_radical_sieve(limit)]


def _f_table(limit: int) -> np.ndarray:
    """f(n) for every n in [1, limit], by ascending-a elimination."""
    def build(lim):
        f = np.zeros(lim + 1, dtype=np.int16)
        pending = np.arange(1, lim + 1, dtype=np.int64)
        a = 1
        while len(pending):
            done = np.gcd(pending, a * (a + 2)) == 1
            f[pending[done]] = a
            pending = pending[~done]
            a += 1
        return f
    return _cached_table("f", limit, build)


def check_g_linear_bound(limit: int) -> list:
    """All n <= limit outside {1,2,3,4,6} with 5*g(n) > 2*n. Expected empty."""
    if limit > RANGE_CAP:
        raise CapabilityError(f"limit {limit} exceeds cap {RANGE_CAP}")
    g = g_table(limit)
    n = np.arange(limit + 1, dtype=np.int64)
    bad = np.flatnonzero(5 * g.astype(np.int64) > 2 * n)
    return [int(v) for v in bad if v >= 1 and v not in LINEAR_BOUND_EXCEPTIONS]


def check_f_bounds(limit: int) -> list:
    """Violations of the two f inequalities over all n <= limit.

    Check "product": when the two largest distinct prime divisors p1 >= p2
    of n both exceed 3, require f(n)*p1*p2 <= 5n. Check "seventeen": when
    gcd(n, 143) = 1 or gcd(n, 323) = 1, require f(n) <= 17. Each violation
    record carries enough to re-verify by hand.
    """
    if limit > RANGE_CAP:
        raise CapabilityError(f"limit {limit} exceeds cap {RANGE_CAP}")
    f = _f_table(limit).astype(np.int64)
    p1, p2 = _top_two_prime_sieves(limit)
    n = np.arange(limit + 1, dtype=np.int64)
    out = []

    applies = (p2 > 3)  # implies p1 >= p2 > 3 and omega >= 2
    lhs = f * p1.astype(np.int64) * p2.astype(np.int64)
    for v in np.flatnonzero(applies & (lhs > 5 * n)).tolist():
        out.append({"n": int(v), "check": "product", "f": int(f[v]),
                    "p1": int(p1[v]), "p2": int(p2[v]),
                    "lhs": int(lhs[v]), "rhs": int(5 * v)})

    coprime_mask = (np.gcd(n, 143) == 1) | (np.gcd(n, 323) == 1)
    coprime_mask[0] = False
    for v in np.flatnonzero(coprime_mask & (f > 17)).tolist():
        out.append({"n": int(v), "check": "seventeen", "f": int(f[v])})
    return sorted(out, key=lambda r: (r["n"], r["check"]))


def primorial_g(k: int) -> GapScanResult:
    """g of the product of the first k primes, by direct full-period scan."""
    if not 1 <= k <= PRIMORIAL_MAX_K:
        raise CapabilityError(
            f"k={k} outside [1, {PRIMORIAL_MAX_K}]: the next primorial's "
            f"period no longer fits a desk-scale direct scan"
        )
    primes = arith._primes_upto(30)[:k].tolist()
    value = 1
    for p in primes:
        value *= p
    g, pair = _scan_gap(value, primes)
    return GapScanResult(n=value, g=g, attaining_pair=pair)


def check_g_omega_monotone(k: int, limit: int) -> list:
    """All n <= limit with exactly k distinct prime divisors and
    g(n) > g(P_k). Expected empty for k <= 8; the claim is only tested on
    the scanned range because it fails far beyond it."""
    if not 1 <= k <= PRIMORIAL_MAX_K:
        raise CapabilityError(f"k={k} outside [1, {PRIMORIAL_MAX_K}]")
    if limit > RANGE_CAP:
        raise CapabilityError(f"limit {limit} exceeds cap {RANGE_CAP}")
    bound = primorial_g(k).g
    g = g_table(limit)
    omega = _omega_sieve(limit)
    bad = np.flatnonzero((omega == k) & (g > bound))
    return [int(v) for v in bad.tolist()]
