"""Residue-sum condition on triples (n, s, t): checking, classification,
and exhaustive range verification.

A triple with gcd(n, s, t) = 1 satisfies the condition when every unit a
mod n keeps (as mod n) + (at mod n) strictly between n/2 and 3n/2; all
comparisons are integerized as n < 2*sum < 3n. Satisfying triples are
expected to fall into one of four algebraic families (s+t=n, s+2t=n,
2s+t=n, or n even with |s-t|=n/2) once n > 78, and verify_range scans a
whole range of n confirming exactly that, reporting anything unclassified
as a violation.

Two interchangeable scan engines back verify_range. The direct engine
prunes all n^2 pairs with the a=1 sum window and then eliminates survivors
unit by unit. The orbit engine partitions pairs into unit orbits (the
condition is orbit-invariant), tests one lexicographically smallest
representative per orbit, and expands only the satisfying orbits back to
their members for classification.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import arith
from .errors import CapabilityError

RANGE_N_CAP = 1 << 20
ENUMERATE_CAP = 10**4
SMALL_N_BOUND = 78
_BLOCK = 1 << 22


class Family(Enum):
    """The four algebraic relations, plus the finite small-n regime.

    Each relation is a congruence mod n, not an exact equality. The
    congruence form is forced by orbit invariance: a unit a carries the
    value of s + 2t to a(s + 2t) mod n, so "s + 2t = n" is not stable
    under the unit action but "s + 2t = 0 (mod n)" is. The difference is
    real: (79, 2, 78) satisfies the residue condition at every unit and
    has s + 2t = 158 = 2n, while its orbit member (79, 1, 39) has
    s + 2t = 79 exactly.

    HALF_DIFF covers the half-modulus degeneracies of even n: any of
    2s, 2t, or 2(s - t) vanishing mod n, that is s or t in {n/2, n} or
    |s - t| in {0, n/2}. The t = n/2 case is the family of right
    triangles (angle exactly pi/2), which satisfy the residue condition
    at every unit outright: a*t mod n is n/2 for every odd a, so the sum
    lands in (n/2, 3n/2) regardless of s. These are classical lattice
    triangles and no orbit member of theirs satisfies any of the three
    linear relations, so the classification needs the degenerate branch.
    """

    SMALL_N = "small_n"
    SUM = "sum"                    # s + t = 0 (mod n)
    S_PLUS_2T = "s_plus_2t"        # s + 2t = 0 (mod n)
    TWO_S_PLUS_T = "two_s_plus_t"  # 2s + t = 0 (mod n)
    HALF_DIFF = "half_diff"        # n even, 2s, 2t, or 2(s-t) = 0 (mod n)


ALGEBRAIC_FAMILIES = (Family.SUM, Family.S_PLUS_2T,
                      Family.TWO_S_PLUS_T, Family.HALF_DIFF)

_FAMILY_BITS = ((Family.SUM, 1), (Family.S_PLUS_2T, 2),
                (Family.TWO_S_PLUS_T, 4), (Family.HALF_DIFF, 8))


@dataclass(frozen=True)
class Triple:
    """A candidate (n, s, t) with 1 <= s, t <= n and gcd(n, s, t) = 1."""

    n: int
    s: int
    t: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"modulus must be positive, got n={self.n}")
        if not (1 <= self.s <= self.n and 1 <= self.t <= self.n):
            raise ValueError(
                f"require 1 <= s, t <= n, got (n={self.n}, s={self.s}, t={self.t})"
            )
        if math.gcd(math.gcd(self.s, self.t), self.n) != 1:
            raise ValueError(
                f"require gcd(n, s, t) = 1, got (n={self.n}, s={self.s}, t={self.t})"
            )


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of scanning the units: holds, or the smallest violating
    unit. min_sum/max_sum are the extremal residue sums and are present
    whenever the scan ran to completion."""

    holds: bool
    witness: int | None = None
    min_sum: int | None = None
    max_sum: int | None = None


def check_condition(triple: Triple, mode: str = "early_exit") -> ConditionReport:
    """Evaluate the residue-sum condition over every unit mod n.

    early_exit returns at the first violating unit (ascending scan, so the
    witness is the smallest); full_scan always visits every unit and
    reports the extremal sums. Both agree on holds and witness.
    """
    n, s, t = triple.n, triple.s, triple.t
    us = arith.units(n)
    if len(us) == 0:  # n = 1: empty quantifier
        return ConditionReport(holds=True)
    if mode == "early_exit":
        lo = hi = None
        for a in us.tolist():
            total = (a * s) % n + (a * t) % n
            if not n < 2 * total < 3 * n:
                return ConditionReport(holds=False, witness=a)
            if lo is None or total < lo:
                lo = total
            if hi is None or total > hi:
                hi = total
        return ConditionReport(holds=True, min_sum=lo, max_sum=hi)
    if mode == "full_scan":
        sums = (us * s) % n + (us * t) % n
        bad = (2 * sums <= n) | (2 * sums >= 3 * n)
        witness = int(us[int(np.argmax(bad))]) if bad.any() else None
        return ConditionReport(holds=witness is None, witness=witness,
                               min_sum=int(sums.min()), max_sum=int(sums.max()))
    raise ValueError(f"unknown mode {mode!r}")


def classify_families(triple, s: int | None = None, t: int | None = None) -> set:
    """Every family whose defining relation the triple satisfies.

    Takes a Triple, or bare integers (n, s, t): the relations are plain
    arithmetic, so membership makes sense even for triples outside the
    condition's gcd-1 domain.
    """
    if s is None:
        n, s, t = triple.n, triple.s, triple.t
    else:
        n = triple
    out = set()
    if n <= SMALL_N_BOUND:
        out.add(Family.SMALL_N)
    if (s + t) % n == 0:
        out.add(Family.SUM)
    if (s + 2 * t) % n == 0:
        out.add(Family.S_PLUS_2T)
    if (2 * s + t) % n == 0:
        out.add(Family.TWO_S_PLUS_T)
    if n % 2 == 0 and ((2 * s) % n == 0 or (2 * t) % n == 0
                       or (2 * (s - t)) % n == 0):
        out.add(Family.HALF_DIFF)
    return out


def orbit(triple: Triple) -> set:
    """The unit orbit {(n, us mod n, ut mod n)}, residue 0 written as n."""
    n = triple.n
    us = arith.units(n)
    if len(us) == 0:
        return {triple}
    ms = (us * triple.s) % n
    mt = (us * triple.t) % n
    ms[ms == 0] = n
    mt[mt == 0] = n
    return {Triple(n, int(a), int(b)) for a, b in zip(ms.tolist(), mt.tolist())}


# ---------------------------------------------------------------------------
# scan engines
# ---------------------------------------------------------------------------

def _eliminate(n: int, units_tail, s_arr, t_arr):
    """Keep only pairs passing the sum window for every listed unit."""
    base = np.arange(n + 1, dtype=np.int64)
    for a in units_tail:
        if len(s_arr) > n:
            r = ((a * base) % n).astype(np.int32)
            ss = r[s_arr] + r[t_arr]
        else:
            ss = ((a * s_arr.astype(np.int64)) % n
                  + (a * t_arr.astype(np.int64)) % n).astype(np.int32)
        keep = np.abs(ss - n) * 2 < n
        if not keep.all():
            s_arr = s_arr[keep]
            t_arr = t_arr[keep]
            if not len(s_arr):
                break
    return s_arr, t_arr


def _scan_direct(n: int) -> np.ndarray:
    """All satisfying (s, t) for one n, lexicographically sorted.

    The unit a = 1 bounds the residue sum directly, so for interior pairs
    (s, t < n) only t in [n/2 - s + 1, 3n/2 - s] can survive; those
    candidates are generated row by row in bounded blocks and whittled
    down by the remaining units. Pairs with s = n or t = n reduce their
    a = 1 sum to a single coordinate and get their own small block.
    """
    if n == 1:
        return np.array([[1, 1]], dtype=np.int64)
    units_tail = arith.units(n)[1:].tolist()
    smin, smax = n // 2 + 1, (3 * n - 1) // 2
    rows = np.arange(1, n, dtype=np.int64)
    t_lo = np.maximum(1, smin - rows)
    t_hi = np.minimum(n - 1, smax - rows)
    lens = np.maximum(0, t_hi - t_lo + 1)
    csum = np.cumsum(lens)
    keep_s, keep_t = [], []

    start = 0
    while start < len(rows):
        offset = int(csum[start - 1]) if start else 0
        stop = int(np.searchsorted(csum, offset + _BLOCK, side="right")) + 1
        stop = max(start + 1, min(stop, len(rows)))
        seg_lens = lens[start:stop]
        total = int(seg_lens.sum())
        if total:
            s_arr = np.repeat(rows[start:stop], seg_lens).astype(np.int32)
            cum = np.cumsum(seg_lens)
            pos = np.arange(total, dtype=np.int64)
            t_arr = ((pos - np.repeat(cum - seg_lens, seg_lens))
                     + np.repeat(t_lo[start:stop], seg_lens)).astype(np.int32)
            s_arr, t_arr = _eliminate(n, units_tail, s_arr, t_arr)
            if len(s_arr):
                keep_s.append(s_arr)
                keep_t.append(t_arr)
        start = stop

    edge = np.arange(smin, n, dtype=np.int32)  # a=1 sum is the other coordinate
    s_arr = np.concatenate([edge, np.full(len(edge), n, dtype=np.int32)])
    t_arr = np.concatenate([np.full(len(edge), n, dtype=np.int32), edge])
    s_arr, t_arr = _eliminate(n, units_tail, s_arr, t_arr)
    if len(s_arr):
        keep_s.append(s_arr)
        keep_t.append(t_arr)

    if not keep_s:
        return np.empty((0, 2), dtype=np.int64)
    s_all = np.concatenate(keep_s).astype(np.int64)
    t_all = np.concatenate(keep_t).astype(np.int64)
    valid = np.gcd(np.gcd(s_all, t_all), n) == 1
    out = np.stack([s_all[valid], t_all[valid]], axis=1)
    return out[np.lexsort((out[:, 1], out[:, 0]))]


def _divisors(n: int) -> list:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _scan_orbit(n: int) -> np.ndarray:
    """Same output as _scan_direct, testing one triple per unit orbit.

    Orbits are enumerated per divisor d = gcd(s, n): each orbit contains
    exactly one member with s = d, and the members' t values form an
    orbit of the stabilizer subgroup {units congruent to 1 mod n/d}. The
    minimal t of every stabilizer orbit is found wholesale by min-
    propagating along subgroup generators with doubled powers, which
    costs O(n log) per divisor instead of one pass per orbit. Orbit
    representatives (d, t_min) are then the lexicographically smallest
    members, and only satisfying orbits are expanded.
    """
    if n == 1:
        return np.array([[1, 1]], dtype=np.int64)
    full_units = arith.units(n)
    idx = np.arange(n, dtype=np.int64)
    val = np.where(idx == 0, n, idx)
    rep_s, rep_t = [], []
    for d in _divisors(n):
        m = n // d
        stab = full_units if m == 1 else full_units[full_units % m == 1]
        mins = val.copy()
        if len(stab) > 1:
            # greedy generating set: add elements until closure
            member = np.zeros(n, dtype=bool)
            member[1] = True
            gens = []
            for u in stab.tolist():
                if u == 1 or member[u]:
                    continue
                gens.append(u)
                have = np.flatnonzero(member)
                coset = (have * u) % n
                while not member[coset[0]]:
                    member[coset] = True
                    coset = (coset * u) % n
            for g in gens:
                order, z = 1, g
                while z != 1:
                    z = z * g % n
                    order += 1
                h = g
                for _ in range(max(1, (order - 1).bit_length())):
                    mins = np.minimum(mins, mins[(h * idx) % n])
                    h = h * h % n
        reps = (np.gcd(val, d) == 1) & (mins == val)
        w = val[reps]
        rep_s.append(np.full(len(w), d, dtype=np.int64))
        rep_t.append(w)

    S = np.concatenate(rep_s)
    T = np.concatenate(rep_t)
    for a in full_units.tolist():
        ss = (a * S) % n + (a * T) % n
        keep = np.abs(ss - n) * 2 < n
        if not keep.all():
            S = S[keep]
            T = T[keep]
            if not len(S):
                break
    if not len(S):
        return np.empty((0, 2), dtype=np.int64)

    # expand satisfying orbits over the whole unit group
    chunk = max(1, _BLOCK // max(1, len(S)))
    codes = []
    for i in range(0, len(full_units), chunk):
        ua = full_units[i:i + chunk]
        ms = (ua[:, None] * S[None, :]) % n
        mt = (ua[:, None] * T[None, :]) % n
        ms[ms == 0] = n
        mt[mt == 0] = n
        codes.append((ms.ravel() * (n + 1) + mt.ravel()))
    enc = np.unique(np.concatenate(codes))
    return np.stack([enc // (n + 1), enc % (n + 1)], axis=1)


def _family_bits(n: int, pairs: np.ndarray) -> np.ndarray:
    """Bitmask of algebraic family memberships per satisfying pair."""
    s = pairs[:, 0]
    t = pairs[:, 1]
    bits = np.zeros(len(pairs), dtype=np.uint8)
    bits[(s + t) % n == 0] |= 1
    bits[(s + 2 * t) % n == 0] |= 2
    bits[(2 * s + t) % n == 0] |= 4
    if n % 2 == 0:
        half = ((2 * s) % n == 0) | ((2 * t) % n == 0) | ((2 * (s - t)) % n == 0)
        bits[half] |= 8
    return bits


def _verify_one(task) -> tuple:
    n, use_orbits = task
    pairs = _scan_orbit(n) if use_orbits else _scan_direct(n)
    return n, pairs.astype(np.int32), _family_bits(n, pairs)


@dataclass
class VerificationReport:
    """Everything verify_range found, deterministic for a given range."""

    n_range: tuple
    counts: dict                 # n -> number of condition-satisfying triples
    violations: list             # (Triple, ConditionReport), n > 78, no family
    small_n_exceptions: list     # Triples with n <= 78 outside all families
    satisfying: dict = field(repr=False)  # n -> (k, 2) array of pairs
    elapsed: float = 0.0
    use_orbits: bool = False

    @property
    def total_satisfying(self) -> int:
        return sum(self.counts.values())


def verify_range(n_from: int, n_to: int, use_orbits: bool = False,
                 workers: int = 1) -> VerificationReport:
    """Scan every n in [n_from, n_to], classify every satisfying triple,
    and report the ones no algebraic family covers.

    Work is partitioned per n; results are merged in ascending order, so
    the report is identical for any worker count.
    """
    if n_from < 1 or n_from > n_to:
        raise ValueError(f"empty or invalid range [{n_from}, {n_to}]")
    if n_to > RANGE_N_CAP:
        raise CapabilityError(f"range end {n_to} exceeds cap {RANGE_N_CAP}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    started = time.perf_counter()
    tasks = [(n, use_orbits) for n in range(n_from, n_to + 1)]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_verify_one, tasks, chunksize=8))
    else:
        results = [_verify_one(t) for t in tasks]
    results.sort(key=lambda r: r[0])

    counts = {}
    satisfying = {}
    violations = []
    exceptions = []
    for n, pairs, bits in results:
        counts[n] = len(pairs)
        satisfying[n] = pairs
        for i in np.flatnonzero(bits == 0).tolist():
            tr = Triple(n, int(pairs[i, 0]), int(pairs[i, 1]))
            if n > SMALL_N_BOUND:
                violations.append((tr, check_condition(tr, "full_scan")))
            else:
                exceptions.append(tr)
    return VerificationReport(
        n_range=(n_from, n_to), counts=counts, violations=violations,
        small_n_exceptions=exceptions, satisfying=satisfying,
        elapsed=time.perf_counter() - started, use_orbits=use_orbits)


def enumerate_satisfying(n: int) -> list:
    """All satisfying triples on one n, ascending lexicographic in (s, t)."""
    if n < 1:
        raise ValueError(f"modulus must be positive, got {n}")
    if n > ENUMERATE_CAP:
        raise CapabilityError(f"enumeration capped at n <= {ENUMERATE_CAP}")
    return [Triple(n, int(s), int(t)) for s, t in _scan_direct(n).tolist()]
