"""Integer arithmetic substrate: sieving, factorization, unit groups.

Everything downstream (triple verification, gap scans, theta sums) sits on
the two container types defined here. PrimeTable carries natural logarithms
of the primes in 60-fractional-bit fixed point so that later summations are
exactly reproducible; FactoredInteger carries the factorization data that
the bound checks keep asking for (phi, radical, largest prime divisors).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import gmpy2
import numpy as np

from .errors import CapabilityError

FRAC_BITS = 60
VALUE_CAP = 1 << 40
DEFAULT_SIEVE_CAP = 10**8
_SEGMENTED_ABOVE = 10**7
_SEGMENT_SIZE = 1 << 22


def gcd(a: int, b: int) -> int:
    """Greatest common divisor of two nonnegative integers; gcd(0, 0) = 0."""
    return math.gcd(a, b)


@dataclass(frozen=True)
class PrimeTable:
    """All primes up to ``limit`` plus fixed-point logarithms.

    Attributes
    ----------
    limit : int
        Inclusive sieving bound.
    primes : numpy.ndarray
        Ascending int64 array of every prime <= limit.
    log_fixed : list of int
        log(p) rounded to the nearest multiple of 2^-60, stored as a plain
        integer count of those multiples. Python integers are used because
        log(p) * 2^60 overflows 64-bit machine words for p > e^8 and the
        theta sums downstream grow far past 64 bits anyway.
    frac_bits : int
        Number of fractional bits in log_fixed (always 60 here).
    """

    limit: int
    primes: np.ndarray
    log_fixed: list = field(repr=False)
    frac_bits: int = FRAC_BITS

    def __len__(self) -> int:
        return len(self.primes)

    def count_upto(self, x: int) -> int:
        """Number of primes <= x."""
        return int(np.searchsorted(self.primes, x, side="right"))


def _prime_flags(limit: int) -> np.ndarray:
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return flags


def _primes_upto(limit: int) -> np.ndarray:
    """Prime values only, without building log tables. Internal helper."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    if limit <= _SEGMENTED_ABOVE:
        return np.flatnonzero(_prime_flags(limit)).astype(np.int64)
    # segmented sieve: keep the working window at a fixed size
    base = np.flatnonzero(_prime_flags(math.isqrt(limit))).astype(np.int64)
    chunks = [base]
    lo = int(base[-1]) + 1
    while lo <= limit:
        hi = min(lo + _SEGMENT_SIZE - 1, limit)
        window = np.ones(hi - lo + 1, dtype=bool)
        for p in base.tolist():
            if p * p > hi:
                break
            start = max(p * p, ((lo + p - 1) // p) * p)
            window[start - lo :: p] = False
        chunks.append(np.flatnonzero(window).astype(np.int64) + lo)
        lo = hi + 1
    return np.concatenate(chunks)


def _fixed_point_logs(values, frac_bits: int) -> list:
    """Round-to-nearest fixed-point natural logs, one per value.

    Computed at frac_bits + 60 bits of working precision so the rounding
    step is the only source of error (< 2^-(frac_bits+1) absolute).
    """
    scale = 1 << frac_bits
    out = []
    with gmpy2.context(precision=frac_bits + 60):
        for v in values:
            out.append(int(gmpy2.rint(gmpy2.log(v) * scale)))
    return out


def sieve(limit: int, cap: int = DEFAULT_SIEVE_CAP) -> PrimeTable:
    """Sieve all primes up to ``limit`` and attach fixed-point logarithms.

    Parameters
    ----------
    limit : int
        Inclusive upper bound, at least 2. Limits above 10^7 are sieved
        segment by segment so peak memory stays near one window.
    cap : int
        Refuse limits above this value instead of exhausting memory.

    Returns
    -------
    PrimeTable

    Raises
    ------
    CapabilityError
        If limit exceeds ``cap``.
    ValueError
        If limit < 2.
    """
    if limit < 2:
        raise ValueError(f"sieve limit must be >= 2, got {limit}")
    if limit > cap:
        raise CapabilityError(
            f"sieve limit {limit} exceeds configured cap {cap}; "
            f"raise the cap explicitly if this much memory is intended"
        )
    primes = _primes_upto(limit)
    return PrimeTable(limit=limit, primes=primes,
                      log_fixed=_fixed_point_logs(primes.tolist(), FRAC_BITS))


@dataclass(frozen=True)
class FactoredInteger:
    """A positive integer together with its complete prime factorization."""

    value: int
    factors: tuple  # ((p, e), ...) ascending by p
    phi: int
    radical: int

    @property
    def omega(self) -> int:
        """Number of distinct prime divisors."""
        return len(self.factors)

    def largest_primes(self):
        """The two largest distinct prime divisors (p1, p2), p1 >= p2.

        Returns (p1, None) when the value has a single prime divisor and
        (None, None) for value 1.
        """
        if not self.factors:
            return (None, None)
        if len(self.factors) == 1:
            return (self.factors[-1][0], None)
        return (self.factors[-1][0], self.factors[-2][0])


def factorize(n: int, table: PrimeTable) -> FactoredInteger:
    """Factor n by trial division against a sieved prime list.

    Requires table.limit^2 >= n so the prime list certifiably covers every
    candidate divisor; a leftover cofactor above the trial range is then
    guaranteed prime.
    """
    if n < 1:
        raise ValueError(f"factorize expects a positive integer, got {n}")
    if n > VALUE_CAP:
        raise CapabilityError(f"factorize input {n} exceeds the 2^40 width cap")
    root = math.isqrt(n)
    if table.limit < root:
        raise CapabilityError(
            f"prime table up to {table.limit} cannot certify factors of {n}; "
            f"need a table up to at least {root}"
        )
    factors = []
    phi = 1
    radical = 1
    rest = n
    for p in table.primes.tolist():
        if p > root:
            break
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            factors.append((p, e))
            phi *= (p - 1) * p ** (e - 1)
            radical *= p
            root = math.isqrt(rest)
    if rest > 1:
        factors.append((rest, 1))
        phi *= rest - 1
        radical *= rest
    return FactoredInteger(value=n, factors=tuple(factors), phi=phi, radical=radical)


def units(n: int) -> np.ndarray:
    """Ascending array of all a in [1, n) with gcd(a, n) = 1; empty for n = 1."""
    if n < 1:
        raise ValueError(f"units expects a positive modulus, got {n}")
    a = np.arange(1, n, dtype=np.int64)
    return a[np.gcd(a, n) == 1]
