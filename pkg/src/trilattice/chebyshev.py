"""Chebyshev theta over arithmetic progressions, in exact fixed point.

theta(x, q, a) sums fixed-point logarithms of the primes p <= x with
p = a (mod q), so every comparison below is integer arithmetic and every
run reproduces bit for bit. Two inequalities are swept over full integer
ranges: the lower bound 2*phi(q)*theta(x,q,a) >= x for x >= 89, and the
envelope |theta(x,q,a) - x/phi(q)| < 2.072*sqrt(x) for x >= 619.

theta is constant between consecutive primes of a class, so the sweeps
walk segments instead of single x values: the lower bound is tightest at
a segment's right edge, and the envelope comparison is convex in x, so
checking segment endpoints certifies the interior.

Comparisons landing within 2^-20 of a tie are not trusted at 60 bits;
they are recomputed with 100-fractional-bit logarithms and recorded as
margin events. At desk scale none are expected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import arith
from .arith import PrimeTable
from .errors import CapabilityError

MAX_MODULUS = 10
LOWER_BOUND_FLOOR = 89       # lower bound asserted for x >= 89
ENVELOPE_FLOOR = 619         # envelope asserted for x >= 619
ENV_NUM, ENV_DEN = 259, 125  # 2.072 exactly
MARGIN_FIXED = 1 << (arith.FRAC_BITS - 20)   # 2^-20 in 60-bit fixed point
HIGH_FRAC_BITS = 100


def _phi(q: int) -> int:
    return 1 if q == 1 else len(arith.units(q))


def unit_residues(q: int) -> list:
    """Residues a with gcd(a, q) = 1, as the classes theta is asserted on;
    q = 1 is the single class a = 0."""
    if q == 1:
        return [0]
    return [a for a in range(1, q) if math.gcd(a, q) == 1]


def _check_args(x: int, q: int, a: int, table: PrimeTable) -> None:
    if not 1 <= q <= MAX_MODULUS:
        raise ValueError(f"modulus {q} outside supported range 1..{MAX_MODULUS}")
    if q == 1:
        if a != 0:
            raise ValueError("modulus 1 admits only residue 0")
    elif not 0 <= a < q:
        raise ValueError(f"residue {a} outside [0, {q})")
    if x > table.limit:
        raise CapabilityError(
            f"x={x} beyond prime table limit {table.limit}; rebuild the table"
        )


def theta(x: int, q: int, a: int, table: PrimeTable) -> int:
    """Fixed-point theta(x, q, a): sum of log p over primes p <= x,
    p = a (mod q), as an integer count of 2^-60 units."""
    if x < 1:
        raise ValueError(f"x must be positive, got {x}")
    _check_args(x, q, a, table)
    sel = np.flatnonzero((table.primes <= x) & (table.primes % q == a))
    return sum(table.log_fixed[i] for i in sel.tolist())


@dataclass
class ThetaAccumulator:
    """Running per-residue theta totals for one modulus, advanced left to
    right over x. The sum over all residue classes of `sums` equals the
    unrestricted theta at every position, since each prime lands in
    exactly one class."""

    q: int
    table: PrimeTable
    sums: dict = field(default_factory=dict)
    x: int = 1
    _next_index: int = 0

    def __post_init__(self):
        if not self.sums:
            self.sums = {a: 0 for a in range(self.q)} if self.q > 1 else {0: 0}

    def advance_to(self, new_x: int) -> None:
        if new_x < self.x:
            raise ValueError("accumulator only advances forward")
        if new_x > self.table.limit:
            raise CapabilityError(
                f"x={new_x} beyond prime table limit {self.table.limit}"
            )
        hi = self.table.count_upto(new_x)
        for i in range(self._next_index, hi):
            p = int(self.table.primes[i])
            self.sums[p % self.q] += self.table.log_fixed[i]
        self._next_index = hi
        self.x = new_x


@dataclass(frozen=True)
class MarginEvent:
    """A comparison that landed within 2^-20 of a tie at 60 fractional
    bits, together with its 100-bit resolution."""

    kind: str        # "lower" or "envelope"
    q: int
    a: int
    x: int
    holds: bool
    lhs_high: int
    rhs_high: int


@dataclass
class ClassSweepReport:
    q: int
    a: int
    x_max: int
    lower_violations: list
    minimal_valid_x: int
    envelope_violations: list
    margin_events: list


def _theta_fixed_high(x: int, q: int, a: int, table: PrimeTable) -> int:
    """theta recomputed from scratch at 100 fractional bits."""
    sel = np.flatnonzero((table.primes <= x) & (table.primes % q == a))
    values = [int(table.primes[i]) for i in sel.tolist()]
    return sum(arith._fixed_point_logs(values, HIGH_FRAC_BITS))


def _resolve_lower(x, q, a, phi, table, events) -> bool:
    t_high = _theta_fixed_high(x, q, a, table)
    lhs, rhs = 2 * phi * t_high, x << HIGH_FRAC_BITS
    holds = lhs >= rhs
    events.append(MarginEvent("lower", q, a, x, holds, lhs, rhs))
    return holds

def _resolve_envelope(x, q, a, phi, table, events) -> bool:
    t_high = _theta_fixed_high(x, q, a, table)
    d = phi * t_high - (x << HIGH_FRAC_BITS)
    lhs = ENV_DEN * ENV_DEN * d * d
    rhs = ENV_NUM * ENV_NUM * phi * phi * (x << (2 * HIGH_FRAC_BITS))
    holds = lhs < rhs
    events.append(MarginEvent("envelope", q, a, x, holds, lhs, rhs))
    return holds


def _envelope_point(x, T, phi, q, a, table, report):
    """Exact envelope comparison at one x, with margin detection."""
    bits = arith.FRAC_BITS
    D = phi * T - (x << bits)
    violate = ENV_DEN * ENV_DEN * D * D \
        >= ENV_NUM * ENV_NUM * phi * phi * (x << (2 * bits))
    # distance of 125*|D| from 259*phi*2^60*sqrt(x), bracketed by isqrt
    s = math.isqrt(x << bits)
    lo = ENV_NUM * phi * (s << (bits // 2)) - ENV_DEN * phi * MARGIN_FIXED
    hi = ENV_NUM * phi * ((s + 1) << (bits // 2)) + ENV_DEN * phi * MARGIN_FIXED
    if lo <= ENV_DEN * abs(D) <= hi:
        violate = not _resolve_envelope(x, q, a, phi, table,
                                        report.margin_events)
    if violate:
        report.envelope_violations.append(
            {"x": x, "theta_fixed": T, "phi": phi,
             "dist_fixed_times_den": ENV_DEN * abs(D),
             "bound_fixed_times_den_sq": ENV_NUM * ENV_NUM * phi * phi
                                         * (x << (2 * bits))})


def sweep_progressions(q: int, a: int, x_max: int, table: PrimeTable,
                       envelope: bool = True) -> ClassSweepReport:
    """One left-to-right pass over x in [2, x_max] for a single residue
    class, checking the lower bound everywhere (recording x >= 89) and,
    optionally, the envelope for x >= 619."""
    _check_args(x_max, q, a, table)
    if math.gcd(a, q) != 1 and q > 1:
        raise ValueError(f"residue {a} is not a unit mod {q}")
    if envelope and x_max > 10**6:
        raise CapabilityError(
            f"envelope sweep capped at 10^6, got x_max={x_max}"
        )
    bits = arith.FRAC_BITS
    phi = _phi(q)
    report = ClassSweepReport(q=q, a=a, x_max=x_max, lower_violations=[],
                              minimal_valid_x=2, envelope_violations=[],
                              margin_events=[])
    sel = np.flatnonzero((table.primes % q == a) & (table.primes <= x_max))
    class_primes = table.primes[sel].tolist()
    class_logs = [table.log_fixed[i] for i in sel.tolist()]

    T = 0
    last_violation = 1
    prev = 2
    for p, lg in list(zip(class_primes, class_logs)) + [(x_max + 1, 0)]:
        lo, hi = prev, min(p - 1, x_max)
        if lo <= hi:
            # lower bound: theta constant on the segment, so x passes iff
            # x <= lhs >> bits and the failing set is a suffix of [lo, hi].
            # The rounding point xstar is the only x that can sit within
            # the margin band; it is adjacent to the pass/fail boundary,
            # so resolving it at 100 bits just shifts the suffix start.
            lhs = 2 * phi * T
            fail_from = (lhs >> bits) + 1
            xstar = (lhs + (1 << (bits - 1))) >> bits
            if (lo <= xstar <= hi
                    and abs(lhs - (xstar << bits)) < 2 * phi * MARGIN_FIXED):
                if _resolve_lower(xstar, q, a, phi, table,
                                  report.margin_events):
                    fail_from = xstar + 1
                else:
                    fail_from = xstar
            if fail_from <= hi:
                last_violation = hi
                for x in range(max(lo, fail_from, LOWER_BOUND_FLOOR),
                               hi + 1):
                    report.lower_violations.append(
                        {"x": x, "lhs_fixed": lhs, "rhs_fixed": x << bits})
            # envelope: comparison is convex in x, endpoints certify
            if envelope:
                elo = max(lo, ENVELOPE_FLOOR)
                if elo <= hi:
                    D_lo = phi * T - (elo << bits)
                    D_hi = phi * T - (hi << bits)
                    clear = (
                        ENV_DEN**2 * D_lo * D_lo
                        < ENV_NUM**2 * phi * phi * (elo << (2 * bits))
                        and ENV_DEN**2 * D_hi * D_hi
                        < ENV_NUM**2 * phi * phi * (hi << (2 * bits)))
                    for x in ((elo, hi) if hi > elo else (elo,)) if clear \
                            else range(elo, hi + 1):
                        _envelope_point(x, T, phi, q, a, table, report)
        if p > x_max:
            break
        T += lg
        prev = p
    report.minimal_valid_x = last_violation + 1
    return report


def verify_lower_bound(q: int, x_max: int, table: PrimeTable) -> dict:
    """Per-residue lower-bound reports for one modulus: recorded
    violations in [89, x_max] plus the least X from which the bound held
    through x_max."""
    out = {}
    for a in unit_residues(q):
        rep = sweep_progressions(q, a, x_max, table, envelope=False)
        out[a] = {"violations": rep.lower_violations,
                  "minimal_valid_x": rep.minimal_valid_x,
                  "margin_events": rep.margin_events}
    return out


def verify_envelope(q: int, x_max: int, table: PrimeTable) -> dict:
    """Per-residue envelope violations over [619, x_max] for one modulus."""
    if x_max > 10**6:
        raise CapabilityError(
            f"envelope sweep capped at 10^6, got x_max={x_max}"
        )
    out = {}
    for a in unit_residues(q):
        rep = sweep_progressions(q, a, x_max, table, envelope=True)
        out[a] = {"violations": rep.envelope_violations,
                  "margin_events": [e for e in rep.margin_events
                                    if e.kind == "envelope"]}
    return out


def conservation_defect(q: int, x: int, table: PrimeTable) -> int:
    """Difference between theta(x, 1, 0) and the sum of theta over the
    unit classes mod q plus log p for primes p <= x dividing q. The same
    fixed-point summands are regrouped, so the defect is exactly zero."""
    total = theta(x, 1, 0, table)
    parts = sum(theta(x, q, a, table) for a in unit_residues(q))
    if q > 1:
        sel = np.flatnonzero((table.primes <= min(x, q))
                             & (q % table.primes == 0))
        parts += sum(table.log_fixed[i] for i in sel.tolist())
    return total - parts
