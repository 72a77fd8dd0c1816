#!/usr/bin/env python3
"""Sweep the prime-log sums theta(x, q, a) over arithmetic progressions.

For every modulus q <= 10 and unit residue a, two inequalities are
checked pointwise over integer x:

  - lower bound:  2*phi(q)*theta(x, q, a) >= x     for x >= 89
  - envelope:     |theta(x, q, a) - x/phi(q)| < 2.072*sqrt(x)
                                                   for x >= 619

All arithmetic is 60-bit fixed point; any comparison that lands inside
the rounding margin is re-resolved at 100 bits and reported as a margin
event. The conservation identity (the classes of one modulus partition
the primes) is re-checked exactly at a few checkpoints.

Usage:
    python3 demos/theta_progressions.py
    python3 demos/theta_progressions.py --x-max 1000000
"""

import argparse
import time

from trilattice import arith, chebyshev


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--x-max", dest="x_max", type=int, default=10**6)
    ns = ap.parse_args()

    t0 = time.monotonic()
    table = arith.sieve(ns.x_max)
    print(f"sieve to {ns.x_max}: {len(table.primes)} primes "
          f"({time.monotonic() - t0:.1f}s)")

    t0 = time.monotonic()
    total_lower = total_env = total_margin = 0
    print("\nper-class sweep results:")
    print("  q  a   minimal_valid_x  lower_viol  env_viol  margin_events")
    for q in range(1, chebyshev.MAX_MODULUS + 1):
        for a in chebyshev.unit_residues(q):
            rep = chebyshev.sweep_progressions(q, a, ns.x_max, table)
            total_lower += len(rep.lower_violations)
            total_env += len(rep.envelope_violations)
            total_margin += len(rep.margin_events)
            print(f"  {q:2d} {a:2d}   {rep.minimal_valid_x:8d}"
                  f"        {len(rep.lower_violations):5d}"
                  f"     {len(rep.envelope_violations):5d}"
                  f"     {len(rep.margin_events):5d}")
    print(f"totals: lower={total_lower} envelope={total_env} "
          f"margin={total_margin} ({time.monotonic() - t0:.1f}s)")

    print("\nconservation defect (exact fixed-point integers):")
    for x in (10**3, 10**4, min(10**6, ns.x_max)):
        worst = max(abs(chebyshev.conservation_defect(q, x, table))
                    for q in range(1, chebyshev.MAX_MODULUS + 1))
        print(f"  x={x:8d}: worst defect over q <= 10 is {worst}")


if __name__ == "__main__":
    main()
