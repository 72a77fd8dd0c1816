#!/usr/bin/env python3
"""Exercise the coprime-gap function g(n) and the companion f(n).

g(n) is the largest difference between consecutive integers coprime to
n; f(n) is the least a >= 1 with a(a + 2) coprime to n. The script
verifies, over a desk-scale range, the inequalities the verification
pipeline relies on:

  - 5*g(n) <= 2*n outside the finite exception set {1, 2, 3, 4, 6}
  - g(P_k) for the primorials P_1..P_8, and g(n) <= g(P_k) whenever
    n in range has exactly k distinct prime factors
  - f(n)*p1*p2 <= 5*n when the two largest prime divisors exceed 3
  - f(n) <= 17 when gcd(n, 143) = 1 or gcd(n, 323) = 1

Usage:
    python3 demos/gap_bounds.py
    python3 demos/gap_bounds.py --limit 1000000
"""

import argparse
import time

from trilattice import jacobsthal


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--limit", type=int, default=10**5)
    ns = ap.parse_args()

    print("primorial gap values with certificates:")
    for k in range(1, 9):
        res = jacobsthal.primorial_g(k)
        lo, hi = res.attaining_pair
        print(f"  k={k}  P_k={res.n:9d}  g={res.g:3d}  "
              f"attained between {lo} and {hi}")

    t0 = time.monotonic()
    bad = jacobsthal.check_g_linear_bound(ns.limit)
    print(f"\nlinear bound 5*g(n) <= 2*n up to {ns.limit}: "
          f"{len(bad)} violations ({time.monotonic() - t0:.1f}s)")
    for n in bad[:10]:
        print(f"  n={n} g={jacobsthal.jacobsthal_g(n).g}")

    t0 = time.monotonic()
    for k in range(1, 9):
        bad = jacobsthal.check_g_omega_monotone(k, ns.limit)
        bound = jacobsthal.primorial_g(k).g
        print(f"omega class k={k}: g(n) <= {bound:3d} holds with "
              f"{len(bad)} violations")
    print(f"  ({time.monotonic() - t0:.1f}s for the eight classes)")

    t0 = time.monotonic()
    bad = jacobsthal.check_f_bounds(ns.limit)
    print(f"\nf inequalities up to {ns.limit}: {len(bad)} violations "
          f"({time.monotonic() - t0:.1f}s)")
    for row in bad[:10]:
        print(f"  {row}")

    print("\nsample values:")
    for n in (12, 30, 105, 210, 9699690):
        g = jacobsthal.jacobsthal_g(n).g
        f = jacobsthal.f_least(n)
        print(f"  n={n:8d}  g={g:3d}  f={f}")


if __name__ == "__main__":
    main()
