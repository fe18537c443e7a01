#!/usr/bin/env python3
"""Walkthrough: the structure of A_k and the counting bounds around it.

For a member k, A_k is exactly ell(k) times the nonmultiples of the
generator set L_k, so its density can be bracketed from below by the
Heilbronn product over the generators.  The script also traces two global
counting trends: the set B of occurring k values thins out like x/log x,
and primes with an anomalously small rank are extremely rare.
"""

import math
from fractions import Fraction

from fibrank import (
    heilbronn_lower_bound,
    lk_generators,
    nonmultiple_density,
    partial_ell_sum,
    scan_B,
    scan_low_rank_primes,
    verify_structure,
)


def main():
    print("=" * 64)
    print("Generator sets L_k and the Heilbronn lower bound")
    print("=" * 64)
    for k in (1, 2, 5):
        gens = lk_generators(k, 100)
        bound = heilbronn_lower_bound(gens)
        measured = nonmultiple_density(gens, 100_000)
        head = gens.elements()[:8]
        print(f"k = {k}:")
        print(f"  generators (first few of {len(gens.elements())}): {head}")
        print(f"  Heilbronn product: {float(bound):.6f}")
        print(f"  measured nonmultiple density at 1e5: {float(measured):.6f}")
        print(f"  structural identity A_k = ell(k) * N(L_k) checked: {verify_structure(k, 10**5)}")

    print()
    print("=" * 64)
    print("B(x): how many k <= x ever occur as gcd(n, F_n)")
    print("=" * 64)
    rows, _ = scan_B(10**4, checkpoints=[100, 1000, 10**4])
    print(f"{'x':>7} {'#B(x)':>7} {'#B/x':>8} {'#B log x / x':>13}")
    for row in rows:
        print(f"{row.x:>7} {row.count:>7} {row.ratio:>8.4f} {row.count * math.log(row.x) / row.x:>13.4f}")
    print("density heads to zero; x/log x scaling stays bounded away from it")

    print()
    print("=" * 64)
    print("Primes with tiny rank: z(p) <= p^(1/3)")
    print("=" * 64)
    rows = scan_low_rank_primes(Fraction(1, 3), 10**5, checkpoints=[10**3, 10**4, 10**5])
    for row in rows:
        print(f"  x = {row.x:>6}: count = {row.count} (count/x^(2/3) = {row.ratio:.5f})")

    print()
    print("=" * 64)
    print("sum 1/ell(n) converges: dyadic windows shrink")
    print("=" * 64)
    prev = None
    for j in range(4, 15):
        window = partial_ell_sum(2 ** (j + 1)) - partial_ell_sum(2**j)
        arrow = "" if prev is None else ("  v" if window < prev else "  ^")
        print(f"  ({2**j:>6}, {2**(j+1):>6}]: {float(window):.6f}{arrow}")
        prev = window


if __name__ == "__main__":
    main()
