#!/usr/bin/env python3
"""Walkthrough: everything generalizes to nondegenerate Lucas sequences.

The rank z_u(m) exists iff gcd(m, a2) = 1; with that caveat the whole
membership-and-density story carries over.  Pell numbers (a1, a2) = (2, 1)
are the running example, plus the sequence u_n = 2^n - 1 as a sanity check
(its rank is the multiplicative order of 2).
"""

from fibrank import (
    LucasParams,
    gcd_n_lucas,
    lucas_density_series,
    lucas_is_member,
    lucas_pair_mod,
    lucas_rank,
)

PELL = LucasParams(2, 1)
MERSENNE = LucasParams(3, -2)  # u_n = 2^n - 1


def main():
    print("=" * 64)
    print("Pell numbers: u_n = 2 u_(n-1) + u_(n-2)")
    print("=" * 64)
    terms = [lucas_pair_mod(PELL, n, 10**9)[0] for n in range(11)]
    print(f"first terms: {terms}")
    print(f"{'m':>3} {'z_u(m)':>7} {'ell_u(m)':>9}")
    for m in range(1, 11):
        rec = lucas_rank(PELL, m)
        print(f"{m:>3} {rec.z:>7} {rec.ell:>9}")

    print()
    print("Pell membership vs direct enumeration to 2e4:")
    seen = {}
    for n in range(1, 20_001):
        seen.setdefault(gcd_n_lucas(PELL, n), n)
    print(f"{'k':>3} {'member?':>8} {'first witness':>14} {'ell_u(k)':>9}")
    for k in range(1, 17):
        v = lucas_is_member(PELL, k)
        witness = seen.get(k, "-")
        ell = lucas_rank(PELL, k).ell if v.member else "-"
        print(f"{k:>3} {'yes' if v.member else 'no':>8} {witness!s:>14} {ell!s:>9}")

    print()
    print("Pell densities (series depth 2e3 vs enumeration to 2e4):")
    census = {}
    for n in range(1, 20_001):
        g = gcd_n_lucas(PELL, n)
        census[g] = census.get(g, 0) + 1
    for k in (1, 2, 4, 5):
        s = lucas_density_series(PELL, k, 2000)
        print(f"  k = {k}: series {s.float_value:.5f} vs enumerated {census.get(k, 0) / 20_000:.5f}")

    print()
    print("=" * 64)
    print("u_n = 2^n - 1 (a1, a2) = (3, -2): rank = multiplicative order of 2")
    print("=" * 64)
    for m in (5, 7, 9, 11, 13, 15):
        rec = lucas_rank(MERSENNE, m)
        order = next(j for j in range(1, 100) if (2**j - 1) % m == 0)
        print(f"  z_u({m}) = {rec.z}, ord_{m}(2) = {order}")
    try:
        lucas_rank(MERSENNE, 6)
    except Exception as exc:
        print(f"  z_u(6): {type(exc).__name__}: {exc}")
    print("  (even m share a factor with a2 = -2, so their rank never exists)")


if __name__ == "__main__":
    main()
