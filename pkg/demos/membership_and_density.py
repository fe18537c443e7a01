#!/usr/bin/env python3
"""Walkthrough: which k occur as gcd(n, F_n), and how often.

A_k = {n : gcd(n, F_n) = k} is nonempty exactly when k = gcd(ell(k),
F_ell(k)), and in that case its natural density is the Mobius series
sum_d mu(d)/ell(dk).  The script decides membership, then pits the
truncated series against a brute-force enumeration, including the
surprising fact that the series vanishes for non-members.
"""

from fibrank import count_many, density_series, inclusion_exclusion_check, is_member

LIMIT = 200_000
DEPTH = 20_000


def main():
    print("=" * 64)
    print("Membership: k = gcd(ell(k), F_ell(k))?")
    print("=" * 64)
    print(f"{'k':>3} {'ell(k)':>7} {'gcd':>6}  member?")
    for k in range(1, 15):
        v = is_member(k)
        print(f"{k:>3} {v.ell_k:>7} {v.g:>6}  {'yes' if v.member else 'no'}")

    members = [k for k in range(1, 13) if is_member(k).member]
    nonmembers = [k for k in range(1, 13) if not is_member(k).member]

    print()
    print("=" * 64)
    print(f"Density series (depth {DEPTH}) vs enumeration to {LIMIT}")
    print("=" * 64)
    census = count_many(members + nonmembers, LIMIT, witness_cap=1)
    print(f"{'k':>3} {'#A_k(x)/x':>12} {'series':>12} {'diff':>10}  first witness")
    for k in members + nonmembers:
        report = census[k][0]
        series = density_series(k, DEPTH)
        witness = report.witnesses[0] if report.witnesses else "-"
        print(
            f"{k:>3} {report.ratio:>12.6f} {series.float_value:>12.6f} "
            f"{abs(report.ratio - series.float_value):>10.6f}  {witness}"
        )
    print()
    print("Non-members have counts of exactly 0 and a series that cancels to ~0")
    print("(the cancellation is exact in the limit, not an accident of truncation).")

    print()
    print("=" * 64)
    print("Inclusion-exclusion rearrangement is exact on aligned support")
    print("=" * 64)
    for k in (2, 12, 30):
        lhs, rhs, gap = inclusion_exclusion_check(k, 500)
        print(f"  k = {k:>2}: gap = {gap} (lhs = rhs = {float(lhs):.9f})")


if __name__ == "__main__":
    main()
