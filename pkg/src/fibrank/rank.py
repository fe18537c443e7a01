"""Rank of appearance z(m) and ell(m) = lcm(m, z(m)).

z(m) is the least n >= 1 with m | F_n (m | u_n for a general Lucas
sequence, defined only when gcd(m, a2) = 1).  Composite ranks are built
multiplicatively: z(m) is the lcm of z(p^e) over the prime powers of m,
and prime-power ranks are lifted stepwise from z(p) -- the step test
never assumes z(p^2) != z(p), so Wall's conjecture is not baked in.
"""

import math
from dataclasses import dataclass

from . import arith
from .arith import OutOfRangeError, checked_lcm
from .fib import FIBONACCI, LucasParams, fib_pair_mod, lucas_pair_mod


class RankUndefinedError(ValueError):
    """z_u(m) does not exist because gcd(m, a2) > 1."""


@dataclass(frozen=True, slots=True)
class RankRecord:
    m: int
    z: int
    ell: int


class RankCache:
    """Memo tables for one sequence: prime ranks and whole records.

    The cache also fixes which prime-rank algorithm its users run: the
    Fibonacci-specific one, or the generalized Lucas one (which is also
    valid at (a1, a2) = (1, 1) and can be forced there to cross-check the
    generalization against the specialized path).

    Safe for concurrent use: lookups and inserts are GIL-atomic dict
    operations and every insert is idempotent, so the worst race is a
    duplicated computation, never an inconsistent value.
    """

    def __init__(self, seq: LucasParams = FIBONACCI, *, lucas_algorithms: bool | None = None):
        self.seq = seq
        if lucas_algorithms is None:
            lucas_algorithms = not seq.is_fibonacci
        if not lucas_algorithms and not seq.is_fibonacci:
            raise ValueError("the Fibonacci-specific algorithms only apply to (a1, a2) = (1, 1)")
        self.lucas_algorithms = lucas_algorithms
        if lucas_algorithms:
            self.pair_mod = lambda n, m: lucas_pair_mod(seq, n, m)
        else:
            self.pair_mod = fib_pair_mod
        self._prime_z: dict[int, int] = {}
        self._ppow_z: dict[tuple[int, int], int] = {}
        self._records: dict[int, RankRecord] = {}

    def clear(self):
        self._prime_z.clear()
        self._ppow_z.clear()
        self._records.clear()


_DEFAULT_CACHES: dict[tuple[int, int, bool], RankCache] = {}


def _shared_cache(seq: LucasParams, lucas_algorithms: bool) -> RankCache:
    key = (seq.a1, seq.a2, lucas_algorithms)
    cache = _DEFAULT_CACHES.get(key)
    if cache is None:
        cache = _DEFAULT_CACHES.setdefault(key, RankCache(seq, lucas_algorithms=lucas_algorithms))
    return cache


def default_cache(seq: LucasParams = FIBONACCI) -> RankCache:
    """Shared per-sequence cache; created on first use."""
    return _shared_cache(seq, not seq.is_fibonacci)


def _cache_prime_fn(cache: RankCache):
    return _prime_rank_lucas if cache.lucas_algorithms else _prime_rank_fib


def _scan_rank(seq: LucasParams, m: int, cap: int) -> int:
    a1, a2 = seq.a1, seq.a2
    a, b = 1 % m, a1 % m
    for n in range(1, cap + 1):
        if a == 0:
            return n
        a, b = b, (a1 * b + a2 * a) % m
    raise RuntimeError(f"no rank of {m} within {cap} steps; this indicates a bug")


def _prime_rank_fib(cache: RankCache, p: int) -> int:
    """z(p): hardwired for 2 and 5, else the smallest divisor d of
    p - (p/5) with p | F_d."""
    z = cache._prime_z.get(p)
    if z is not None:
        return z
    if p == 2:
        z = 3
    elif p == 5:
        z = 5
    else:
        e = p - arith.jacobi(p, 5)
        for d in arith.divisors(arith.factor(e)):
            if fib_pair_mod(d, p)[0] == 0:
                z = d
                break
        else:  # unreachable: z(p) | p - (p/5)
            raise RuntimeError(f"no divisor of {e} is a rank for prime {p}")
    cache._prime_z[p] = z
    return z


def _prime_rank_lucas(cache: RankCache, p: int) -> int:
    """z_u(p) for any nondegenerate parameters.

    Odd p not dividing disc * a2: smallest divisor d of p - (disc/p) with
    p | u_d.  p = 2 and p | disc: direct scan (cap 6 p^2 comfortably
    exceeds the period mod p).
    """
    z = cache._prime_z.get(p)
    if z is not None:
        return z
    seq = cache.seq
    if math.gcd(p, seq.a2) != 1:
        raise RankUndefinedError(f"z({p}) undefined: {p} divides a2 = {seq.a2}")
    if p == 2 or seq.discriminant % p == 0:
        z = _scan_rank(seq, p, 6 * p * p)
    else:
        e = p - arith.jacobi(seq.discriminant, p)
        for d in arith.divisors(arith.factor(e)):
            if cache.pair_mod(d, p)[0] == 0:
                z = d
                break
        else:
            raise RuntimeError(f"no divisor of {e} is a rank for prime {p}")
    cache._prime_z[p] = z
    return z


def _prime_power_rank(cache: RankCache, p: int, e: int, prime_fn) -> int:
    """z(p^e) lifted from z(p^(e-1)): unchanged if p^e already divides
    that term, else multiplied by p."""
    if p**e > arith.U64_MAX:
        raise OutOfRangeError(f"{p}^{e} out of supported range [1, 2^64 - 1]")
    z = cache._ppow_z.get((p, e))
    if z is not None:
        return z
    z = prime_fn(cache, p)
    cache._ppow_z[(p, 1)] = z
    pk = p
    for j in range(2, e + 1):
        pk *= p
        cached = cache._ppow_z.get((p, j))
        if cached is not None:
            z = cached
            continue
        if cache.pair_mod(z, pk)[0] != 0:
            z *= p
        cache._ppow_z[(p, j)] = z
    return z


def _rank_with(cache: RankCache, m: int, prime_fn) -> RankRecord:
    arith._check_u64(m, "m")
    rec = cache._records.get(m)
    if rec is not None:
        return rec
    z = 1
    for pp in arith.factor(m).factors:
        z = checked_lcm(z, _prime_power_rank(cache, pp.p, pp.e, prime_fn))
    ell = checked_lcm(m, z)
    rec = RankRecord(m, z, ell)
    cache._records[m] = rec
    return rec


def rank_prime(p: int, cache: RankCache | None = None) -> int:
    """z(p) for prime p in the Fibonacci sequence."""
    if not arith.is_prime(p):
        raise ValueError(f"{p} is not prime")
    cache = cache or default_cache()
    return _cache_prime_fn(cache)(cache, p)


def rank_prime_power(p: int, e: int, cache: RankCache | None = None) -> int:
    """z(p^e) for prime p, e >= 1, in the Fibonacci sequence."""
    if not arith.is_prime(p):
        raise ValueError(f"{p} is not prime")
    if e < 1:
        raise ValueError(f"need e >= 1, got {e}")
    cache = cache or default_cache()
    return _prime_power_rank(cache, p, e, _cache_prime_fn(cache))


def rank(m: int, cache: RankCache | None = None) -> RankRecord:
    """RankRecord (m, z(m), ell(m)) for the Fibonacci sequence."""
    cache = cache or default_cache()
    if not cache.seq.is_fibonacci:
        raise ValueError("rank() needs a Fibonacci cache; use lucas_rank for other sequences")
    return _rank_with(cache, m, _cache_prime_fn(cache))


def rank_naive(m: int, limit: int | None = None) -> int:
    """Oracle rank: walk F_n mod m until the residue 0 appears.

    The default cap 6m exceeds the Pisano period, so exceeding it means a
    bug, not a slow case.
    """
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    return _scan_rank(FIBONACCI, m, limit if limit is not None else 6 * m)


def ell_of(m: int, cache: RankCache | None = None) -> int:
    """ell(m) = lcm(m, z(m))."""
    return rank(m, cache).ell


def lucas_rank(seq: LucasParams, m: int, cache: RankCache | None = None) -> RankRecord:
    """RankRecord (m, z_u(m), ell_u(m)); requires gcd(m, a2) = 1."""
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    if math.gcd(m, seq.a2) != 1:
        raise RankUndefinedError(f"z_u({m}) undefined: gcd({m}, a2 = {seq.a2}) > 1")
    if cache is None:
        cache = _shared_cache(seq, True)
    if cache.seq != seq:
        raise ValueError("cache was built for different Lucas parameters")
    return _rank_with(cache, m, _cache_prime_fn(cache))
