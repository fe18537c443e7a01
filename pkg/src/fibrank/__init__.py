"""fibrank: ranks of appearance, gcd(n, F_n) membership, and Mobius-series
densities for Fibonacci and general nondegenerate Lucas sequences."""

from .arith import (
    Factorization,
    OutOfRangeError,
    PrimePower,
    U64_MAX,
    divisors,
    factor,
    gcd_lcm,
    is_prime,
    jacobi,
    mobius,
)
from .density import (
    GeneratorSet,
    MembershipVerdict,
    NonMemberError,
    SeriesApproximation,
    density_bk_series,
    density_series,
    heilbronn_lower_bound,
    inclusion_exclusion_check,
    is_member,
    lk_generators,
    lucas_density_series,
    lucas_is_member,
)
from .fib import (
    FIBONACCI,
    LucasParams,
    fib_exact,
    fib_pair_mod,
    fib_valuation,
    gcd_n_fib,
    gcd_n_lucas,
    lucas_pair_mod,
    lucas_valuation,
)
from .oracle import (
    CountReport,
    ScanRow,
    count_Ak,
    count_many,
    nonmultiple_density,
    partial_ell_sum,
    scan_B,
    scan_low_rank_primes,
    verify_structure,
)
from .rank import (
    RankCache,
    RankRecord,
    RankUndefinedError,
    default_cache,
    ell_of,
    lucas_rank,
    rank,
    rank_naive,
    rank_prime,
    rank_prime_power,
)

__version__ = "0.1.0"

__all__ = [
    "CountReport",
    "FIBONACCI",
    "Factorization",
    "GeneratorSet",
    "LucasParams",
    "MembershipVerdict",
    "NonMemberError",
    "OutOfRangeError",
    "PrimePower",
    "RankCache",
    "RankRecord",
    "RankUndefinedError",
    "ScanRow",
    "SeriesApproximation",
    "U64_MAX",
    "count_Ak",
    "count_many",
    "default_cache",
    "density_bk_series",
    "density_series",
    "divisors",
    "ell_of",
    "factor",
    "fib_exact",
    "fib_pair_mod",
    "fib_valuation",
    "gcd_lcm",
    "gcd_n_fib",
    "gcd_n_lucas",
    "heilbronn_lower_bound",
    "inclusion_exclusion_check",
    "is_member",
    "is_prime",
    "jacobi",
    "lk_generators",
    "lucas_density_series",
    "lucas_is_member",
    "lucas_pair_mod",
    "lucas_rank",
    "lucas_valuation",
    "mobius",
    "nonmultiple_density",
    "partial_ell_sum",
    "rank",
    "rank_naive",
    "rank_prime",
    "rank_prime_power",
    "scan_B",
    "scan_low_rank_primes",
    "verify_structure",
]
