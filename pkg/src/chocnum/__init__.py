"""Exact arithmetic for chocolate-bar break counts: the split recursion and
its brute-force oracle, the derived integer sequences, p-adic valuations and
factorizations, modular residue scans with eventual-period detection, and
exact rational power-series checks of the generating-function identities.
"""

from .arith import (
    CofactorStatus,
    Factorization,
    binomial,
    divides_factorial,
    factor,
    factorial,
    is_prime,
    legendre,
    nu_p,
    nu_p_factorial,
)
from .chocolate import (
    CacheFormatError,
    ChocolateTable,
    SequenceFrontierError,
    SequenceKind,
    SequenceSpec,
    chocolate2,
    chocolate_number,
    generate,
    load_cache,
    save_cache,
)
from .modular import (
    ModContext,
    PeriodReport,
    ScanRecord,
    binom_sum_1_mod6,
    binom_sum_5_mod6,
    chocolate2_mod,
    conjecture_scan,
    detect_eventual_period,
    first_mod3_violation,
    hyper_numerators_mod,
    mod3_pattern_check,
    persistent_divisor_check,
    zero_tail_prime,
)
from .oracle import count_breaks, count_sequences, random_break_count
from .series import (
    RationalSeries,
    chocolate2_gf,
    hyper_numerators,
    hypergeom_series,
    linear_ode_residual_of,
    log_derivative_residual_of,
    riccati_residual,
    riccati_residual_of,
    verify_linear_ode,
    verify_log_derivative,
)

__version__ = "0.1.0"

__all__ = [
    "CofactorStatus",
    "Factorization",
    "binomial",
    "divides_factorial",
    "factor",
    "factorial",
    "is_prime",
    "legendre",
    "nu_p",
    "nu_p_factorial",
    "CacheFormatError",
    "ChocolateTable",
    "SequenceFrontierError",
    "SequenceKind",
    "SequenceSpec",
    "chocolate2",
    "chocolate_number",
    "generate",
    "load_cache",
    "save_cache",
    "ModContext",
    "PeriodReport",
    "ScanRecord",
    "binom_sum_1_mod6",
    "binom_sum_5_mod6",
    "chocolate2_mod",
    "conjecture_scan",
    "detect_eventual_period",
    "first_mod3_violation",
    "hyper_numerators_mod",
    "mod3_pattern_check",
    "persistent_divisor_check",
    "zero_tail_prime",
    "count_breaks",
    "count_sequences",
    "random_break_count",
    "RationalSeries",
    "chocolate2_gf",
    "hyper_numerators",
    "hypergeom_series",
    "linear_ode_residual_of",
    "log_derivative_residual_of",
    "riccati_residual",
    "riccati_residual_of",
    "verify_linear_ode",
    "verify_log_derivative",
    "__version__",
]
