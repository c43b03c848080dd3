"""Density of primes p with d | ord_p(g), by three mutually verifying routes.

* ``density``            exact closed form (rational output)
* ``series_partial``     truncated field-degree series with a rigorous tail
                         bound bracketing the exact value
* ``run_census``         empirical segmented prime census up to x
* ``verify_key_identity`` exact finite-x identity tying the census to the
                         Mobius-weighted residual-index counts
"""

from .arith import (
    Factorization,
    divisors_of_dinfty,
    euler_phi,
    factorize,
    gcd_with_dinfty,
    is_prime,
    mobius,
    squarefree_divisors,
    valuation,
)
from .base import (
    BaseDecomposition,
    RationalBase,
    as_base,
    decompose,
    discriminant_of_sqrt,
    fundamental_discriminant,
    gamma_exponent,
)
from .census import (
    CensusConfig,
    CensusResult,
    CheckpointError,
    KeyIdentityReport,
    OrderRecord,
    full_order,
    order_divisible,
    order_record,
    reduce_mod_p,
    run_census,
    verify_key_identity,
    verify_order_flip,
)
from .density import (
    DensityReport,
    density,
    density_by_transfer,
    epsilon1,
    epsilon_table,
    s_factor,
)
from .kummer import (
    SeriesEstimate,
    closed_sum_s1,
    closed_sum_s2,
    closed_sum_s3,
    degree,
    series_partial,
    tail_bound,
    truncated_sum_s1,
    truncated_sum_s2,
    truncated_sum_s3,
)
from .tables import TABLE_NEGATIVE, TABLE_POSITIVE, TableRow, table_rows

__version__ = "0.1.0"
