"""Liouville-function averages over binary forms, with the exact arithmetic they need.

Modules
-------
arith       lambda on Z and Q, sq/d_n, radicals, the (a|b) symbol, root numbers
factor      factorization backend (SPF tables, Baillie-PSW, Pollard rho)
lattice     lattice cosets in Z^2, convex polygons, exact point counts
quadfield   quadratic fields: elements, ideals, prime splitting, lambda extensions
sieve       Rosser upper-bound weights and the anti-sieve sigma transform
experiments measured Liouville sums and decay reports
report      JSON/CSV configs and reports
verify      property suites
"""

from .arith import (
    LiouvilleTable,
    TableTooSmall,
    jacobi,
    liouville,
    liouville_rational,
    liouville_table,
    radical_and_mobius,
    root_number,
    sq_and_d,
    symbol_ab,
)
from .experiments import (
    FormSpec,
    Tables,
    decay_report,
    run_bv,
    run_chowla,
    run_progression,
    run_root_number,
    run_short_interval,
)
from .factor import FactoredInteger, factorize, is_prime
from .lattice import (
    ConvexRegion,
    LatticeCoset,
    affine_image,
    count_points,
    intersect,
    pullback_pair,
    row_iterator,
)
from .quadfield import (
    Ideal,
    QuadField,
    QuadInt,
    count_bounded_norm,
    embed_j,
    factor_ideal,
    factor_prime,
    form_to_norm,
    ideal_row_progression,
    lambda_K,
    lambda_ext,
)
from .sieve import defect_sum, ideal_sigma, rosser_upper, sigma_from_lambda, split_triple_sum

__version__ = "0.1.0"
