"""satlab: almost-prime point searches on cubic hypersurface families.

Exact integer and polynomial arithmetic (factoring with verified Omega
counts, fraction-free resultants, fixed divisors), weighted-sieve constant
evaluation, the three parametrized point families, and deterministic
bounded-height searches with delimited/JSON/figure reporting.
"""

from .arith import (
    Factorization,
    OMEGA_INFINITE,
    ProjectivePoint,
    arith_functions,
    density_in_box,
    factor,
    is_probable_prime,
    omega,
    omega_projective,
    primes_in_ap,
    to_primitive,
)
from .constants import (
    admissible_r,
    beta_default,
    lemma_bounds,
    minimize_m,
    minimize_shape,
    r_closed_form,
    saturation_bounds,
    shape_coefficients,
)
from .errors import SatlabError
from .intpoly import (
    IntPoly,
    bound_checks,
    count_zeros_mod,
    discriminant,
    fixed_divisor,
    is_squarefree,
    poly_gcd,
    resultant,
    resultant_forms,
    sieve_modulus,
)
from .reports import dumps_json, dumps_tsv, load_records_tsv, write_report
from .search import (
    BoxSpec,
    SearchRecord,
    SearchReport,
    approximate_point,
    density_report,
    elkies_variety,
    prime_forms_search,
    projective_distance,
    scan_map,
    skew_fiber_variety,
    skew_surface_search,
    threefold_search,
    threefold_variety,
)
from .varieties import (
    SkewCubicModel,
    ThreefoldFiber,
    admissible_residues,
    admissible_triples,
    check_local_conditions,
    default_model,
    elkies_forms,
    elkies_map,
    fiber_forms,
    fiber_point,
    find_split_fibers,
    is_normalized,
    normalize_model,
    threefold_fiber,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
