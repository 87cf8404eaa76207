"""Exact-arithmetic toolkit for almost-prime sums of three generalized
m-gonal numbers: local densities, genus coefficients, beta factors, spinor
norm tables, Rosser sieve weights, and desk-scale representability scans."""

from .arith import (
    DiscriminantDecomposition,
    FactoredInteger,
    big_omega,
    factorize,
    fundamental_decomposition,
    kronecker,
    squarefree_part,
)
from .polygonal import (
    DivisorTriple,
    PolygonalFamily,
    RepresentationTriple,
    TargetInvariants,
    count_sieved,
    enumerate_representations,
    p_m,
    r_X,
    target_invariants,
)
from .localdensity import (
    LocalDensityQuery,
    StabilizationError,
    gamma_p,
    local_density,
    local_density_oracle,
    psi_h,
)
from .eisenstein import (
    class_number,
    hurwitz_class_number,
    l_value,
    level_invariants,
    r_gen,
    r_gen_lower_bound,
    siegel_calibration,
)
from .beta import BetaQuery, aggregates, beta_p, beta_product, bound_audit, main_term, w_p
from .spinor import (
    SpinorKind,
    genus_equals_spinor_genus_d1,
    spinor_norm_group,
    theta_spn_equals_gen_odd,
    unary_obstruction_support,
)
from .sieve import (
    Lambda_minus,
    RosserWeightSystem,
    fundamental_inequality_check,
    lambda_minus,
    lambda_plus,
    sieve_lower_transform_check,
    triple_product_inequality_check,
    y_m,
)
from .experiments import (
    ScanConfig,
    ScanReport,
    constants_audit,
    density_one_census,
    density_one_membership,
    eureka_scan,
    report_emit,
)

__version__ = "0.1.0"
