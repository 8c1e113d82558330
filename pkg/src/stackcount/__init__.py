"""Heights, minimal models, Kodaira fibers and exact point counts for
weighted projective stacks over F_q(t)."""

from .binform import BinaryForm, Divisor, Place, bf_gcd, factor_divisor, valuation
from .census import (
    CensusConfig,
    CensusResult,
    CountReport,
    StratumResult,
    count_curves,
    enumerate_poly,
    enumerate_stratum,
    enumerate_wmin,
    verify,
)
from .ffield import FieldSpec, delta_divides, units_by_order
from .motive import (
    MotiveClass,
    MotiveSeries,
    ambient_identity_check,
    inertia_wmin_motive,
    poly1_motive,
    poly_cond_motive,
    proj_motive,
    stratum_gamma_motive,
    wmin_motive,
    zeta_series,
)
from .tate import (
    FiberReport,
    KodairaType,
    WeierstrassModel,
    classify_all,
    classify_place,
    discriminant_j,
)
from .wls import (
    HeightReport,
    TwistDatum,
    VanishingCondition,
    WeightedLinearSeries,
    WeightVector,
    equivalent,
    height_report,
    minimality_defect,
    minimalize,
    multiplicity_of_twist,
    normalized_base_divisor,
    twist_of_multiplicity,
    unminimalize,
)

__version__ = "0.1.0"
