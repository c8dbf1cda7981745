"""Exact-arithmetic laboratory for the times-a, times-b action on the circle."""

from .torus import (
    CylinderInterval,
    DigitWord,
    TorusPoint,
    apply_times,
    cylinder_of,
    digits_of,
    make_point,
    orbit_fracs,
    orbit_grid,
    point_of_word,
)
from .measures import (
    EmpiricalMeasure,
    SemiEquidistReport,
    TestFunctionTarget,
    convergence_diagnostic,
    empirical_measure,
    fourier_average,
    invariance_defect,
    lebesgue_reference,
    semiequidist_profile,
    weak_star_distance,
)
from .moran import DimensionPair, MoranStructure, box_counting_estimate, moran_dims, realize_intervals
from .irregular import (
    BumpFunction,
    IrregularRecipe,
    Schedule,
    TestFamily,
    build_test_family,
    bump_function,
    choose_schedule,
    estimate_X_measure,
    induced_moran_structure,
    membership_X,
    modulus_l,
    synthesize_point,
    verify_irregular,
)
from .typecount import (
    ChoiceRecord,
    KDistribution,
    block_entropy_estimate,
    count_R,
    dist,
    entropy,
    growth_profile,
    itinerary_choices,
    kt_bound,
    q_bound,
)
from .cli import mult_indep_check

__version__ = "0.1.0"
