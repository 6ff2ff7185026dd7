"""sumsetlab: an exact laboratory for additive energies of convex sets.

Builds s-convex and near-convex sets with exact rational elements,
computes their k-fold energies, rich-sum spectra, sumset sizes and
doubling constants exactly, runs lucky-pair cell decompositions, and
fits measured growth exponents against a catalogue of predicted bounds.
"""

from .bounds import (
    BOUND_IDS,
    BoundSpec,
    FitReport,
    alpha,
    fit_exponent,
    predicted,
    verify_bound,
)
from .convexity import (
    ConvexityOrder,
    DifferenceSequence,
    FunctionSpec,
    IntegerPower,
    IntegerRoot,
    Polynomial,
    convexity_order,
    delta_h,
    discrete_derivative_fn,
    eval_fn,
    parse_function,
)
from .core import (
    OrderedSet,
    Rational,
    SparseCounts,
    convolve,
    make_set,
    mass_of_squares,
    read_set,
    write_set,
)
from .engine import (
    DoublingReport,
    PopularClass,
    Spectrum,
    doubling,
    energy_T,
    energy_cross,
    fractional_moment,
    moment,
    popular_dyadic_class,
    representation,
    signed_sumset,
    spectrum,
    verification,
)
from .errors import (
    DomainError,
    InputError,
    ResourceError,
    SumsetLabError,
    Unsupported,
    VerificationError,
)
from .families import (
    FamilySpec,
    SplitMix64,
    gen_composed,
    gen_gap,
    gen_interval,
    gen_power,
    gen_random_s_convex,
    parse_family,
)
from .kernels import BACKEND
from .luckypairs import (
    GridPartition,
    LuckyPair,
    build_partition,
    count_between,
    diagonal_cover,
    hyperplane_cell_count,
    lucky_census,
    lucky_pairs_for_sum,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BOUND_IDS",
    "BoundSpec",
    "ConvexityOrder",
    "DifferenceSequence",
    "DomainError",
    "DoublingReport",
    "FamilySpec",
    "FitReport",
    "FunctionSpec",
    "GridPartition",
    "InputError",
    "IntegerPower",
    "IntegerRoot",
    "LuckyPair",
    "OrderedSet",
    "Polynomial",
    "PopularClass",
    "Rational",
    "ResourceError",
    "SparseCounts",
    "Spectrum",
    "SplitMix64",
    "SumsetLabError",
    "Unsupported",
    "VerificationError",
    "alpha",
    "build_partition",
    "convexity_order",
    "convolve",
    "count_between",
    "delta_h",
    "diagonal_cover",
    "discrete_derivative_fn",
    "doubling",
    "energy_T",
    "energy_cross",
    "eval_fn",
    "fit_exponent",
    "fractional_moment",
    "gen_composed",
    "gen_gap",
    "gen_interval",
    "gen_power",
    "gen_random_s_convex",
    "hyperplane_cell_count",
    "lucky_census",
    "lucky_pairs_for_sum",
    "make_set",
    "mass_of_squares",
    "moment",
    "parse_family",
    "parse_function",
    "popular_dyadic_class",
    "predicted",
    "read_set",
    "representation",
    "signed_sumset",
    "spectrum",
    "verification",
    "verify_bound",
    "write_set",
]
