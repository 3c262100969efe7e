"""L2 approximation of step functions on Q_p by shifted liftings of characters of Z_p."""

from .characters import (
    Character,
    FourierCoefficients,
    char_eval,
    character_function,
    characters_up_to_level,
    fast_transform,
    fourier_all,
    fourier_coefficient,
    fourier_truncate,
)
from .glue import (
    ApproxReport,
    CosetPiece,
    approximate,
    approximate_at_level,
    approximate_piece,
    coset_decompose,
    membership_check,
)
from .haar import HaarMeasure, ball_measure, inner_product, integrate, l2_norm, uniqueness_ratio
from .padic import (
    Ball,
    DomainError,
    PAdicApprox,
    PrecisionError,
    Prime,
    RefinementError,
    add,
    ball_split,
    coset_reps,
    negate,
    reduce,
)
from .step import (
    StepFunction,
    absolute,
    combine,
    conj,
    evaluate,
    indicator,
    lift,
    refine,
    restrict,
    scale,
    shift,
)

__version__ = "0.1.0"
