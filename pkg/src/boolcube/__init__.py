"""Exact spectral analysis of Boolean functions on the discrete hypercube.

The package keeps every Boolean-sourced quantity in exact integer or
rational arithmetic (coefficients scaled by 2^n, squared weights by
4^n); floats appear only for genuinely real quantities such as entropy,
norms, and fractional-power moments.  A FastAPI service exposes the
whole surface; the command-line client drives it in-process by default.
"""

from .core import (
    BFN1Error,
    DIMENSION_CAP,
    PseudoBooleanFunction,
    TruthTable,
    char_sign,
    evaluate,
    flip,
    is_monotone,
    parse,
    popcount,
    serialize,
)
from .families import (
    TribesParams,
    compose,
    default_tribe_count,
    iterate_compose,
    make_and,
    make_dictator,
    make_example_h,
    make_majority,
    make_or,
    make_parity,
    make_random,
    make_random_real,
    make_tribes,
)
from .spectrum import (
    SpectralSampleDist,
    Spectrum,
    biased_expectation,
    degree,
    draw_sample,
    inverse,
    russo_derivative,
    sample_moments,
    spectrum_to_json,
    superset_weight_sums,
    transform,
    weight_by_size_num,
)
from .calculus import (
    InfluenceProfile,
    RestrictionContext,
    build_profile,
    derivative,
    influence,
    noise,
    pivotal_set,
    pivotal_sizes,
    profile_to_json,
    restrict,
    restricted_moment,
)
from .entropy import (
    EntropyReport,
    JuntaSet,
    build_entropy_report,
    concentration_check,
    entropy_bits,
    entropy_report_to_json,
    junta_set,
    markov_tail,
    min_entropy,
)
from .build import FAMILY_NAMES, build_family

__version__ = "0.1.0"
