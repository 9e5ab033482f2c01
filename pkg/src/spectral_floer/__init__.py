"""Exact spectral invariants of filtered Floer-type complexes over Novikov rings."""

from .complex import (
    ChainMapData,
    FloerComplex,
    NovikovChain,
    Orbit,
    apply_chain_map,
    apply_loop_action,
    boundary_apply,
    compose_chain_maps,
    level,
    time_reversal,
    validate_chain_map,
    validate_complex,
    windowed_homology,
)
from .novikov import (
    Direction,
    GammaGroup,
    NovikovElement,
    leading_term,
    nov_add,
    nov_invert_truncated,
    nov_mul,
    valuation,
)
from .spectral import (
    HomologyClassSpec,
    SpectralResult,
    brute_force_spectral,
    continuity_check,
    gap_bound_check,
    spectral_number,
    spectrality_check,
)

__version__ = "0.1.0"
