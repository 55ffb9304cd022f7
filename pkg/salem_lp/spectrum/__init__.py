from salem_lp.spectrum.transform import (
    FourierTable,
    fourier_transform,
    dual_permutation,
    character_matrix,
    TRANSFORM_MODES,
)
from salem_lp.spectrum.norms import (
    lp_norm,
    salem_exponent,
    spectral_bounds,
    plancherel_residual,
    spectral_profile,
    SpectralBounds,
    SpectralProfile,
    ProfileRecord,
    PROFILE_COLUMNS,
    as_exponent,
    format_exponent,
    parse_exponent_list,
)
from salem_lp.spectrum.predictions import (
    concavity_lower_bound,
    continuity_upper_bound,
    interpolated_exponent,
    product_exponent,
    product_reverse_exponent,
    subspace_exponent,
    bigsets_exponents,
    uniform_level_exponent,
)

__all__ = [
    'FourierTable',
    'fourier_transform',
    'dual_permutation',
    'character_matrix',
    'TRANSFORM_MODES',
    'lp_norm',
    'salem_exponent',
    'spectral_bounds',
    'plancherel_residual',
    'spectral_profile',
    'SpectralBounds',
    'SpectralProfile',
    'ProfileRecord',
    'PROFILE_COLUMNS',
    'as_exponent',
    'format_exponent',
    'parse_exponent_list',
    'concavity_lower_bound',
    'continuity_upper_bound',
    'interpolated_exponent',
    'product_exponent',
    'product_reverse_exponent',
    'subspace_exponent',
    'bigsets_exponents',
    'uniform_level_exponent',
]
