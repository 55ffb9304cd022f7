from salem_lp.constructions.sets import (
    sphere,
    cone_C,
    cone_D,
    cylinder,
    paraboloid,
    singleton,
    full,
    subspace,
    subspace_complement,
    diagonal,
    direct_sum,
    polynomial_curve,
    curve_report,
    CurveReport,
    veronese,
    kloosterman_curve,
    kloosterman_image,
    random_set,
    random_size,
    subsample,
    annihilator_of_plane,
    AnnihilatorConstruction,
    minus_one_is_square,
    coordinate,
)
from salem_lp.constructions.polynomials import parse_polynomial, evaluate, rank
from salem_lp.constructions.recipe import SetRecipe
from salem_lp.constructions.sidon import is_sidon, sidon_fibers, SidonResult
from salem_lp.constructions.level_sets import level_set_uniformity, LevelSetReport
from salem_lp.constructions.closed_forms import (
    diagonal_modulus,
    subspace_complement_modulus,
    annihilator_modulus,
    closed_form_table,
    max_deviation,
)

__all__ = [
    'sphere',
    'cone_C',
    'cone_D',
    'cylinder',
    'paraboloid',
    'singleton',
    'full',
    'subspace',
    'subspace_complement',
    'diagonal',
    'direct_sum',
    'polynomial_curve',
    'curve_report',
    'CurveReport',
    'veronese',
    'kloosterman_curve',
    'kloosterman_image',
    'random_set',
    'random_size',
    'subsample',
    'annihilator_of_plane',
    'AnnihilatorConstruction',
    'minus_one_is_square',
    'coordinate',
    'parse_polynomial',
    'evaluate',
    'rank',
    'SetRecipe',
    'is_sidon',
    'sidon_fibers',
    'SidonResult',
    'level_set_uniformity',
    'LevelSetReport',
    'diagonal_modulus',
    'subspace_complement_modulus',
    'annihilator_modulus',
    'closed_form_table',
    'max_deviation',
]
