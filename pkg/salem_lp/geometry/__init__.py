from salem_lp.geometry.sums import (
    sumset,
    SumsetResult,
    iterated_sumset,
    generates,
    generation_prediction,
    difference_set,
    direction_count,
    sumset_bound_check,
    SumsetBound,
    sumset_good_report,
    SumsetGoodReport,
    sidon_sum_check,
    SidonSumCheck,
    sidon_doubling_report,
    SidonDoublingReport,
)
from salem_lp.geometry.distances import (
    distance_set,
    spherical_energy,
    SphericalEnergy,
    distance_bound_report,
    DistanceReport,
)
from salem_lp.geometry.simplices import (
    orthogonal_group,
    simplex_census,
    SimplexCensus,
)

__all__ = [
    'sumset',
    'SumsetResult',
    'iterated_sumset',
    'generates',
    'generation_prediction',
    'difference_set',
    'direction_count',
    'sumset_bound_check',
    'SumsetBound',
    'sumset_good_report',
    'SumsetGoodReport',
    'sidon_sum_check',
    'SidonSumCheck',
    'sidon_doubling_report',
    'SidonDoublingReport',
    'distance_set',
    'spherical_energy',
    'SphericalEnergy',
    'distance_bound_report',
    'DistanceReport',
    'orthogonal_group',
    'simplex_census',
    'SimplexCensus',
]
