from salem_lp.lattice.ambient import Ambient, Point, ambient_make, dot, norm_sq, DEFAULT_MAX_INDEX
from salem_lp.lattice.point_set import PointSet, read_set_file, write_set_file, set_from_payload, set_to_payload
from salem_lp.lattice.convolution import convolve_counts, fiber_counts

__all__ = [
    'Ambient',
    'Point',
    'ambient_make',
    'dot',
    'norm_sq',
    'DEFAULT_MAX_INDEX',
    'PointSet',
    'read_set_file',
    'write_set_file',
    'set_from_payload',
    'set_to_payload',
    'convolve_counts',
    'fiber_counts',
]
