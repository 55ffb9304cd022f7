from salem_lp.core import Salem
from salem_lp.state.salem_session import SalemSession
from salem_lp.field.gf import field_make, parse_field_spec, FieldParams, FieldElement
from salem_lp.lattice import Ambient, Point, PointSet, ambient_make
from salem_lp.spectrum import fourier_transform, lp_norm, salem_exponent, spectral_profile
from salem_lp.builders.recipe_builder import build_recipe
from salem_lp.common.salem_logger import get_logger
