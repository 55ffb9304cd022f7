from dataclasses import dataclass, field
from functools import cached_property
from typing import Union

import numpy as np
from scipy.fft import fftn

from salem_lp.common.salem_logger import spectrum_logger
from salem_lp.field.gf import FieldParams
from salem_lp.lattice import Ambient, Point, PointSet
from salem_lp.models.exception import SalemBudgetException, SalemValidationException

TRANSFORM_MODES = ("fast", "axis", "naive")
DEFAULT_NAIVE_BUDGET = 4096
NAIVE_CHUNK = 256


@dataclass(eq=False)
class FourierTable:
    """Ê(x) for every x in F_q^d, stored at idx(x)."""
    ambient: Ambient
    values: np.ndarray
    cardinality: int
    twist: int = 1
    mode: str = field(default="fast")

    def __post_init__(self):
        self.values.setflags(write=False)

    @cached_property
    def modulus(self) -> np.ndarray:
        a = np.abs(self.values)
        a.setflags(write=False)
        return a

    @property
    def origin(self) -> complex:
        return complex(self.values[0])

    def at(self, x: Union[Point, int]) -> complex:
        idx = x.idx if isinstance(x, Point) else int(x)
        return complex(self.values[idx])

    def off_origin(self) -> np.ndarray:
        return self.modulus[1:]


def dual_permutation(field_params: FieldParams, twist: int = 1) -> np.ndarray:
    """
    perm[x] is the index of u(x) = (sum_i x_i Tr(t^(i+j)))_j, so that on one axis
    sum_y f(y) chi(-x y) equals the Z_p^m DFT of f read at perm[x].
    """
    p = field_params.p
    u = (field_params.digits @ field_params.trace_form()) % p
    perm = field_params.from_digits(u)
    if twist != 1:
        perm = perm[field_params.mul(twist, np.arange(field_params.q, dtype=np.int64))]
    return perm


def _fast_transform(E: PointSet, twist: int, workers: int) -> np.ndarray:
    ambient = E.ambient
    f = ambient.field
    radix_shape = (f.p,) * (f.m * ambient.d)
    spec = fftn(E.bits.astype(np.float64).reshape(radix_shape), workers=workers)
    spec = spec.reshape(ambient.shape)
    perm = dual_permutation(f, twist)
    for axis in range(ambient.d):
        spec = np.take(spec, perm, axis=axis)
    return spec.ravel() / ambient.size


def character_matrix(field_params: FieldParams, twist: int = 1) -> np.ndarray:
    ar = np.arange(field_params.q, dtype=np.int64)
    products = field_params.mul(ar[:, None], ar[None, :])
    return np.conj(field_params.chi(products, twist))


def _axis_transform(E: PointSet, twist: int) -> np.ndarray:
    ambient = E.ambient
    matrix = character_matrix(ambient.field, twist)
    arr = E.bits.astype(np.complex128).reshape(ambient.shape)
    for axis in range(ambient.d):
        arr = np.moveaxis(np.tensordot(matrix, arr, axes=([1], [axis])), 0, axis)
    return arr.ravel() / ambient.size


def _naive_transform(E: PointSet, twist: int, naive_budget: int) -> np.ndarray:
    ambient = E.ambient
    if ambient.size > naive_budget:
        raise SalemBudgetException(f"Naive transform limited to q^d <= {naive_budget}, got {ambient.size}")
    ys = E.indices()
    out = np.zeros(ambient.size, dtype=np.complex128)
    if ys.size == 0:
        return out
    for start in range(0, ambient.size, NAIVE_CHUNK):
        xs = np.arange(start, min(start + NAIVE_CHUNK, ambient.size), dtype=np.int64)
        dots = ambient.dot(xs[:, None], ys[None, :])
        out[start:start + xs.size] = np.conj(ambient.field.chi(dots, twist)).sum(axis=1)
    return out / ambient.size


def fourier_transform(E: PointSet,
                      twist: int = 1,
                      mode: str = "fast",
                      workers: int = 1,
                      naive_budget: int = DEFAULT_NAIVE_BUDGET) -> FourierTable:
    """Ê(x) = q^-d sum_{y in E} chi_c(-x.y) with chi_c(a) = chi(c a)."""
    if mode not in TRANSFORM_MODES:
        raise SalemValidationException(f"Unknown transform mode: {mode}")
    if not 0 < twist < E.ambient.q:
        raise SalemValidationException(f"Character twist must be a non-zero field element, got {twist}")
    spectrum_logger.debug(f"Transforming {E!r} mode={mode} twist={twist}")
    if mode == "fast":
        values = _fast_transform(E, twist, workers)
    elif mode == "axis":
        values = _axis_transform(E, twist)
    else:
        values = _naive_transform(E, twist, naive_budget)
    return FourierTable(E.ambient, values, E.cardinality, twist, mode)
