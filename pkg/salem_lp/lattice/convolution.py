from typing import Sequence

import numpy as np
from scipy.fft import fftn, ifftn

from salem_lp.lattice.ambient import Ambient
from salem_lp.lattice.point_set import PointSet
from salem_lp.models.exception import SalemValidationException

BRUTE_FORCE_PAIRS = 2 ** 22


def _pair_counts(ambient: Ambient, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    fi = np.flatnonzero(f)
    gi = np.flatnonzero(g)
    sums = ambient.add(fi[:, None], gi[None, :]).ravel()
    weights = np.outer(f[fi], g[gi]).ravel()
    return np.bincount(sums, weights=weights, minlength=ambient.size).round().astype(np.int64)


def _fft_counts(ambient: Ambient, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    f_ = ambient.field
    shape = (f_.p,) * (f_.m * ambient.d)
    conv = ifftn(fftn(f.astype(np.float64).reshape(shape)) * fftn(g.astype(np.float64).reshape(shape)))
    return np.rint(conv.real).astype(np.int64).ravel()


def convolve_counts(ambient: Ambient, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """(f * g)(z) = sum_{x + y = z} f(x) g(y) over the additive group of F_q^d."""
    if np.count_nonzero(f) * np.count_nonzero(g) <= BRUTE_FORCE_PAIRS:
        return _pair_counts(ambient, f, g)
    return _fft_counts(ambient, f, g)


def fiber_counts(sets: Sequence[PointSet]) -> np.ndarray:
    """f(z) = #{(x_1, ..., x_k) in E_1 x ... x E_k : x_1 + ... + x_k = z}."""
    if len(sets) < 1:
        raise SalemValidationException("Need at least one set")
    ambient = sets[0].ambient
    for s in sets[1:]:
        if s.ambient != ambient:
            raise SalemValidationException("Sets live in different ambients")
    counts = sets[0].bits.astype(np.int64)
    for s in sets[1:]:
        counts = convolve_counts(ambient, counts, s.bits.astype(np.int64))
    return counts
