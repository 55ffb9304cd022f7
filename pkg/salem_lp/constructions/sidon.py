from typing import NamedTuple, Optional

import numpy as np

from salem_lp.lattice import PointSet, fiber_counts


class SidonResult(NamedTuple):
    """witness is (u, v, w, z) with u + v = w + z and {u, v} != {w, z} when E is not Sidon."""
    is_sidon: bool
    witness: Optional[tuple[int, int, int, int]]

    def __bool__(self) -> bool:
        return self.is_sidon


def sidon_fibers(E: PointSet) -> tuple[np.ndarray, np.ndarray]:
    """Fiber counts g of E + E over ordered pairs, and the count each y must have if E is Sidon."""
    ambient = E.ambient
    g = fiber_counts([E, E])
    idx = E.indices()
    doubles = np.zeros(ambient.size, dtype=bool)
    doubles[ambient.add(idx, idx)] = True
    expected = np.where(doubles, 1, 2)
    if ambient.field.p == 2 and idx.size:
        # x + x = 0 for every x
        expected[0] = idx.size
    return g, np.where(g > 0, expected, 0)


def _witness(E: PointSet, y: int) -> tuple[int, int, int, int]:
    ambient = E.ambient
    idx = E.indices()
    partners = ambient.sub(y, idx)
    members = np.isin(partners, idx)
    pairs = sorted({tuple(sorted((int(u), int(v)))) for u, v in zip(idx[members], partners[members])})
    (u, v), (w, z) = pairs[0], pairs[1]
    return u, v, w, z


def is_sidon(E: PointSet) -> SidonResult:
    """Sidon iff every y in E + E has exactly the minimal number of representations."""
    g, expected = sidon_fibers(E)
    bad = np.flatnonzero(g != expected)
    if bad.size == 0:
        return SidonResult(True, None)
    return SidonResult(False, _witness(E, int(bad[0])))
