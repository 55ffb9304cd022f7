import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from salem_lp.charsums.sums import CurveMap, char_sum_grid
from salem_lp.field.gf import FieldParams
from salem_lp.lattice import Ambient, fiber_counts
from salem_lp.models.exception import SalemValidationException

KLOOSTERMAN_FIBERS = (1, 2)
KLOOSTERMAN_CURVE_FIBERS = (2, 3, 4)


@dataclass
class KloostermanPointwise:
    """
    Off-curve sums v != 0 of two points of the extended curve have 1 or 2 representations;
    sums landing on the curve pick up the two through (0, 0), so there g lies in {2, 3, 4}.
    """
    q: int
    checked: int
    violations: int
    worst_ratio: float
    origin_value: complex
    antipodal_fiber: int
    fiber_histogram: dict[int, int] = field(default_factory=dict)
    curve_fiber_histogram: dict[int, int] = field(default_factory=dict)
    fiber_exceptions: int = 0

    @property
    def holds(self) -> bool:
        return (
            self.violations == 0
            and abs(self.origin_value - (self.q - 1)) < 1e-9
            and self.antipodal_fiber == self.q
            and self.fiber_exceptions == 0
        )


def _histogram(fibers: np.ndarray) -> dict[int, int]:
    return dict(sorted(Counter(int(g) for g in fibers if g > 0).items()))


def kloosterman_pointwise_check(field_params: FieldParams) -> KloostermanPointwise:
    """
    |K(a, b)| <= 2 sqrt(q) for ab != 0, K(0, 0) = q - 1, and the fiber counts of the
    extended curve {(x, 1/x)} + {(0, 0)} summed with itself: g(0) = q, g in {1, 2} off
    the curve and g in {2, 3, 4} on it.
    """
    q = field_params.q
    if q % 2 == 0:
        raise SalemValidationException(f"Kloosterman check needs q odd, got q={q}")
    ambient = Ambient(field_params, 2)
    grid = char_sum_grid(CurveMap.kloosterman(ambient))
    coords = ambient.decode(ambient.all_indices())
    both = (coords[:, 0] != 0) & (coords[:, 1] != 0)
    observed = np.abs(grid.values[both])
    bound = 2.0 * math.sqrt(q)
    image = CurveMap.kloosterman(ambient, extended=True).image_set()
    fibers = fiber_counts([image, image])
    on_curve = image.bits.copy()
    on_curve[0] = False
    off_curve = ~image.bits
    off_histogram = _histogram(fibers[off_curve])
    on_histogram = _histogram(fibers[on_curve])
    exceptions = (sum(n for g, n in off_histogram.items() if g not in KLOOSTERMAN_FIBERS)
                  + sum(n for g, n in on_histogram.items() if g not in KLOOSTERMAN_CURVE_FIBERS))
    return KloostermanPointwise(
        q=q,
        checked=int(observed.size),
        violations=int(np.count_nonzero(observed > bound + 1e-9)),
        worst_ratio=float(observed.max() / bound) if observed.size else 0.0,
        origin_value=grid.at(0),
        antipodal_fiber=int(fibers[0]),
        fiber_histogram=off_histogram,
        curve_fiber_histogram=on_histogram,
        fiber_exceptions=exceptions,
    )


@dataclass
class KloostermanOffset:
    kloosterman_l4: float
    extended_l4: float

    @property
    def holds(self) -> bool:
        return self.kloosterman_l4 <= self.extended_l4 + 1.0 + 1e-12


def kloosterman_offset_check(field_params: FieldParams) -> KloostermanOffset:
    """||K||_4 <= ||S_f||_4 + 1 where f is the Kloosterman map with f(0) = (0, 0)."""
    ambient = Ambient(field_params, 2)
    kloosterman = char_sum_grid(CurveMap.kloosterman(ambient))
    extended = char_sum_grid(CurveMap.kloosterman(ambient, extended=True))
    return KloostermanOffset(kloosterman.lp(4), extended.lp(4))
