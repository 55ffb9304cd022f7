import math
from dataclasses import dataclass, field

import numpy as np

from salem_lp.lattice import PointSet, ambient_make
from salem_lp.models.exception import SalemValidationException
from salem_lp.spectrum import fourier_transform, uniform_level_exponent


@dataclass
class LevelSetReport:
    alpha: float
    sizes: dict[int, int] = field(default_factory=dict)
    normalized_sup: dict[int, float] = field(default_factory=dict)

    @property
    def max_normalized_sup(self) -> float:
        return max(self.normalized_sup.values(), default=0.0)

    def predicted(self, p: float) -> float:
        return uniform_level_exponent(self.alpha, p)


def level_set_uniformity(E: PointSet) -> LevelSetReport:
    """
    Splits E in F_q^(d-1) (+) F_q^* by its last coordinate y and reports, per level set E_y,
    its size and q^(d-1) sup_{x != 0} |Ê_y(x)| / q^(alpha/2) with #E_y ~ q^alpha on average.
    """
    ambient = E.ambient
    if ambient.d < 2:
        raise SalemValidationException("Level sets need d >= 2")
    q = ambient.q
    rows = E.bits.reshape(q, ambient.size // q)
    if rows[0].any():
        raise SalemValidationException("Level-set decomposition needs the last coordinate to be non-zero on E")
    level_ambient = ambient_make(ambient.field, ambient.d - 1, ambient.size)
    sizes = {y: int(np.count_nonzero(rows[y])) for y in range(1, q) if rows[y].any()}
    if not sizes:
        raise SalemValidationException("Empty set has no level sets")
    mean = sum(sizes.values()) / len(sizes)
    alpha = math.log(mean) / math.log(q) if mean > 1 else 0.0
    report = LevelSetReport(alpha=alpha, sizes=sizes)
    scale = level_ambient.size / q ** (alpha / 2.0)
    for y in sizes:
        table = fourier_transform(PointSet(level_ambient, rows[y]))
        sup = float(table.off_origin().max()) if level_ambient.size > 1 else 0.0
        report.normalized_sup[y] = sup * scale
    return report
