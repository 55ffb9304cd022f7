import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Optional

import numpy as np

from salem_lp.common.salem_logger import spectrum_logger
from salem_lp.field.gf import FieldParams
from salem_lp.geometry.distances import spherical_energy
from salem_lp.lattice import Ambient, PointSet
from salem_lp.models.exception import SalemBudgetException, SalemValidationException
from salem_lp.spectrum import fourier_transform, salem_exponent

DEFAULT_ORBIT_BUDGET = 20_000_000
DEFAULT_TUPLE_BUDGET = 5_000_000
SIMPLEX_CONVENTION = "ordered tuples of distinct points; signature = full squared-distance matrix"


def _orthogonal_columns(field_params: FieldParams, d: int) -> list[np.ndarray]:
    ambient = Ambient(field_params, d)
    unit = np.flatnonzero(ambient.norm_table == 1)
    found: list[np.ndarray] = []

    def extend(columns: list[int]) -> None:
        if len(columns) == d:
            found.append(np.stack([ambient.decode(c) for c in columns], axis=1))
            return
        candidates = unit
        for c in columns:
            candidates = candidates[ambient.dot(candidates, c) == 0]
        for c in candidates:
            extend(columns + [int(c)])

    extend([])
    return found


@lru_cache(maxsize=16)
def _orthogonal_group(field_params: FieldParams, d: int) -> tuple[np.ndarray, ...]:
    return tuple(_orthogonal_columns(field_params, d))


def orthogonal_group(field_params: FieldParams, d: int) -> list[np.ndarray]:
    """Every d x d matrix A over F_q with A^T A = I, found column by column."""
    if d < 1:
        raise SalemValidationException(f"Dimension must be positive, got {d}")
    if field_params.q ** d > 1 << 16:
        raise SalemBudgetException(f"Orthogonal group enumeration limited to q^d <= 65536, got {field_params.q ** d}")
    return list(_orthogonal_group(field_params, d))


@dataclass
class SimplexCensus:
    k: int
    signature_count: int
    orbit_count: Optional[int]
    upper_bound: int
    lower_prediction: float
    simplex_statistic: float
    degenerate_note: str = SIMPLEX_CONVENTION
    metadata: dict = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return self.orbit_count is None or self.signature_count <= self.orbit_count

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "signature_count": self.signature_count,
            "orbit_count": self.orbit_count,
            "upper_bound": self.upper_bound,
            "lower_prediction": self.lower_prediction,
            "simplex_statistic": self.simplex_statistic,
            "degenerate_note": self.degenerate_note,
        }


def _tuples(E: PointSet, k: int, budget: int) -> np.ndarray:
    n = E.cardinality
    count = math.perm(n, k + 1)
    if count > budget:
        raise SalemBudgetException(f"{count} ordered {k}-simplices exceed the tuple budget {budget}")
    idx = E.indices()
    if count == 0:
        return np.zeros((0, k + 1), dtype=np.int64)
    positions = np.array(list(permutations(range(n), k + 1)), dtype=np.int64)
    return idx[positions]


def _signatures(ambient: Ambient, tuples: np.ndarray) -> np.ndarray:
    k1 = tuples.shape[1]
    key = np.zeros(tuples.shape[0], dtype=np.int64)
    for i in range(k1):
        for j in range(i + 1, k1):
            dist = ambient.norm_table[ambient.sub(tuples[:, i], tuples[:, j])]
            key = key * ambient.q + dist
    return key


def _orbit_count(ambient: Ambient, tuples: np.ndarray, group: list[np.ndarray]) -> int:
    f = ambient.field
    k = tuples.shape[1] - 1
    if float(ambient.size) ** k >= 2.0 ** 62:
        raise SalemBudgetException("Orbit keys do not fit in 64 bits")
    rel = ambient.decode(ambient.sub(tuples[:, 1:], tuples[:, :1]))
    best = None
    for g in group:
        # (g v)_i = sum_j g_ij v_j
        products = f.mul(g[None, None, :, :], rel[:, :, None, :])
        image = products[..., 0]
        for j in range(1, ambient.d):
            image = f.add(image, products[..., j])
        encoded = ambient.encode(image)
        key = np.zeros(tuples.shape[0], dtype=np.int64)
        for j in range(k):
            key = key * ambient.size + encoded[:, j]
        best = key if best is None else np.minimum(best, key)
    return int(np.unique(best).size)


def simplex_census(E: PointSet,
                   k: int,
                   oracle: bool = False,
                   orbit_budget: int = DEFAULT_ORBIT_BUDGET,
                   tuple_budget: int = DEFAULT_TUPLE_BUDGET) -> SimplexCensus:
    """
    Counts squared-distance signatures of ordered (k+1)-tuples of distinct points of E and,
    with the oracle, the orbits of those tuples under translations and O_d(F_q).
    """
    ambient = E.ambient
    if not 1 <= k <= ambient.d:
        raise SalemValidationException(f"Need 1 <= k <= d, got k={k}, d={ambient.d}")
    tuples = _tuples(E, k, tuple_budget)
    signature_count = int(np.unique(_signatures(ambient, tuples)).size)
    edges = math.comb(k + 1, 2)
    table = fourier_transform(E)
    statistic = spherical_energy(E, table).simplex_statistic
    prediction = math.nan
    if E.cardinality >= 2:
        s4 = salem_exponent(E, 4, table)
        growth = float(E.cardinality) ** (k - 1 + 4 * s4) if math.isfinite(s4) else math.inf
        prediction = min(float(ambient.q) ** edges, growth * float(ambient.q) ** (edges - k * ambient.d))
    census = SimplexCensus(
        k=k,
        signature_count=signature_count,
        orbit_count=None,
        upper_bound=ambient.q ** edges,
        lower_prediction=prediction,
        simplex_statistic=statistic,
    )
    if not oracle:
        return census
    try:
        group = orthogonal_group(ambient.field, ambient.d)
        work = len(group) * tuples.shape[0]
        if work > orbit_budget:
            raise SalemBudgetException(f"Orbit oracle needs {work} operations, budget {orbit_budget}")
        census.orbit_count = _orbit_count(ambient, tuples, group)
        census.metadata["group_order"] = len(group)
    except SalemBudgetException as e:
        spectrum_logger.warning(f"Orbit oracle skipped: {e}")
        census.degenerate_note = f"{SIMPLEX_CONVENTION}; orbit oracle skipped ({e})"
        return census
    if census.orbit_count != signature_count:
        census.degenerate_note = (
            f"{SIMPLEX_CONVENTION}; {signature_count} signatures split into {census.orbit_count} orbits"
        )
    return census
