import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from salem_lp.lattice import Ambient, PointSet
from salem_lp.models.exception import SalemValidationException
from salem_lp.spectrum import FourierTable, fourier_transform, lp_norm, salem_exponent

DEFAULT_EPSILON = 0.05


def distance_set(E: PointSet) -> np.ndarray:
    """D(E) = {|x - y|^2 : x, y in E} as sorted field indices, 0 included."""
    if E.cardinality < 1:
        raise SalemValidationException("Distance set needs a non-empty set")
    ambient = E.ambient
    idx = E.indices()
    seen = np.zeros(ambient.q, dtype=bool)
    # row blocks keep the pairwise difference array bounded
    block = max(1, (1 << 22) // max(1, idx.size))
    for start in range(0, idx.size, block):
        diffs = ambient.sub(idx[start:start + block, None], idx[None, :])
        seen[np.unique(ambient.norm_table[diffs])] = True
    return np.flatnonzero(seen)


@dataclass
class SphericalEnergy:
    """
    energy[t] = sum of |Ê(m)|^2 over m != 0 with |m|^2 = t; sphere_sizes[t] = #S_t
    (the origin counted in S_0).
    """
    ambient: Ambient
    cardinality: int
    energy: np.ndarray
    sphere_sizes: np.ndarray
    origin_energy: float
    l4_norm: float

    @property
    def total(self) -> float:
        return float(np.sum(self.energy))

    @property
    def mattila(self) -> float:
        """q^(3d+1) (#E)^-4 sum_{t != 0} energy(t)^2."""
        if self.cardinality == 0:
            raise SalemValidationException("Mattila integral needs a non-empty set")
        q, d = self.ambient.q, self.ambient.d
        tail = float(np.sum(self.energy[1:] ** 2))
        return float(q) ** (3 * d + 1) / float(self.cardinality) ** 4 * tail

    @property
    def gensalem_max(self) -> float:
        return float(np.max(self.energy[1:])) if self.ambient.q > 1 else 0.0

    def gensalem_threshold(self, epsilon: float = DEFAULT_EPSILON) -> float:
        q, d = self.ambient.q, self.ambient.d
        return float(q) ** epsilon * float(q) ** (-1.5 * d - 1) * float(self.cardinality) ** 2

    def sphere_sum(self, t: int) -> float:
        """Sum of |Ê(m)|^2 over |m|^2 = t, the origin included when t = 0."""
        return float(self.energy[t]) + (self.origin_energy if t == 0 else 0.0)

    @property
    def simplex_statistic(self) -> float:
        """S(E) = energy(0)^2 + sum_{t != 0} energy(t)^2."""
        return float(np.sum(self.energy ** 2))

    @property
    def lemma_bound(self) -> float:
        """max_t #S_t q^d ||Ê||_4^4, the Cauchy-Schwarz bound for the simplex statistic."""
        return float(np.max(self.sphere_sizes)) * float(self.ambient.size) * self.l4_norm ** 4

    @property
    def lemma_holds(self) -> bool:
        return self.simplex_statistic <= self.lemma_bound * (1.0 + 1e-12)


def spherical_energy(E: PointSet, table: Optional[FourierTable] = None) -> SphericalEnergy:
    table = table if table is not None else fourier_transform(E)
    ambient = E.ambient
    weights = table.modulus.astype(np.float64) ** 2
    norms = ambient.norm_table
    energy = np.bincount(norms[1:], weights=weights[1:], minlength=ambient.q)
    sizes = np.bincount(norms, minlength=ambient.q)
    return SphericalEnergy(
        ambient=ambient,
        cardinality=E.cardinality,
        energy=energy,
        sphere_sizes=sizes,
        origin_energy=float(weights[0]),
        l4_norm=lp_norm(table, 4),
    )


@dataclass
class DistanceReport:
    q: int
    d: int
    set_size: int
    distance_count: int
    mattila: float
    mattila_bound: float
    s4: float
    salem_bound: float
    l4_sum: float
    l4_reference: float

    @property
    def mattila_ratio(self) -> float:
        return self.distance_count / self.mattila_bound

    @property
    def salem_ratio(self) -> float:
        return self.distance_count / self.salem_bound

    @property
    def l4_ratio(self) -> float:
        """sum_y |Ê(y)|^4 over q^(-3d) (#E)^2; bounded when E is (4, 1/2)-Salem."""
        return self.l4_sum / self.l4_reference

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "d": self.d,
            "set_size": self.set_size,
            "distance_count": self.distance_count,
            "mattila": self.mattila,
            "mattila_bound": self.mattila_bound,
            "mattila_ratio": self.mattila_ratio,
            "s4": self.s4,
            "salem_bound": self.salem_bound,
            "salem_ratio": self.salem_ratio,
            "l4_ratio": self.l4_ratio,
        }


def distance_bound_report(E: PointSet, table: Optional[FourierTable] = None) -> DistanceReport:
    """#D(E) next to q ^ q/M(E) and q ^ q^(1-d) (#E)^(4 s) with s the exponent at 4."""
    ambient = E.ambient
    q, d = ambient.q, ambient.d
    if q % 2 == 0:
        raise SalemValidationException(f"Distance bounds need q odd, got q={q}")
    if E.cardinality < 2:
        return _trivial_report(E)
    table = table if table is not None else fourier_transform(E)
    energy = spherical_energy(E, table)
    mattila = energy.mattila
    s4 = salem_exponent(E, 4, table)
    growth = float(E.cardinality) ** (4 * s4) if math.isfinite(s4) else math.inf
    l4_sum = float(np.sum(table.modulus.astype(np.float64) ** 4))
    return DistanceReport(
        q=q,
        d=d,
        set_size=E.cardinality,
        distance_count=int(distance_set(E).size),
        mattila=mattila,
        mattila_bound=float(q) if mattila <= 1.0 else q / mattila,
        s4=s4,
        salem_bound=min(float(q), float(q) ** (1 - d) * growth),
        l4_sum=l4_sum,
        l4_reference=float(q) ** (-3 * d) * float(E.cardinality) ** 2,
    )


def _trivial_report(E: PointSet) -> DistanceReport:
    """Empty sets and singletons: D(E) is empty or {0}, both bounds read as 1."""
    n = E.cardinality
    ambient = E.ambient
    return DistanceReport(
        q=ambient.q,
        d=ambient.d,
        set_size=n,
        distance_count=n,
        mattila=0.0,
        mattila_bound=1.0,
        s4=math.nan,
        salem_bound=1.0,
        l4_sum=float(ambient.size) * float(ambient.size) ** -4 * float(n),
        l4_reference=float(ambient.size) ** -3 * float(max(n, 1)) ** 2,
    )
