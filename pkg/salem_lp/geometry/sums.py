import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from salem_lp.constructions.sidon import is_sidon
from salem_lp.lattice import PointSet, fiber_counts
from salem_lp.models.exception import SalemValidationException
from salem_lp.spectrum import as_exponent, fourier_transform, lp_norm, salem_exponent

HOLDER_TOLERANCE = 1e-9


class SumsetResult(NamedTuple):
    sumset: PointSet
    fibers: np.ndarray


def sumset(*sets: PointSet) -> SumsetResult:
    """E_1 + ... + E_k together with the fiber counts f(z)."""
    if len(sets) < 2:
        raise SalemValidationException("A sumset needs at least two sets")
    fibers = fiber_counts(sets)
    ambient = sets[0].ambient
    name = "+".join(s.name or "E" for s in sets)
    return SumsetResult(PointSet(ambient, fibers > 0, name=name), fibers)


def iterated_sumset(E: PointSet, k: int) -> PointSet:
    """kE = E + ... + E (k copies); 1E = E."""
    if k < 1:
        raise SalemValidationException(f"Need k >= 1, got {k}")
    if k == 1:
        return E
    return sumset(*([E] * k)).sumset


def generates(E: PointSet, k_max: int) -> Optional[int]:
    """Smallest k <= k_max with kE = F_q^d, None when no such k exists."""
    total = E.ambient.size
    current = E
    for k in range(1, k_max + 1):
        if k > 1:
            current = sumset(current, E).sumset
        if current.cardinality == total:
            return k
    return None


def generation_prediction(E: PointSet, k: int) -> float:
    """q^d ^ (#E)^(2k s) with s the empirical exponent at 2k."""
    s = salem_exponent(E, 2 * k)
    return min(float(E.ambient.size), E.cardinality ** (2 * k * s) if math.isfinite(s) else math.inf)


def difference_set(E: PointSet) -> PointSet:
    name = f"{E.name or 'E'}-{E.name or 'E'}"
    return sumset(E, E.negate()).sumset if E.cardinality else PointSet.empty(E.ambient, name)


def direction_count(E: PointSet) -> int:
    """Number of lines through the origin containing a non-zero difference of E."""
    if E.cardinality < 1:
        raise SalemValidationException("Direction count needs a non-empty set")
    ambient = E.ambient
    diffs = difference_set(E).indices()
    diffs = diffs[diffs != 0]
    if diffs.size == 0:
        return 0
    coords = ambient.decode(diffs)
    leading = coords[np.arange(coords.shape[0]), np.argmax(coords != 0, axis=1)]
    normalized = ambient.field.mul(ambient.field.inv(leading)[:, None], coords)
    return int(np.unique(ambient.encode(normalized)).size)


@dataclass
class SumsetBound:
    lhs: float
    rhs: float
    fiber_energy: float
    sumset_size: int

    @property
    def slack(self) -> float:
        return self.rhs / self.lhs - 1.0 if self.lhs else math.inf

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs * (1.0 + 1e-12)


def _check_conjugates(exponents: Sequence[float]) -> list[float]:
    exponents = [as_exponent(p) for p in exponents]
    if any(p < 1 for p in exponents):
        raise SalemValidationException("Hölder exponents must be >= 1")
    total = sum(0.0 if math.isinf(p) else 1.0 / p for p in exponents)
    if abs(total - 1.0) > HOLDER_TOLERANCE:
        raise SalemValidationException(f"Exponents are not Hölder conjugates: sum of 1/p_i = {total}")
    return exponents


def sumset_bound_check(sets: Sequence[PointSet], exponents: Sequence[float]) -> SumsetBound:
    """
    (prod #E_i)^2 <= #(sum E_i) (q^-d prod (#E_i)^2 + q^(2kd) prod ||Ê_i||_(2p_i)^2).
    Also reports #(sum E_i) * sum_z f(z)^2, the Cauchy-Schwarz middle term.
    """
    if len(sets) != len(exponents):
        raise SalemValidationException("Need one exponent per set")
    exponents = _check_conjugates(exponents)
    result = sumset(*sets)
    ambient = sets[0].ambient
    k, d, q = len(sets), ambient.d, ambient.q
    sizes = [float(s.cardinality) for s in sets]
    lhs = math.prod(sizes) ** 2
    norms = [lp_norm(fourier_transform(s), 2 * p) for s, p in zip(sets, exponents)]
    inner = float(q) ** (-d) * math.prod(n ** 2 for n in sizes) + float(q) ** (2 * k * d) * math.prod(n ** 2 for n in norms)
    rhs = result.sumset.cardinality * inner
    fiber_energy = float(result.sumset.cardinality) * float(np.sum(result.fibers.astype(np.float64) ** 2))
    return SumsetBound(lhs=lhs, rhs=rhs, fiber_energy=fiber_energy, sumset_size=result.sumset.cardinality)


@dataclass
class SumsetGoodReport:
    q: int
    s4: float
    sum_size: int
    difference_size: int
    directions: int
    sum_prediction: float
    direction_prediction: float

    @property
    def sum_ratio(self) -> float:
        return self.sum_size / self.sum_prediction

    @property
    def difference_ratio(self) -> float:
        return self.difference_size / self.sum_prediction

    @property
    def direction_ratio(self) -> float:
        return self.directions / self.direction_prediction

    @property
    def pigeonhole_holds(self) -> bool:
        # every non-zero difference lies on one of the counted lines
        return self.difference_size <= self.q * self.directions + 1


def sumset_good_report(E: PointSet) -> SumsetGoodReport:
    """#(E+E), #(E-E) against (#E)^(4s) ^ q^d and #Dir(E) against (#E)^(4s)/q ^ q^(d-1)."""
    ambient = E.ambient
    q, d = ambient.q, ambient.d
    s4 = salem_exponent(E, 4)
    growth = E.cardinality ** (4 * s4) if math.isfinite(s4) else math.inf
    return SumsetGoodReport(
        q=q,
        s4=s4,
        sum_size=sumset(E, E).sumset.cardinality,
        difference_size=difference_set(E).cardinality,
        directions=direction_count(E),
        sum_prediction=min(growth, float(q ** d)),
        direction_prediction=min(growth / q, float(q ** (d - 1))),
    )


@dataclass
class SidonSumCheck:
    p: float
    sumset_norm: float
    lower: float
    upper: float
    s_emp: Optional[float]
    s_predicted: Optional[float]

    @property
    def holds(self) -> bool:
        tol = 1e-12 * max(1.0, abs(self.upper))
        return self.lower - tol <= self.sumset_norm <= self.upper + tol


def sidon_sum_check(E: PointSet, p: float) -> SidonSumCheck:
    """
    For Sidon E: q^d ||Ê||_(2p)^2 / 2 - q^-d #E <= ||(E+E)^||_p <= q^-d #E + q^d ||Ê||_(2p)^2 / 2,
    with the exponent of E at p reported next to 2/p for p >= 4.
    """
    p = as_exponent(p)
    verdict = is_sidon(E)
    if not verdict:
        raise SalemValidationException(f"{E!r} is not a Sidon set, witness {verdict.witness}")
    ambient = E.ambient
    total = float(ambient.size)
    norm_2p = lp_norm(fourier_transform(E), 2 * p)
    main = 0.5 * total * norm_2p ** 2
    point_mass = E.cardinality / total
    sums = sumset(E, E).sumset
    s_emp = salem_exponent(E, p) if E.cardinality >= 2 else None
    return SidonSumCheck(
        p=p,
        sumset_norm=lp_norm(fourier_transform(sums), p),
        lower=main - point_mass,
        upper=point_mass + main,
        s_emp=s_emp,
        s_predicted=2.0 / p if p >= 4 else None,
    )


@dataclass
class SidonDoublingReport:
    p: float
    s_sumset: float
    s_set: float


def sidon_doubling_report(E: PointSet, p: float) -> SidonDoublingReport:
    """Exponent of E+E at p next to the exponent of E at 2p; a Sidon set passes the latter to the former."""
    p = as_exponent(p)
    verdict = is_sidon(E)
    if not verdict:
        raise SalemValidationException(f"{E!r} is not a Sidon set, witness {verdict.witness}")
    sums = sumset(E, E).sumset
    return SidonDoublingReport(p=p, s_sumset=salem_exponent(sums, p), s_set=salem_exponent(E, 2 * p))
