import math
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from salem_lp.lattice import PointSet
from salem_lp.models.exception import SalemValidationException
from salem_lp.spectrum.predictions import concavity_lower_bound, continuity_upper_bound
from salem_lp.spectrum.transform import FourierTable, fourier_transform

Exponent = Union[float, int, str]

PROFILE_COLUMNS = [
    "field", "d", "set_name", "set_size", "p", "lp_norm", "s_emp",
    "bound_trivial", "bound_interp", "bound_lower",
]


def as_exponent(p: Exponent) -> float:
    if isinstance(p, str):
        text = p.strip().lower()
        if text in ("inf", "infinity", "∞"):
            return math.inf
        try:
            return float(text)
        except ValueError:
            raise SalemValidationException(f"Not an exponent: {p!r}")
    return float(p)


def format_exponent(p: float) -> str:
    if math.isinf(p):
        return "inf"
    return str(int(p)) if float(p).is_integer() else repr(float(p))


def parse_exponent_list(text: str) -> list[float]:
    return [as_exponent(part) for part in str(text).split(",") if part.strip()]


def lp_norm(table: FourierTable, p: Exponent) -> float:
    """(q^-d sum_{x != 0} |Ê(x)|^p)^(1/p); the maximum over x != 0 for p = inf."""
    p = as_exponent(p)
    if p < 1:
        raise SalemValidationException(f"L^p norms need p >= 1, got {p}")
    a = table.off_origin()
    if a.size == 0:
        return 0.0
    peak = float(a.max())
    if math.isinf(p):
        return peak
    if peak == 0.0:
        return 0.0
    # scaled by the peak so high powers of small moduli do not underflow
    mean = float(np.sum((a / peak) ** p)) / table.ambient.size
    return peak * mean ** (1.0 / p)


def _table_for(E: PointSet, table: Optional[FourierTable]) -> FourierTable:
    return table if table is not None else fourier_transform(E)


def salem_exponent(E: PointSet, p: Exponent, table: Optional[FourierTable] = None) -> float:
    """The s with q^d ||Ê||_p = (#E)^(1-s) at this q; +inf when the norm vanishes."""
    if E.cardinality < 2:
        raise SalemValidationException(f"Salem exponent needs #E >= 2, got {E.cardinality}")
    lp = lp_norm(_table_for(E, table), p)
    if lp == 0.0:
        return math.inf
    return 1.0 - math.log(E.ambient.size * lp) / math.log(E.cardinality)


@dataclass
class SpectralBounds:
    trivial: float
    interpolation: Optional[float]
    lower: float


def spectral_bounds(E: PointSet, p: Exponent) -> SpectralBounds:
    p = as_exponent(p)
    n = E.cardinality
    total = E.ambient.size
    interpolation = None
    if p >= 2:
        interpolation = n / total if math.isinf(p) else n ** (1.0 - 1.0 / p) / total
    lower = math.sqrt(max(0.0, 1.0 - n / total)) * math.sqrt(n) / total
    return SpectralBounds(trivial=n / total, interpolation=interpolation, lower=lower)


def plancherel_residual(E: PointSet, table: Optional[FourierTable] = None) -> float:
    table = _table_for(E, table)
    energy = float(np.sum(table.modulus ** 2))
    expected = E.cardinality / E.ambient.size
    if expected == 0.0:
        return abs(energy)
    return abs(energy - expected) / expected


@dataclass
class ProfileRecord:
    p: float
    lp_norm: float
    s_emp: Optional[float]
    bound_trivial: float
    bound_interp: Optional[float]
    bound_lower: float
    concavity_bound: Optional[float] = None
    continuity_bound: Optional[float] = None


@dataclass
class SpectralProfile:
    set_name: str
    field_spec: str
    d: int
    q: int
    set_size: int
    beta: Optional[float]
    records: list[ProfileRecord] = field(default_factory=list)

    def record(self, p: Exponent) -> ProfileRecord:
        p = as_exponent(p)
        for rec in self.records:
            if rec.p == p:
                return rec
        raise SalemValidationException(f"No profile record for p={format_exponent(p)}")

    def rows(self) -> list[dict]:
        rows = []
        for rec in self.records:
            rows.append({
                "field": self.field_spec,
                "d": self.d,
                "set_name": self.set_name,
                "set_size": self.set_size,
                "p": format_exponent(rec.p),
                "lp_norm": rec.lp_norm,
                "s_emp": "" if rec.s_emp is None else ("inf" if math.isinf(rec.s_emp) else rec.s_emp),
                "bound_trivial": rec.bound_trivial,
                "bound_interp": "" if rec.bound_interp is None else rec.bound_interp,
                "bound_lower": rec.bound_lower,
            })
        return rows

    def to_dict(self) -> dict:
        data = asdict(self)
        for rec in data["records"]:
            rec["p"] = format_exponent(rec["p"])
        return data


def spectral_profile(E: PointSet, p_grid: Sequence[Exponent], table: Optional[FourierTable] = None) -> SpectralProfile:
    grid = [as_exponent(p) for p in p_grid]
    if any(p < 1 for p in grid):
        raise SalemValidationException("Profile exponents must lie in [1, inf]")
    if grid != sorted(grid):
        raise SalemValidationException("Profile exponents must be sorted")
    table = _table_for(E, table)
    ambient = E.ambient
    n = E.cardinality
    beta = math.log(n) / math.log(ambient.q) if n >= 2 else None
    s_inf = salem_exponent(E, math.inf, table) if n >= 2 else None
    profile = SpectralProfile(
        set_name=E.name or "unnamed",
        field_spec=ambient.field.spec,
        d=ambient.d,
        q=ambient.q,
        set_size=n,
        beta=beta,
    )
    for p in grid:
        bounds = spectral_bounds(E, p)
        s_emp = salem_exponent(E, p, table) if n >= 2 else None
        concavity = continuity = None
        if s_inf is not None and not math.isinf(s_inf) and p >= 2:
            concavity = concavity_lower_bound(s_inf, p)
            continuity = continuity_upper_bound(s_inf, p, beta, ambient.d)
        profile.records.append(ProfileRecord(
            p=p,
            lp_norm=lp_norm(table, p),
            s_emp=s_emp,
            bound_trivial=bounds.trivial,
            bound_interp=bounds.interpolation,
            bound_lower=bounds.lower,
            concavity_bound=concavity,
            continuity_bound=continuity,
        ))
    return profile
