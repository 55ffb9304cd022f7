import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from salem_lp.constructions.polynomials import Polynomial, as_coefficients, degree, evaluate
from salem_lp.field.gf import FieldParams
from salem_lp.lattice import Ambient, Point, PointSet, ambient_make
from salem_lp.models.exception import SalemValidationException
from salem_lp.spectrum import as_exponent, fourier_transform

CHARSUM_KINDS = ("general", "kloosterman", "weil")
GRID_CHUNK = 1024


@dataclass
class CurveMap:
    """
    A map f from F_q (or F_q^*) to F_q^d given by polynomial components or as the
    Kloosterman pair x -> (x, ..., x, 1/x). extended adds f(0) = 0 to the Kloosterman map.
    """
    ambient: Ambient
    kind: str
    coefficients: list[list[int]] = field(default_factory=list)
    extended: bool = False

    @staticmethod
    def polynomial(ambient: Ambient, polys: Sequence[Polynomial]) -> "CurveMap":
        if len(polys) != ambient.d:
            raise SalemValidationException(f"Need {ambient.d} polynomial components, got {len(polys)}")
        coeffs = [as_coefficients(poly, ambient.field) for poly in polys]
        return CurveMap(ambient, "general", coeffs)

    @staticmethod
    def kloosterman(ambient: Ambient, extended: bool = False) -> "CurveMap":
        if ambient.d < 2:
            raise SalemValidationException("Kloosterman map needs d >= 2")
        return CurveMap(ambient, "kloosterman", extended=extended)

    @staticmethod
    def weil(field_params: FieldParams) -> "CurveMap":
        return CurveMap(Ambient(field_params, 2), "weil", [[0, 1], [0, 0, 1]])

    @property
    def domain(self) -> np.ndarray:
        if self.kind == "kloosterman" and not self.extended:
            return np.arange(1, self.ambient.q, dtype=np.int64)
        return np.arange(self.ambient.q, dtype=np.int64)

    @cached_property
    def images(self) -> np.ndarray:
        """idx(f(x)) for every x in the domain, with repetitions."""
        f = self.ambient.field
        xs = self.domain
        if self.kind == "kloosterman":
            coords = np.repeat(xs[:, None], self.ambient.d, axis=1)
            nonzero = xs != 0
            coords[nonzero, -1] = f.inv(xs[nonzero])
            return self.ambient.encode(coords)
        coords = np.stack([evaluate(f, c, xs) for c in self.coefficients], axis=-1)
        return self.ambient.encode(coords)

    @property
    def injective(self) -> bool:
        return np.unique(self.images).size == self.images.size

    @property
    def degrees(self) -> list[int]:
        return [degree(c) for c in self.coefficients]

    def image_set(self) -> PointSet:
        return PointSet.from_indices(self.ambient, self.images, name=f"{self.kind}_image")


def char_sum(f: CurveMap, z) -> complex:
    """S_f(z) = sum over the domain of chi(z . f(x))."""
    z = z.idx if isinstance(z, Point) else int(f.ambient.check_index(z))
    phases = f.ambient.dot(f.images, z)
    return complex(np.sum(f.ambient.field.chi(phases)))


@dataclass
class CharSumGrid:
    kind: str
    ambient: Ambient
    values: np.ndarray

    @property
    def q(self) -> int:
        return self.ambient.q

    def at(self, z) -> complex:
        idx = z.idx if isinstance(z, Point) else int(z)
        return complex(self.values[idx])

    def lp(self, p) -> float:
        """(q^-d sum_{z != 0} |S(z)|^p)^(1/p); the maximum for p = inf."""
        p = as_exponent(p)
        a = np.abs(self.values[1:])
        if a.size == 0:
            return 0.0
        peak = float(a.max())
        if math.isinf(p) or peak == 0.0:
            return peak
        return peak * (float(np.sum((a / peak) ** p)) / self.ambient.size) ** (1.0 / p)

    def rows(self) -> list[dict]:
        coords = self.ambient.decode(self.ambient.all_indices())
        rows = []
        for idx, value in enumerate(self.values):
            row = {"z": idx}
            if self.ambient.d == 2:
                row = {"a": int(coords[idx, 0]), "b": int(coords[idx, 1])}
            row.update({"re": value.real, "im": value.imag, "abs": abs(value)})
            rows.append(row)
        return rows


def char_sum_grid(f: CurveMap) -> CharSumGrid:
    """S_f(z) for every z by direct summation over the domain."""
    ambient = f.ambient
    values = np.zeros(ambient.size, dtype=np.complex128)
    images = f.images
    for start in range(0, ambient.size, GRID_CHUNK):
        zs = np.arange(start, min(start + GRID_CHUNK, ambient.size), dtype=np.int64)
        phases = ambient.dot(zs[:, None], images[None, :])
        values[start:start + zs.size] = ambient.field.chi(phases).sum(axis=1)
    return CharSumGrid(f.kind, ambient, values)


def make_grid(kind: str, field_params: FieldParams, d: int = 2,
              polys: Optional[Sequence[Polynomial]] = None) -> CharSumGrid:
    """Weil W(a, b), Kloosterman K(a, b) or a general S_f grid."""
    if kind not in CHARSUM_KINDS:
        raise SalemValidationException(f"Unknown character sum kind: {kind}")
    if kind == "weil":
        return char_sum_grid(CurveMap.weil(field_params))
    ambient = ambient_make(field_params, d)
    if kind == "kloosterman":
        return char_sum_grid(CurveMap.kloosterman(ambient))
    if not polys:
        raise SalemValidationException("A general character sum needs polynomial components")
    return char_sum_grid(CurveMap.polynomial(ambient, polys))


@dataclass
class MomentSummary:
    p: float
    value: float
    bound: float

    @property
    def ratio(self) -> float:
        return self.value / self.bound

    @property
    def holds(self) -> bool:
        return self.value <= self.bound * (1.0 + 1e-12)

    def to_dict(self) -> dict:
        p = "inf" if math.isinf(self.p) else self.p
        return {"p": p, "value": self.value, "bound": self.bound, "ratio": self.ratio}


def charsum_lp(grid: CharSumGrid, p, constant: Optional[float] = None) -> MomentSummary:
    """The L^p moment of the grid against c sqrt(q); c defaults to 2 for Weil and 3 for Kloosterman sums."""
    if constant is None:
        constant = {"weil": 2.0, "kloosterman": 3.0}.get(grid.kind, 1.0)
    return MomentSummary(as_exponent(p), grid.lp(p), constant * math.sqrt(grid.q))


@dataclass
class SpectrumLink:
    residual: Optional[float]
    reason: Optional[str] = None

    @property
    def holds(self) -> bool:
        return self.residual is not None and self.residual < 1e-9


def spectrum_link_check(f: CurveMap, grid: Optional[CharSumGrid] = None) -> SpectrumLink:
    """max_z |q^d Ê(z) - conj(S_f(z))| for E = f(domain); skipped when f is not injective."""
    if not f.injective:
        return SpectrumLink(None, "map is not injective, identity skipped")
    grid = grid if grid is not None else char_sum_grid(f)
    table = fourier_transform(f.image_set())
    residual = float(np.max(np.abs(f.ambient.size * table.values - np.conj(grid.values))))
    return SpectrumLink(residual)


@dataclass
class ParsevalCheck:
    energy: float
    collisions: int
    size: int

    @property
    def residual(self) -> float:
        expected = float(self.size) * self.collisions
        return abs(self.energy - expected) / expected

    @property
    def holds(self) -> bool:
        return self.residual < 1e-9


def parseval_check(f: CurveMap, grid: Optional[CharSumGrid] = None) -> ParsevalCheck:
    """sum_z |S_f(z)|^2 = q^d #{(x, x') : f(x) = f(x')}."""
    grid = grid if grid is not None else char_sum_grid(f)
    _, counts = np.unique(f.images, return_counts=True)
    return ParsevalCheck(
        energy=float(np.sum(np.abs(grid.values) ** 2)),
        collisions=int(np.sum(counts.astype(np.int64) ** 2)),
        size=f.ambient.size,
    )


@dataclass
class WeilCheck:
    checked: int
    violations: int
    flagged_degrees: list[int]
    worst_ratio: float

    @property
    def holds(self) -> bool:
        return self.violations == 0


def weil_pointwise_check(f: CurveMap, grid: Optional[CharSumGrid] = None) -> WeilCheck:
    """
    |S_f(z)| <= (n - 1) sqrt(q) with n the degree of the phase z . f, for every z whose phase
    is non-constant of degree prime to p. Degrees divisible by p are flagged and skipped.
    """
    if f.kind == "kloosterman":
        raise SalemValidationException("The Weil check applies to polynomial maps")
    grid = grid if grid is not None else char_sum_grid(f)
    ambient = f.ambient
    field_params = ambient.field
    width = max(len(c) for c in f.coefficients)
    matrix = np.array([c + [0] * (width - len(c)) for c in f.coefficients], dtype=np.int64)
    zs = ambient.decode(ambient.all_indices())
    phase = np.zeros((ambient.size, width), dtype=np.int64)
    for i in range(ambient.d):
        phase = field_params.add(phase, field_params.mul(zs[:, i:i + 1], matrix[i][None, :]))
    nonzero = phase[:, 1:] != 0
    degrees = np.where(nonzero.any(axis=1), width - 1 - np.argmax(nonzero[:, ::-1], axis=1), 0)
    flagged = (degrees > 0) & (degrees % field_params.p == 0)
    testable = (degrees > 0) & ~flagged
    bound = (degrees[testable] - 1) * math.sqrt(ambient.q)
    observed = np.abs(grid.values[testable])
    violations = int(np.count_nonzero(observed > bound + 1e-6))
    ratios = observed / np.where(bound > 0, bound, 1.0)
    return WeilCheck(
        checked=int(np.count_nonzero(testable)),
        violations=violations,
        flagged_degrees=sorted({int(n) for n in degrees[flagged]}),
        worst_ratio=float(ratios.max()) if ratios.size else 0.0,
    )
