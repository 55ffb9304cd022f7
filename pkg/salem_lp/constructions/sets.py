import json
import math
import os
from functools import reduce
from typing import NamedTuple, Optional, Sequence, Union

import numpy as np

from salem_lp.common.salem_logger import builder_logger
from salem_lp.constructions.polynomials import Polynomial, as_coefficients, degree, evaluate, rank
from salem_lp.field.gf import FieldElement
from salem_lp.lattice import Ambient, PointSet, ambient_make
from salem_lp.models.exception import SalemIllegalStateException, SalemValidationException

Scalar = Union[int, FieldElement]


def _scalar(ambient: Ambient, value: Scalar) -> int:
    return ambient.field.element(value).idx


def coordinate(ambient: Ambient, i: int) -> np.ndarray:
    """Values of coordinate i, shaped to broadcast against the (q,)*d grid of point indices."""
    shape = [1] * ambient.d
    shape[ambient.d - 1 - i] = ambient.q
    return np.arange(ambient.q, dtype=np.int64).reshape(shape)


def _grid(ambient: Ambient, values: np.ndarray) -> np.ndarray:
    return np.broadcast_to(values, ambient.shape).ravel()


def _sum_of_squares(ambient: Ambient, coords: Sequence[int]) -> np.ndarray:
    f = ambient.field
    squares = np.asarray(f.squares, dtype=np.int64)
    if not coords:
        return np.zeros((1,) * ambient.d, dtype=np.int64)
    return reduce(f.add, [squares[coordinate(ambient, i)] for i in coords])


def _need_dimension(d: int, least: int, what: str) -> None:
    if d < least:
        raise SalemValidationException(f"{what} needs d >= {least}, got d={d}")


# -- quadrics -----------------------------------------------------------------

def sphere(ambient: Ambient, r: Scalar) -> PointSet:
    """S_r^(d-1) = {y : |y|^2 = r}."""
    r = _scalar(ambient, r)
    return PointSet.from_mask(ambient, ambient.norm_table == r, name=f"sphere(r={r})")


def minus_one_is_square(ambient: Ambient) -> bool:
    f = ambient.field
    return f.is_square(int(f.neg(1)))


def cone_C(ambient: Ambient) -> PointSet:
    """z_1^2 + ... + z_(d-2)^2 = z_(d-1) z_d with z_d != 0."""
    d = ambient.d
    _need_dimension(d, 3, "cone C")
    f = ambient.field
    lhs = _sum_of_squares(ambient, range(d - 2))
    last = coordinate(ambient, d - 1)
    rhs = f.mul(coordinate(ambient, d - 2), last)
    return PointSet.from_mask(ambient, _grid(ambient, (lhs == rhs) & (last != 0)), name="coneC")


def cone_D(ambient: Ambient) -> PointSet:
    """z_1^2 + ... + z_(d-1)^2 = z_d^2 with z_d != 0."""
    d = ambient.d
    _need_dimension(d, 3, "cone D")
    f = ambient.field
    lhs = _sum_of_squares(ambient, range(d - 1))
    last = coordinate(ambient, d - 1)
    rhs = np.asarray(f.squares, dtype=np.int64)[last]
    return PointSet.from_mask(ambient, _grid(ambient, (lhs == rhs) & (last != 0)), name="coneD")


def cylinder(ambient: Ambient, r: Scalar) -> PointSet:
    """S_r^(d-2) in the first d-1 coordinates, the last coordinate free."""
    _need_dimension(ambient.d, 3, "cylinder")
    r = _scalar(ambient, r)
    if r == 0:
        raise SalemValidationException("Cylinder radius must be non-zero; use sphere(r=0) for the zero radius")
    lhs = _sum_of_squares(ambient, range(ambient.d - 1))
    return PointSet.from_mask(ambient, _grid(ambient, lhs == r), name=f"cylinder(r={r})")


def paraboloid(ambient: Ambient, y: Scalar = 1) -> PointSet:
    """z_1^2 + ... + z_(d-1)^2 = z_d y for a non-zero scale y."""
    _need_dimension(ambient.d, 2, "paraboloid")
    y = _scalar(ambient, y)
    if y == 0:
        raise SalemValidationException("Paraboloid scale must be non-zero")
    f = ambient.field
    lhs = _sum_of_squares(ambient, range(ambient.d - 1))
    rhs = f.mul(coordinate(ambient, ambient.d - 1), y)
    return PointSet.from_mask(ambient, _grid(ambient, lhs == rhs), name=f"paraboloid(y={y})")


# -- subspaces ----------------------------------------------------------------

def singleton(ambient: Ambient, point: int = 0) -> PointSet:
    return PointSet.from_indices(ambient, [point], name="singleton")


def full(ambient: Ambient) -> PointSet:
    return PointSet.full(ambient)


def subspace(ambient: Ambient, k: int) -> PointSet:
    """E_k = F_q^k x {0}."""
    if not 0 <= k <= ambient.d:
        raise SalemValidationException(f"Subspace dimension must lie in [0, {ambient.d}], got {k}")
    mask = np.arange(ambient.size, dtype=np.int64) < ambient.q ** k
    return PointSet.from_mask(ambient, mask, name=f"line(k={k})")


def subspace_complement(ambient: Ambient, k: int) -> PointSet:
    if not 1 <= k < ambient.d:
        raise SalemValidationException(f"Need 1 <= k < d, got k={k}, d={ambient.d}")
    complement = subspace(ambient, k).complement()
    complement.name = f"complement(k={k})"
    return complement


def diagonal(ambient: Ambient, n: int) -> PointSet:
    """{(k, ..., k) : k in F_q^n}, the block k repeated d/n times."""
    d = ambient.d
    if n < 1 or d % n:
        raise SalemValidationException(f"Block length n={n} must divide d={d}")
    block = ambient_make(ambient.field, n, ambient.size)
    coords = block.decode(block.all_indices())
    return PointSet.from_points(ambient, np.tile(coords, (1, d // n)), name=f"diagonal(n={n})")


def direct_sum(E: PointSet, F: PointSet, max_index: Optional[int] = None) -> PointSet:
    """E (+) F in F_q^(k + l); the coordinates of E come first."""
    if E.ambient.field != F.ambient.field:
        raise SalemValidationException("Direct sum needs both sets over the same field")
    d = E.ambient.d + F.ambient.d
    ambient = ambient_make(E.ambient.field, d, max_index or E.ambient.q ** d)
    bits = np.outer(F.bits, E.bits).ravel()
    name = f"({E.name or 'E'})+({F.name or 'F'})"
    return PointSet(ambient, bits, name=name)


# -- curves -------------------------------------------------------------------

class CurveReport(NamedTuple):
    degrees: list[int]
    span_dimension: int
    collapsed: int
    weil_flags: list[int]


def curve_report(ambient: Ambient, polys: Sequence[Polynomial]) -> CurveReport:
    """
    Degrees, the dimension of the span of the components modulo constants, the
    number of parameter values lost to collisions and the degrees divisible by p.
    """
    f = ambient.field
    coeffs = [as_coefficients(poly, f) for poly in polys]
    degrees = [degree(c) for c in coeffs]
    span = rank(f, [c[1:] for c in coeffs])
    image = _curve_indices(ambient, coeffs)
    collapsed = ambient.q - int(np.unique(image).size)
    flags = [deg for deg in degrees if deg > 0 and deg % f.p == 0]
    return CurveReport(degrees, span, collapsed, flags)


def _curve_indices(ambient: Ambient, coeffs: Sequence[Sequence[int]]) -> np.ndarray:
    xs = np.arange(ambient.q, dtype=np.int64)
    coords = np.stack([evaluate(ambient.field, c, xs) for c in coeffs], axis=-1)
    return ambient.encode(coords)


def polynomial_curve(ambient: Ambient, polys: Sequence[Polynomial], max_degree: int = 64) -> PointSet:
    """{(f_1(k), ..., f_d(k)) : k in F_q}; colliding parameters collapse."""
    if len(polys) != ambient.d:
        raise SalemValidationException(f"Need {ambient.d} polynomial components, got {len(polys)}")
    f = ambient.field
    coeffs = [as_coefficients(poly, f) for poly in polys]
    too_high = [degree(c) for c in coeffs if degree(c) > max_degree]
    if too_high:
        raise SalemValidationException(f"Polynomial degree {max(too_high)} exceeds the limit {max_degree}")
    curve = PointSet.from_indices(ambient, _curve_indices(ambient, coeffs), name="curve")
    report = curve_report(ambient, polys)
    if report.collapsed:
        builder_logger.warning(f"Curve lost {report.collapsed} parameter values to collisions, #E={curve.cardinality}")
    if report.weil_flags:
        builder_logger.warning(f"Curve component degrees {report.weil_flags} are divisible by p={f.p}")
    curve.metadata["curve"] = report._asdict()
    return curve


def veronese(ambient: Ambient) -> PointSet:
    curve = polynomial_curve(ambient, [[0] * i + [1] for i in range(1, ambient.d + 1)])
    curve.name = "veronese"
    return curve


def kloosterman_curve(ambient: Ambient) -> PointSet:
    """{(k, ..., k, 1/k) : k in F_q^*}."""
    _need_dimension(ambient.d, 2, "Kloosterman curve")
    f = ambient.field
    ks = np.arange(1, ambient.q, dtype=np.int64)
    coords = np.repeat(ks[:, None], ambient.d, axis=1)
    coords[:, -1] = f.inv(ks)
    return PointSet.from_points(ambient, coords, name="kloosterman")


def kloosterman_image(ambient: Ambient) -> PointSet:
    """The Kloosterman curve in the plane with f(0) = (0, 0) added."""
    if ambient.d != 2:
        raise SalemValidationException("The extended Kloosterman image lives in d=2")
    image = kloosterman_curve(ambient)
    image.insert(0)
    image.name = "kloosterman_image"
    return image


# -- random sets --------------------------------------------------------------

def random_size(ambient: Ambient, alpha: float) -> int:
    if not 0 < alpha <= ambient.d:
        raise SalemValidationException(f"alpha must lie in (0, {ambient.d}], got {alpha}")
    # exact powers like 9^0.5 must not floor down through rounding
    return int(math.floor(ambient.q ** alpha + 1e-9))


def _generator(ambient: Ambient, seed: int) -> np.random.Generator:
    f = ambient.field
    sequence = np.random.SeedSequence(entropy=int(seed), spawn_key=(f.p, f.m, ambient.d))
    return np.random.Generator(np.random.Philox(sequence))


def random_set(ambient: Ambient, alpha: float, seed: int) -> PointSet:
    """A uniform subset of size floor(q^alpha); fixed by (field, d, alpha, seed)."""
    size = random_size(ambient, alpha)
    rng = _generator(ambient, seed)
    chosen = rng.choice(ambient.size, size=size, replace=False, shuffle=False)
    return PointSet.from_indices(ambient, chosen, name=f"random(alpha={alpha},seed={seed})")


def subsample(E: PointSet, size: int, seed: int) -> PointSet:
    """A uniform subset F of E with #F = size."""
    if not 0 <= size <= E.cardinality:
        raise SalemValidationException(f"Subsample size must lie in [0, {E.cardinality}], got {size}")
    rng = _generator(E.ambient, seed)
    chosen = rng.choice(E.indices(), size=size, replace=False, shuffle=False)
    return PointSet.from_indices(E.ambient, chosen, name=f"subsample({E.name},size={size},seed={seed})")


# -- annihilator of an isotropic line -------------------------------------------

class AnnihilatorConstruction(NamedTuple):
    plane: PointSet
    annihilator: PointSet
    radius: int


def _directions(ambient: Ambient) -> np.ndarray:
    """One representative per line through the origin: first non-zero coordinate equal to 1."""
    idx = ambient.all_indices()[1:]
    coords = ambient.decode(idx)
    leading = coords[np.arange(coords.shape[0]), np.argmax(coords != 0, axis=1)]
    return idx[leading == 1]


def _find_line(ambient: Ambient) -> Optional[tuple[int, int, int]]:
    norms = ambient.norm_table
    points = ambient.all_indices()
    scalars = np.arange(ambient.q, dtype=np.int64)
    for v in _directions(ambient):
        steps = np.array([int(ambient.scale(int(c), int(v))) for c in scalars], dtype=np.int64)
        line_norms = norms[ambient.add(points[:, None], steps[None, :])]
        constant = np.all(line_norms == line_norms[:, :1], axis=1) & (line_norms[:, 0] != 0)
        if np.any(constant):
            a = int(points[np.argmax(constant)])
            return a, int(v), int(norms[a])
    return None


def _cache_key(ambient: Ambient) -> str:
    return f"{ambient.field.spec}|d={ambient.d}"


def _load_cached_line(cache_path: Optional[str], ambient: Ambient) -> Optional[tuple[int, int, int]]:
    if not cache_path or not os.path.exists(cache_path):
        return None
    with open(cache_path, "r") as fh:
        entry = json.load(fh).get(_cache_key(ambient))
    if entry is None:
        return None
    return int(entry["base"]), int(entry["direction"]), int(entry["radius"])


def _store_cached_line(cache_path: Optional[str], ambient: Ambient, line: tuple[int, int, int]) -> None:
    if not cache_path:
        return
    cache = {}
    if os.path.exists(cache_path):
        with open(cache_path, "r") as fh:
            cache = json.load(fh)
    base, direction, radius = line
    cache[_cache_key(ambient)] = {"base": base, "direction": direction, "radius": radius}
    with open(cache_path, "w") as fh:
        json.dump(cache, fh, sort_keys=True, indent=2)
        fh.write("\n")


def annihilator_of_plane(ambient: Ambient, cache_path: Optional[str] = None) -> AnnihilatorConstruction:
    """
    Searches every (point, direction) pair for an affine line E' = {a + c v} lying on a
    sphere S_t with t != 0, then returns E = {x : x.(y - y') = 0 for all y, y' in E'},
    the annihilator of the direction of E'. E has q^(d-1) points and its spectrum has
    modulus q^-1 on span(v) = E' - a and vanishes elsewhere.
    """
    f = ambient.field
    if f.p == 2:
        raise SalemValidationException("Annihilator construction needs q odd")
    if ambient.d < 3 or ambient.d % 2 == 0:
        raise SalemValidationException(f"Annihilator construction needs odd d >= 3, got d={ambient.d}")
    if not minus_one_is_square(ambient):
        raise SalemValidationException(f"-1 is not a square in F_{f.q}")
    line = _load_cached_line(cache_path, ambient)
    if line is None:
        builder_logger.info(f"Searching for a line on a non-zero sphere in {ambient.spec}")
        line = _find_line(ambient)
        if line is None:
            raise SalemIllegalStateException(f"No line lies on a non-zero sphere of {ambient.spec}")
        _store_cached_line(cache_path, ambient, line)
    base, direction, radius = line
    steps = np.array([int(ambient.scale(c, direction)) for c in range(ambient.q)], dtype=np.int64)
    plane = PointSet.from_indices(ambient, ambient.add(base, steps), name="annihilator_line")
    plane.metadata.update({"base": base, "direction": direction, "radius": radius})
    orthogonal = ambient.dot(ambient.all_indices(), direction) == 0
    annihilator = PointSet.from_mask(ambient, orthogonal, name="annihilator")
    annihilator.metadata.update({"direction": direction, "radius": radius})
    return AnnihilatorConstruction(plane.freeze(), annihilator.freeze(), radius)
