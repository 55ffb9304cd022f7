from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Union

import numpy as np

from salem_lp.field.gf import FieldElement, FieldParams
from salem_lp.models.exception import SalemBudgetException, SalemValidationException

DEFAULT_MAX_INDEX = 2 ** 24


@dataclass(frozen=True)
class Ambient:
    """
    The space F_q^d. A point x is stored as idx(x) = sum(idx(x_i) * q^i), coordinate 0
    least significant. Read as a base-p number this is also the concatenation of the
    coordinate digit vectors, so index arithmetic below works digit by digit.
    """
    field: FieldParams
    d: int

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def size(self) -> int:
        return self.field.q ** self.d

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.field.q,) * self.d

    @cached_property
    def weights(self) -> np.ndarray:
        return self.field.q ** np.arange(self.d, dtype=np.int64)

    @cached_property
    def _digit_weights(self) -> np.ndarray:
        return self.field.p ** np.arange(self.field.m * self.d, dtype=np.int64)

    def encode(self, coords) -> np.ndarray:
        coords = np.asarray(coords, dtype=np.int64)
        if coords.shape[-1] != self.d:
            raise SalemValidationException(f"Expected {self.d} coordinates, got {coords.shape[-1]}")
        if np.any((coords < 0) | (coords >= self.q)):
            raise SalemValidationException("Coordinate index out of range")
        return coords @ self.weights

    def decode(self, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        return (idx[..., None] // self.weights) % self.q

    def check_index(self, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        if np.any((idx < 0) | (idx >= self.size)):
            raise SalemValidationException(f"Point index out of range [0, {self.size})")
        return idx

    def all_indices(self) -> np.ndarray:
        return np.arange(self.size, dtype=np.int64)

    # -- group structure on indices ----------------------------------------

    def add(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        p = self.field.p
        if p == 2:
            return a ^ b
        if self.field.m == 1 and self.d == 1:
            return (a + b) % p
        result = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for w in self._digit_weights:
            result += (((a // w) + (b // w)) % p) * w
        return result

    def neg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        p = self.field.p
        if p == 2:
            return a.copy()
        result = np.zeros(a.shape, dtype=np.int64)
        for w in self._digit_weights:
            result += ((-(a // w)) % p) * w
        return result

    def sub(self, a, b) -> np.ndarray:
        return self.add(a, self.neg(b))

    def scale(self, c: int, a) -> np.ndarray:
        return self.encode(self.field.mul(c, self.decode(a)))

    def dot(self, a, b) -> np.ndarray:
        xa = self.decode(a)
        xb = self.decode(b)
        products = self.field.mul(xa, xb)
        total = products[..., 0]
        for i in range(1, self.d):
            total = self.field.add(total, products[..., i])
        return total

    @cached_property
    def norm_table(self) -> np.ndarray:
        """|x|^2 for every point index, built one coordinate at a time."""
        squares = np.asarray(self.field.squares, dtype=np.int64)
        table = squares
        for _ in range(1, self.d):
            table = self.field.add(squares[:, None], table[None, :]).ravel()
        table.setflags(write=False)
        return table

    def point(self, coords: Union[Sequence[int], int]) -> "Point":
        if isinstance(coords, (int, np.integer)):
            coords = tuple(int(c) for c in self.decode(int(coords)))
        coords = tuple(self.field.element(c).idx for c in coords)
        self.encode(coords)
        return Point(self, coords)

    def origin(self) -> "Point":
        return Point(self, (0,) * self.d)

    @property
    def spec(self) -> str:
        return f"{self.field.spec} d={self.d}"


def ambient_make(field: FieldParams, d: int, max_index: int = DEFAULT_MAX_INDEX) -> Ambient:
    if d < 1:
        raise SalemValidationException(f"Dimension must be positive, got {d}")
    if field.q ** d > max_index:
        raise SalemBudgetException(f"q^d = {field.q ** d} exceeds the index budget {max_index}")
    return Ambient(field, d)


@dataclass(frozen=True)
class Point:
    ambient: Ambient
    coords: tuple[int, ...]

    @property
    def idx(self) -> int:
        return int(self.ambient.encode(self.coords))

    def elements(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.ambient.field, c) for c in self.coords)

    def _same_ambient(self, other: "Point") -> None:
        if other.ambient != self.ambient:
            raise SalemValidationException("Points live in different ambients")

    def __add__(self, other: "Point") -> "Point":
        self._same_ambient(other)
        return self.ambient.point(int(self.ambient.add(self.idx, other.idx)))

    def __sub__(self, other: "Point") -> "Point":
        self._same_ambient(other)
        return self.ambient.point(int(self.ambient.sub(self.idx, other.idx)))

    def __neg__(self) -> "Point":
        return self.ambient.point(int(self.ambient.neg(self.idx)))

    def scale(self, c: Union[int, FieldElement]) -> "Point":
        c = int(self.ambient.field.element(c).idx)
        return self.ambient.point(int(self.ambient.scale(c, self.idx)))


def dot(x: Point, y: Point) -> FieldElement:
    x._same_ambient(y)
    return FieldElement(x.ambient.field, int(x.ambient.dot(x.idx, y.idx)))


def norm_sq(m: Point) -> FieldElement:
    return dot(m, m)
