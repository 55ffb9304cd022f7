import json
from typing import Iterable, Optional, Union

import numpy as np

from salem_lp.field.gf import parse_field_spec
from salem_lp.helpers.utils import json_safe
from salem_lp.lattice.ambient import DEFAULT_MAX_INDEX, Ambient, Point, ambient_make
from salem_lp.models.exception import SalemIllegalStateException, SalemValidationException


class PointSet:
    """
    Dense indicator of a subset E of F_q^d: one boolean per point index.

    Sets are mutable while a recipe builds them and are frozen afterwards;
    reads are safe from any number of threads once frozen.
    """

    def __init__(self, ambient: Ambient, bits: Optional[np.ndarray] = None, name: Optional[str] = None) -> None:
        self.ambient = ambient
        if bits is None:
            bits = np.zeros(ambient.size, dtype=bool)
        else:
            bits = np.array(bits, dtype=bool, copy=True)
            if bits.shape != (ambient.size,):
                raise SalemValidationException(f"Bit array must have length {ambient.size}")
        self.bits = bits
        self._cardinality = int(np.count_nonzero(bits))
        self.name = name
        self.metadata: dict = {}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def empty(ambient: Ambient, name: Optional[str] = None) -> "PointSet":
        return PointSet(ambient, name=name)

    @staticmethod
    def full(ambient: Ambient, name: Optional[str] = "full") -> "PointSet":
        return PointSet(ambient, np.ones(ambient.size, dtype=bool), name=name)

    @staticmethod
    def from_indices(ambient: Ambient, indices: Iterable[int], name: Optional[str] = None) -> "PointSet":
        idx = ambient.check_index(np.fromiter((int(i) for i in indices), dtype=np.int64))
        bits = np.zeros(ambient.size, dtype=bool)
        bits[idx] = True
        return PointSet(ambient, bits, name=name)

    @staticmethod
    def from_points(ambient: Ambient, coords, name: Optional[str] = None) -> "PointSet":
        coords = np.asarray(coords, dtype=np.int64).reshape(-1, ambient.d)
        return PointSet.from_indices(ambient, ambient.encode(coords), name=name)

    @staticmethod
    def from_mask(ambient: Ambient, mask: np.ndarray, name: Optional[str] = None) -> "PointSet":
        return PointSet(ambient, mask, name=name)

    # -- queries -----------------------------------------------------------

    @property
    def cardinality(self) -> int:
        return self._cardinality

    def __len__(self) -> int:
        return self._cardinality

    def __contains__(self, point: Union[Point, int]) -> bool:
        idx = point.idx if isinstance(point, Point) else int(point)
        return bool(self.bits[self.ambient.check_index(idx)])

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.bits).astype(np.int64)

    def coords(self) -> np.ndarray:
        return self.ambient.decode(self.indices())

    def check_cardinality(self) -> int:
        count = int(np.count_nonzero(self.bits))
        if count != self._cardinality:
            raise SalemIllegalStateException(f"Cardinality cache {self._cardinality} disagrees with population {count}")
        return count

    @property
    def frozen(self) -> bool:
        return not self.bits.flags.writeable

    def freeze(self) -> "PointSet":
        self.bits.setflags(write=False)
        return self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.ambient == other.ambient and bool(np.array_equal(self.bits, other.bits))

    def __repr__(self) -> str:
        return f"PointSet({self.name or 'unnamed'}, {self.ambient.spec}, #E={self._cardinality})"

    # -- mutation ----------------------------------------------------------

    def insert(self, point: Union[Point, int]) -> "PointSet":
        if self.frozen:
            raise SalemIllegalStateException("Cannot insert into a frozen point set")
        idx = int(self.ambient.check_index(point.idx if isinstance(point, Point) else int(point)))
        if not self.bits[idx]:
            self.bits[idx] = True
            self._cardinality += 1
        return self

    # -- algebra (always returns a new set) --------------------------------

    def _same_ambient(self, other: "PointSet") -> None:
        if other.ambient != self.ambient:
            raise SalemValidationException("Point sets live in different ambients")

    def union(self, other: "PointSet") -> "PointSet":
        self._same_ambient(other)
        return PointSet(self.ambient, self.bits | other.bits)

    def intersection(self, other: "PointSet") -> "PointSet":
        self._same_ambient(other)
        return PointSet(self.ambient, self.bits & other.bits)

    def complement(self) -> "PointSet":
        name = f"complement({self.name})" if self.name else None
        return PointSet(self.ambient, ~self.bits, name=name)

    def translate(self, v: Union[Point, int]) -> "PointSet":
        shift = v.idx if isinstance(v, Point) else int(self.ambient.check_index(v))
        return PointSet.from_indices(self.ambient, self.ambient.add(self.indices(), shift), name=self.name)

    def negate(self) -> "PointSet":
        return PointSet.from_indices(self.ambient, self.ambient.neg(self.indices()))


def read_set_file(path: str, max_index: int = DEFAULT_MAX_INDEX) -> PointSet:
    with open(path, "r") as fh:
        payload = json.load(fh)
    return set_from_payload(payload, max_index)


def set_from_payload(payload: dict, max_index: int = DEFAULT_MAX_INDEX) -> PointSet:
    for key in ("field", "d", "indices"):
        if key not in payload:
            raise SalemValidationException(f"Set file is missing '{key}'")
    ambient = ambient_make(parse_field_spec(payload["field"]), int(payload["d"]), max_index)
    indices = payload["indices"]
    if list(indices) != sorted(set(indices)):
        raise SalemValidationException("Set file indices must be sorted and distinct")
    point_set = PointSet.from_indices(ambient, indices, name=payload.get("name"))
    point_set.metadata = dict(payload.get("metadata", {}))
    return point_set.freeze()


def set_to_payload(point_set: PointSet) -> dict:
    payload = {
        "field": point_set.ambient.field.spec,
        "d": point_set.ambient.d,
        "indices": [int(i) for i in point_set.indices()],
    }
    if point_set.name:
        payload["name"] = point_set.name
    if point_set.metadata:
        payload["metadata"] = point_set.metadata
    return payload


def write_set_file(point_set: PointSet, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(json_safe(set_to_payload(point_set)), fh, sort_keys=True)
        fh.write("\n")
