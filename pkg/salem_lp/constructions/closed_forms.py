"""Exact spectra of the constructions whose transforms are indicator functions of subspaces."""
import numpy as np

from salem_lp.constructions.sets import AnnihilatorConstruction, coordinate
from salem_lp.lattice import Ambient
from salem_lp.models.exception import SalemValidationException
from salem_lp.spectrum import FourierTable


def _block_sums_vanish(ambient: Ambient, n: int) -> np.ndarray:
    f = ambient.field
    mask = np.ones(ambient.shape, dtype=bool)
    for j in range(n):
        total = np.zeros((1,) * ambient.d, dtype=np.int64)
        for i in range(j, ambient.d, n):
            total = f.add(total, coordinate(ambient, i))
        mask &= np.broadcast_to(total == 0, ambient.shape)
    return mask.ravel()


def diagonal_modulus(ambient: Ambient, n: int) -> np.ndarray:
    """|Ê| = q^(n-d) on {z : sum over i = j mod n of z_i vanishes for every j}, 0 elsewhere."""
    if n < 1 or ambient.d % n:
        raise SalemValidationException(f"Block length n={n} must divide d={ambient.d}")
    return np.where(_block_sums_vanish(ambient, n), float(ambient.q) ** (n - ambient.d), 0.0)


def subspace_complement_modulus(ambient: Ambient, k: int) -> np.ndarray:
    """|Ê| = q^(k-d) on the annihilator of F_q^k x {0} off the origin, 1 - q^(k-d) at the origin."""
    orthogonal = np.ones(ambient.shape, dtype=bool)
    for i in range(k):
        orthogonal &= np.broadcast_to(coordinate(ambient, i) == 0, ambient.shape)
    modulus = np.where(orthogonal.ravel(), float(ambient.q) ** (k - ambient.d), 0.0)
    modulus[0] = 1.0 - float(ambient.q) ** (k - ambient.d)
    return modulus


def annihilator_modulus(construction: AnnihilatorConstruction) -> np.ndarray:
    """|Ê| = q^-d #E on the line through the origin spanned by the direction of E'."""
    E = construction.annihilator
    ambient = E.ambient
    direction = int(E.metadata["direction"])
    span = np.array([int(ambient.scale(c, direction)) for c in range(ambient.q)], dtype=np.int64)
    modulus = np.zeros(ambient.size, dtype=np.float64)
    modulus[span] = E.cardinality / ambient.size
    return modulus


def closed_form_table(ambient: Ambient, modulus: np.ndarray, cardinality: int) -> FourierTable:
    """Wraps a predicted modulus so that norms and exponents can be read off it."""
    return FourierTable(ambient, np.asarray(modulus, dtype=np.complex128), cardinality, mode="closed")


def max_deviation(table: FourierTable, modulus: np.ndarray) -> float:
    return float(np.max(np.abs(table.modulus - modulus)))
