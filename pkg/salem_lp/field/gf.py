import itertools
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Union

import numpy as np

from salem_lp.common.salem_logger import builder_logger
from salem_lp.models.exception import (
    SalemBudgetException,
    SalemIllegalStateException,
    SalemValidationException,
)

MAX_FIELD_BITS = 20
MUL_TABLE_LIMIT = 256

field_spec_regex = r'^\s*(\d+)(?:\^(\d+))?(?:/([\d,\s]+))?\s*$'


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for i in range(2, int(math.isqrt(n)) + 1):
        if n % i == 0:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def prime_power(q: int) -> tuple[int, int]:
    factors = factorize(q) if q > 1 else {}
    if len(factors) != 1:
        raise SalemValidationException(f"{q} is not a prime power")
    (p, m), = factors.items()
    return p, m


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    # b is monic
    r = [c % p for c in a]
    db = len(b) - 1
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if c:
            for j in range(db + 1):
                r[k - db + j] = (r[k - db + j] - c * b[j]) % p
    return r[:db]


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Exhaustive trial division by every monic polynomial of degree <= m/2."""
    m = len(modulus) - 1
    if m <= 1:
        return True
    if modulus[0] % p == 0:
        return False
    for deg in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not any(_poly_mod(modulus, list(low) + [1], p)):
                return False
    return True


def canonical_modulus(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m, read from the constant term up."""
    if m == 1:
        return ()
    for low in itertools.product(range(p), repeat=m):
        candidate = tuple(low) + (1,)
        if is_irreducible(candidate, p):
            return candidate
    raise SalemIllegalStateException(f"No irreducible polynomial of degree {m} over Z_{p}")


class FieldParams:
    """
    GF(p^m) in the polynomial basis 1, t, ..., t^(m-1).

    Elements are canonical integer indices idx = sum(coeffs[i] * p^i). Every
    vectorized operation accepts numpy arrays of indices of any shape.
    Tables are read-only once the field is built.
    """

    def __init__(self, p: int, m: int, modulus: tuple[int, ...]) -> None:
        self.p = p
        self.m = m
        self.q = p ** m
        self.modulus = modulus
        self.powers = p ** np.arange(m, dtype=np.int64)
        self.digits = self.to_digits(np.arange(self.q, dtype=np.int64))
        self._mul_table = None
        self._inverse_table = None
        if m > 1 and self.q <= MUL_TABLE_LIMIT:
            ar = np.arange(self.q, dtype=np.int64)
            self._mul_table = self._poly_mul(ar[:, None], ar[None, :])
        self.trace_basis = self._trace_basis()
        self.trace_table = (self.digits @ self.trace_basis) % p
        self.chi_table = np.exp(2j * np.pi * self.trace_table / p)
        ar = np.arange(self.q, dtype=np.int64)
        self.squares = self.mul(ar, ar)
        for table in (self.digits, self.trace_table, self.chi_table, self.squares):
            table.setflags(write=False)
        if self._mul_table is not None:
            self._mul_table.setflags(write=False)

    # -- representation ---------------------------------------------------

    @property
    def spec(self) -> str:
        if self.m == 1:
            return str(self.p)
        return f"{self.p}^{self.m}/" + ",".join(str(c) for c in self.modulus)

    def to_digits(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self.powers) % self.p

    def from_digits(self, digits) -> np.ndarray:
        return np.asarray(digits, dtype=np.int64) @ self.powers

    def element(self, value: Union[int, Sequence[int], "FieldElement"]) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise SalemValidationException("Element belongs to a different field")
            return value
        if isinstance(value, (int, np.integer)):
            return FieldElement(self, int(value))
        coeffs = list(value)
        if len(coeffs) != self.m:
            raise SalemValidationException(f"Expected {self.m} coefficients, got {len(coeffs)}")
        return FieldElement(self, int(self.from_digits([c % self.p for c in coeffs])))

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, i) for i in range(self.q)]

    # -- vectorized arithmetic -------------------------------------------

    def add(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        result = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for w in self.powers:
            result += (((a // w) + (b // w)) % self.p) * w
        return result

    def neg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.m == 1:
            return (-a) % self.p
        if self.p == 2:
            return a.copy()
        result = np.zeros(a.shape, dtype=np.int64)
        for w in self.powers:
            result += ((-(a // w)) % self.p) * w
        return result

    def sub(self, a, b) -> np.ndarray:
        return self.add(a, self.neg(b))

    def mul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a * b) % self.p
        if self._mul_table is not None:
            return self._mul_table[a, b]
        return self._poly_mul(a, b)

    def _poly_mul(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        m, p = self.m, self.p
        da = self.to_digits(a)
        db = self.to_digits(b)
        prod = np.zeros(a.shape + (2 * m - 1,), dtype=np.int64)
        for i in range(m):
            prod[..., i:i + m] += da[..., i:i + 1] * db
        prod %= p
        low = np.asarray(self.modulus[:m], dtype=np.int64)
        # t^m = -(c_0 + c_1 t + ... + c_{m-1} t^{m-1})
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[..., k:k + 1]
            prod[..., k - m:k] = (prod[..., k - m:k] - c * low) % p
        return self.from_digits(prod[..., :m])

    def pow(self, a, n: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if n < 0:
            a = self.inv(a)
            n = -n
        result = np.ones(a.shape, dtype=np.int64)
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    @property
    def inverse_table(self) -> np.ndarray:
        if self._inverse_table is None:
            table = self.pow(np.arange(self.q, dtype=np.int64), self.q - 2)
            table.setflags(write=False)
            self._inverse_table = table
        return self._inverse_table

    def inv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise SalemIllegalStateException("Inverse of 0 is undefined")
        return self.inverse_table[a]

    # -- trace and characters ---------------------------------------------

    def _trace_basis(self) -> np.ndarray:
        if self.m == 1:
            return np.ones(1, dtype=np.int64)
        t = np.int64(self.p)
        basis = np.zeros(self.m, dtype=np.int64)
        for i in range(self.m):
            x = self.pow(t, i)
            total = np.int64(0)
            for _ in range(self.m):
                total = self.add(total, x)
                x = self.pow(x, self.p)
            if int(total) >= self.p:
                raise SalemIllegalStateException(f"Trace of t^{i} left the prime subfield")
            basis[i] = int(total)
        return basis

    def trace(self, a) -> np.ndarray:
        return self.trace_table[np.asarray(a, dtype=np.int64)]

    def trace_form(self) -> np.ndarray:
        """B[i, j] = Tr(t^(i+j)), the matrix of the trace pairing in the polynomial basis."""
        if self.m == 1:
            return np.ones((1, 1), dtype=np.int64)
        t_powers = np.array([int(self.pow(np.int64(self.p), k)) for k in range(2 * self.m - 1)], dtype=np.int64)
        exps = np.add.outer(np.arange(self.m), np.arange(self.m))
        return self.trace_table[t_powers[exps]]

    def chi(self, a, twist: int = 1) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if twist != 1:
            if twist == 0:
                raise SalemValidationException("Character twist must be non-zero")
            a = self.mul(twist, a)
        return self.chi_table[a]

    # -- squares and the multiplicative group ---------------------------

    def sqrt_opt(self, a: int) -> tuple[int, ...]:
        return tuple(int(x) for x in np.flatnonzero(self.squares == int(a)))

    def is_square(self, a: int) -> bool:
        return bool(np.any(self.squares == int(a)))

    def order(self, a: int) -> int:
        if a == 0:
            raise SalemValidationException("0 has no multiplicative order")
        n = self.q - 1
        order = n
        for r in factorize(n):
            while order % r == 0 and int(self.pow(a, order // r)) == 1:
                order //= r
        return order

    def primitive_element(self) -> int:
        if self.q == 2:
            return 1
        n = self.q - 1
        candidates = np.arange(1, self.q, dtype=np.int64)
        ok = np.ones(candidates.shape, dtype=bool)
        for r in factorize(n):
            ok &= self.pow(candidates, n // r) != 1
        return int(candidates[np.argmax(ok)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldParams):
            return NotImplemented
        return (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def __repr__(self) -> str:
        return f"FieldParams({self.spec})"


@dataclass(frozen=True)
class FieldElement:
    field: FieldParams
    idx: int

    def __post_init__(self):
        if not 0 <= self.idx < self.field.q:
            raise SalemValidationException(f"Index {self.idx} out of range for GF({self.field.q})")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.field.digits[self.idx])

    def _coerce(self, other) -> "FieldElement":
        return self.field.element(other)

    def __add__(self, other):
        return FieldElement(self.field, int(self.field.add(self.idx, self._coerce(other).idx)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, int(self.field.sub(self.idx, self._coerce(other).idx)))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        return FieldElement(self.field, int(self.field.mul(self.idx, self._coerce(other).idx)))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, int(self.field.neg(self.idx)))

    def __pow__(self, n: int):
        return FieldElement(self.field, int(self.field.pow(self.idx, n)))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, int(self.field.inv(self.idx)))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def trace(self) -> int:
        return int(self.field.trace_table[self.idx])

    def chi(self, twist: int = 1) -> complex:
        return complex(self.field.chi(self.idx, twist))

    def sqrt(self) -> tuple["FieldElement", ...]:
        return tuple(FieldElement(self.field, r) for r in self.field.sqrt_opt(self.idx))

    def __int__(self) -> int:
        return self.idx

    def __repr__(self) -> str:
        return f"FieldElement({self.idx} in GF({self.field.q}))"


@lru_cache(maxsize=None)
def _build_field(p: int, m: int, modulus: tuple[int, ...]) -> FieldParams:
    builder_logger.debug(f"Building GF({p}^{m}) with modulus {modulus}")
    return FieldParams(p, m, modulus)


def field_make(p: int, m: int = 1, modulus: Optional[Sequence[int]] = None) -> FieldParams:
    if not is_prime(p):
        raise SalemValidationException(f"Characteristic {p} is not prime")
    if m < 1:
        raise SalemValidationException(f"Extension degree must be positive, got {m}")
    if m * math.log2(p) > MAX_FIELD_BITS:
        raise SalemBudgetException(f"GF({p}^{m}) exceeds the supported size 2^{MAX_FIELD_BITS}")
    if modulus is None:
        chosen = canonical_modulus(p, m)
    elif m == 1:
        if len(modulus) not in (0, 2) or (len(modulus) == 2 and modulus[1] % p != 1):
            raise SalemValidationException("Prime fields take an empty modulus")
        chosen = ()
    else:
        chosen = tuple(int(c) % p for c in modulus)
        if len(chosen) != m + 1 or chosen[-1] != 1:
            raise SalemValidationException(f"Modulus must be monic of degree {m}: {list(modulus)}")
        if not is_irreducible(chosen, p):
            raise SalemValidationException(f"Modulus {list(chosen)} is reducible over Z_{p}")
    return _build_field(p, m, chosen)


def parse_field_spec(spec: str) -> FieldParams:
    """Accepts "p", a prime power "q", "p^m" or the full "p^m/c0,...,cm"."""
    match = re.match(field_spec_regex, str(spec))
    if match is None:
        raise SalemValidationException(f"Malformed field spec: {spec!r}")
    base, exponent, coeffs = match.groups()
    if exponent is None:
        p, m = prime_power(int(base))
    else:
        p, m = int(base), int(exponent)
    modulus = None
    if coeffs is not None:
        modulus = [int(c) for c in coeffs.split(",") if c.strip()]
    return field_make(p, m, modulus)


def split_field_specs(text: str) -> list[str]:
    """
    Splits a list of field specs separated by commas, semicolons or whitespace.
    A "p^m/c0,...,cm" spec keeps its m + 1 modulus coefficients, so "5,3^2/2,2,1,7"
    gives ["5", "3^2/2,2,1", "7"].
    """
    tokens = [t for t in re.split(r'[,;\s]+', str(text).strip()) if t]
    specs, i = [], 0
    while i < len(tokens):
        token = tokens[i]
        if "/" not in token:
            specs.append(token)
            i += 1
            continue
        head, first = token.split("/", 1)
        try:
            m = int(head.split("^")[1]) if "^" in head else prime_power(int(head))[1]
        except ValueError:
            raise SalemValidationException(f"Malformed field spec: {token!r}")
        coeffs = [first] + tokens[i + 1:i + 1 + m]
        if len(coeffs) != m + 1 or not first:
            raise SalemValidationException(f"Field spec {head} needs {m + 1} modulus coefficients, got {coeffs}")
        specs.append(f"{head}/{','.join(coeffs)}")
        i += m + 1
    return specs
