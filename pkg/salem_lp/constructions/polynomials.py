import re
from typing import Optional, Sequence, Union

import numpy as np

from salem_lp.field.gf import FieldParams
from salem_lp.models.exception import SalemValidationException

token_regex = r'\s*(?:(\d+)|(k)|(.))'

Polynomial = Union[str, Sequence[int]]


def _trim(coeffs: list[int]) -> list[int]:
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _add(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _mul(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


class _PolynomialParser:
    """
    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (['*'] factor)*
    factor := base ['^' integer]
    base   := integer | 'k' | '(' expr ')'
    """

    def __init__(self, text: str, p: int):
        self.text = text
        self.p = p
        self.tokens = []
        for number, var, other in re.findall(token_regex, text):
            if other and other.isspace():
                continue
            self.tokens.append(number or var or other)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: Optional[str] = None) -> str:
        token = self.peek()
        if token is None or (expected is not None and token != expected):
            raise SalemValidationException(f"Malformed polynomial: {self.text!r}")
        self.pos += 1
        return token

    def parse(self) -> list[int]:
        if not self.tokens:
            raise SalemValidationException("Empty polynomial")
        result = self.expr()
        if self.peek() is not None:
            raise SalemValidationException(f"Malformed polynomial: {self.text!r}")
        return result

    def expr(self) -> list[int]:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        result = _mul([sign % self.p], self.term(), self.p)
        while self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
            result = _add(result, _mul([sign % self.p], self.term(), self.p), self.p)
        return result

    def term(self) -> list[int]:
        result = self.factor()
        while self.peek() is not None and (self.peek() in ("*", "(", "k") or self.peek().isdigit()):
            if self.peek() == "*":
                self.take()
            result = _mul(result, self.factor(), self.p)
        return result

    def factor(self) -> list[int]:
        base = self.base()
        if self.peek() == "^":
            self.take()
            exponent = self.take()
            if not exponent.isdigit():
                raise SalemValidationException(f"Exponent must be a non-negative integer in {self.text!r}")
            result = [1]
            for _ in range(int(exponent)):
                result = _mul(result, base, self.p)
            return result
        return base

    def base(self) -> list[int]:
        token = self.take()
        if token.isdigit():
            return [int(token) % self.p]
        if token == "k":
            return [0, 1]
        if token == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise SalemValidationException(f"Unexpected {token!r} in polynomial {self.text!r}")


def parse_polynomial(text: str, field: FieldParams) -> list[int]:
    """
    Parses an expression in k such as "k^2", "3k^2+2k+1", "2*k^3 - k" or "(k+1)^2" into a
    coefficient list (constant term first). Integer coefficients live in the prime field.
    """
    return _PolynomialParser(text, field.p).parse()


def as_coefficients(poly: Polynomial, field: FieldParams) -> list[int]:
    if isinstance(poly, str):
        return parse_polynomial(poly, field)
    coeffs = [int(c) for c in poly]
    if not coeffs:
        raise SalemValidationException("Empty coefficient list")
    if any(c < 0 or c >= field.q for c in coeffs):
        raise SalemValidationException(f"Coefficients must be field indices in [0, {field.q})")
    return coeffs


def degree(coeffs: Sequence[int]) -> int:
    nonzero = [i for i, c in enumerate(coeffs) if c != 0]
    return nonzero[-1] if nonzero else 0


def evaluate(field: FieldParams, coeffs: Sequence[int], xs) -> np.ndarray:
    """Horner evaluation at every entry of xs."""
    xs = np.asarray(xs, dtype=np.int64)
    out = np.full(xs.shape, int(coeffs[-1]), dtype=np.int64)
    for c in reversed(coeffs[:-1]):
        out = field.add(field.mul(out, xs), int(c))
    return out


def rank(field: FieldParams, rows: Sequence[Sequence[int]]) -> int:
    """Rank over F_q by Gaussian elimination."""
    matrix = [list(int(c) for c in row) for row in rows]
    if not matrix:
        return 0
    width = max(len(row) for row in matrix)
    for row in matrix:
        row.extend([0] * (width - len(row)))
    r = 0
    for col in range(width):
        pivot = next((i for i in range(r, len(matrix)) if matrix[i][col] != 0), None)
        if pivot is None:
            continue
        matrix[r], matrix[pivot] = matrix[pivot], matrix[r]
        inv = int(field.inv(matrix[r][col]))
        matrix[r] = [int(field.mul(inv, c)) for c in matrix[r]]
        for i in range(len(matrix)):
            if i != r and matrix[i][col] != 0:
                factor = matrix[i][col]
                matrix[i] = [int(field.sub(a, field.mul(factor, b))) for a, b in zip(matrix[i], matrix[r])]
        r += 1
        if r == len(matrix):
            break
    return r
