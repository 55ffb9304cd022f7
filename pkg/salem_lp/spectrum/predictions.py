"""Closed-form exponent predictions used next to the measured profiles."""
import math

from salem_lp.models.exception import SalemValidationException


def concavity_lower_bound(s_inf: float, p: float) -> float:
    """alpha(p) >= 1/p + alpha(inf)(1 - 2/p)."""
    if math.isinf(p):
        return s_inf
    return 1.0 / p + s_inf * (1.0 - 2.0 / p)


def continuity_upper_bound(s_inf: float, p: float, beta: float, d: int) -> float:
    """alpha(p) <= alpha(inf) + d/(p beta) for #E ~ q^beta."""
    if math.isinf(p):
        return s_inf
    if beta <= 0:
        raise SalemValidationException("Size exponent beta must be positive")
    return s_inf + d / (p * beta)


def interpolated_exponent(p0: float, s0: float, p1: float, s1: float, p: float) -> float:
    if not 1 <= p0 < p1 < math.inf:
        raise SalemValidationException(f"Need 1 <= p0 < p1 < inf, got p0={p0}, p1={p1}")
    if not p0 <= p <= p1:
        raise SalemValidationException(f"p={p} lies outside [{p0}, {p1}]")
    return s0 * p0 * (p1 - p) / (p * (p1 - p0)) + s1 * p1 * (p - p0) / (p * (p1 - p0))


def _inverse_p(p: float) -> float:
    return 0.0 if math.isinf(p) else 1.0 / p


def product_exponent(s: float, t: float, size_e: int, size_f: int, k: int, d: int, q: int, p: float) -> float:
    """Exponent guaranteed for E (+) F when E in F_q^k is (p,s)-Salem and F in F_q^(d-k) is (p,t)-Salem."""
    log_e, log_f, log_q = math.log(size_e), math.log(size_f), math.log(q)
    total = log_e + log_f
    if total == 0:
        raise SalemValidationException("Direct sum of two singletons has no exponent")
    inv = _inverse_p(p)
    return min(
        s * log_e + t * log_f,
        k * inv * log_q + t * log_f,
        s * log_e + (d - k) * inv * log_q,
    ) / total


def product_reverse_exponent(s: float, size_e: int, size_f: int, k: int, d: int, q: int, p: float,
                             side: str = "left") -> float:
    """
    Exponent E (+) F cannot beat when one factor is not (p,s)-Salem.
    side="left" when E fails at s, side="right" when F fails at s.
    """
    log_e, log_f, log_q = math.log(size_e), math.log(size_f), math.log(q)
    inv = _inverse_p(p)
    if side == "left":
        return (s * log_e + (d - k) * inv * log_q) / (log_e + log_f)
    if side == "right":
        return (k * inv * log_q + s * log_f) / (log_e + log_f)
    raise SalemValidationException(f"Unknown side: {side}")


def subspace_exponent(s: float, size_e: int, k: int, q: int, p: float) -> float:
    """Exponent of E in F_q^k viewed inside F_q^d: s ^ (k/p) log q / log #E."""
    return min(s, k * _inverse_p(p) * math.log(q) / math.log(size_e))


def bigsets_exponents(size_e: int, total: int) -> tuple[float, float]:
    """
    (t, t') for a set with a small complement: |Ê| <= q^-d (#E)^(1-t) off the origin,
    and |Ê| >~ q^-d (#E)^(1-t') somewhere.
    """
    complement = total - size_e
    if size_e < 2:
        raise SalemValidationException("Need #E >= 2")
    if complement <= 0:
        return math.inf, math.inf
    log_c = math.log(complement)
    log_e = math.log(size_e)
    return 1.0 - log_c / log_e, 1.0 - log_c / (2.0 * log_e)


def uniform_level_exponent(alpha: float, p: float) -> float:
    """(alpha p + 2)/(2 p (alpha + 1)) for sets with uniformly Salem level sets of size ~ q^alpha."""
    if math.isinf(p):
        return alpha / (2.0 * (alpha + 1.0))
    return (alpha * p + 2.0) / (2.0 * p * (alpha + 1.0))
