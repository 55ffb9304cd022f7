import math
from typing import Optional

import numpy as np

from salem_lp.checks.salem_check import CheckContext, SalemCheck, Verdict
from salem_lp.constants import claims
from salem_lp.constructions import (
    annihilator_modulus,
    annihilator_of_plane,
    closed_form_table,
    diagonal_modulus,
    level_set_uniformity,
    max_deviation,
    subspace_complement_modulus,
)
from salem_lp.lattice import ambient_make
from salem_lp.spectrum import (
    bigsets_exponents,
    format_exponent,
    lp_norm,
    plancherel_residual,
    product_exponent,
    salem_exponent,
)

EXACT_TOLERANCE = 1e-9


class PlancherelCheck(SalemCheck):
    def __init__(self) -> None:
        super().__init__("plancherel", claims.CLAIM_PLANCHEREL)

    def verify(self, ctx: CheckContext) -> list[Verdict]:
        E, table = ctx.point_set, ctx.table
        total = float(ctx.ambient.size)
        density = E.cardinality / total
        residual = plancherel_residual(E, table)
        origin_error = abs(table.origin - density)
        l2 = lp_norm(table, 2) ** 2
        expected_l2 = density * (1.0 - density) / total
        l2_error = abs(l2 - expected_l2) / expected_l2 if expected_l2 > 0 else abs(l2)
        return [
            self.verdict(residual < EXACT_TOLERANCE, "residual", residual=residual),
            self.verdict(origin_error < 1e-12, "origin", origin_error=origin_error),
            self.verdict(l2_error < EXACT_TOLERANCE, "l2", l2=l2, expected=expected_l2, relative_error=l2_error),
        ]


class HolderCheck(SalemCheck):
    def __init__(self) -> None:
        super().__init__("holder", claims.CLAIM_HOLDER)

    def verify(self, ctx: CheckContext) -> list[Verdict]:
        n = ctx.point_set.cardinality
        total = float(ctx.ambient.size)
        verdicts = []
        for p in ctx.p_list:
            if p < 2:
                continue
            bound = n / total if math.isinf(p) else n ** (1.0 - 1.0 / p) / total
            value = lp_norm(ctx.table, p)
            verdicts.append(self.verdict(value <= bound * (1.0 + 1e-12), format_exponent(p),
                                         p=p, lp_norm=value, bound=bound))
        return verdicts or [self.skip("no exponent p >= 2 requested")]


class ClosedFormCheck(SalemCheck):
    KINDS = ("diagonal", "complement", "annihilator")

    def __init__(self) -> None:
        super().__init__("closed_form", claims.CLAIM_CLOSED_FORM)

    def applies(self, ctx: CheckContext) -> Optional[str]:
        if ctx.recipe is None or ctx.recipe.name not in self.KINDS:
            return f"closed forms are known for {', '.join(self.KINDS)} only"
        return None

    def verify(self, ctx: CheckContext) -> list[Verdict]:
        ambient, recipe = ctx.ambient, ctx.recipe
        verdicts = []
        match(recipe.name):
            case "diagonal":
                modulus = diagonal_modulus(ambient, int(recipe.params["n"]))
            case "complement":
                modulus = subspace_complement_modulus(ambient, int(recipe.params["k"]))
            case _:
                construction = annihilator_of_plane(ambient, ctx.session.annihilator_cache)
                modulus = annihilator_modulus(construction)
                on_sphere = ambient.norm_table[construction.plane.indices()] == construction.radius
                verdicts.append(self.verdict(bool(np.all(on_sphere)), "line_on_sphere",
                                             radius=construction.radius,
                                             line_size=construction.plane.cardinality))
        deviation = max_deviation(ctx.table, modulus)
        predicted = closed_form_table(ambient, modulus, ctx.point_set.cardinality)
        exponents = {format_exponent(p): salem_exponent(ctx.point_set, p, predicted) for p in ctx.p_list}
        verdicts.append(self.verdict(deviation < EXACT_TOLERANCE, "modulus", max_deviation=deviation,
                                     closed_form_exponents=exponents))
        return verdicts


class FactorizationCheck(SalemCheck):
    def __init__(self) -> None:
        super().__init__("factorization", claims.CLAIM_FACTORIZATION)

    def applies(self, ctx: CheckContext) -> Optional[str]:
        if ctx.recipe is None or ctx.recipe.name != "product":
            return "only direct sums factorize"
        return None

    def verify(self, ctx: CheckContext) -> list[Verdict]:
        ambient, params = ctx.ambient, ctx.recipe.params
        k = int(params["k"])
        left_ambient = ambient_make(ambient.field, k, ctx.session.max_index)
        right_ambient = ambient_make(ambient.field, ambient.d - k, ctx.session.max_index)
        E, F = params["left"].build(left_ambient), params["right"].build(right_ambient)
        left, right = ctx.session.transform(E), ctx.session.transform(F)
        # the first k coordinates are the low digits of a point index
        expected = np.outer(right.values, left.values).ravel()
        residual = float(np.max(np.abs(ctx.table.values - expected)))
        verdicts = [self.verdict(residual < EXACT_TOLERANCE, "residual", residual=residual)]
        if E.cardinality >= 2 and F.cardinality >= 2:
            for p in ctx.p_list:
                s, t = salem_exponent(E, p, left), salem_exponent(F, p, right)
                if not (math.isfinite(s) and math.isfinite(t)):
                    continue
                predicted = product_exponent(s, t, E.cardinality, F.cardinality, k, ambient.d, ambient.q, p)
                reference = ctx.point_set.cardinality ** (1.0 - predicted) / ambient.size
                ratio = lp_norm(ctx.table, p) / reference
                # three cross terms of the factorized sum, one per branch of the minimum
                constant = 1.0 if math.isinf(p) else 3.0 ** (1.0 / p)
                verdicts.append(self.verdict(ratio <= constant * (1.0 + 1e-12), format_exponent(p),
                                             s_left=s, s_right=t, predicted=predicted, ratio=ratio,
                                             s_emp=salem_exponent(ctx.point_set, p, ctx.table)))
        return verdicts


class BigSetsCheck(SalemCheck):
    def __init__(self) -> None:
        super().__init__("bigsets", claims.CLAIM_BIGSETS)

    def applies(self, ctx: CheckContext) -> Optional[str]:
        n, total = ctx.point_set.cardinality, ctx.ambient.size
        if n == total or 2 * n < total:
            return "needs a set with a non-empty complement smaller than the set"
        return None

    def verify(self, ctx: CheckContext) -> list[Verdict]:
        E, ambient = ctx.point_set, ctx.ambient
        t, t_prime = bigsets_exponents(E.cardinality, ambient.size)
        s_inf = salem_exponent(E, math.inf, ctx.table)
        peak = ambient.size * lp_norm(ctx.table, math.inf)
        ratio = peak / E.cardinality ** (1.0 - t_prime)
        return [
            self.verdict(s_inf >= t - EXACT_TOLERANCE, "upper", t=t, s_inf=s_inf),
            self.verdict(ratio >= ctx.band[0], "lower", t_prime=t_prime, s_inf=s_inf, ratio=ratio),
        ]


class LevelSetCheck(SalemCheck):
    def __init__(self) -> None:
        super().__init__("level_sets", claims.CLAIM_LEVEL_SETS)

    def verify(self, ctx: CheckContext) -> list[Verdict]:
        E, ambient = ctx.point_set, ctx.ambient
        report = level_set_uniformity(E)
        verdicts = []
        for p in ctx.p_list:
            s = report.predicted(p)
            ratio = lp_norm(ctx.table, p) / (E.cardinality ** (1.0 - s) / ambient.size)
            verdicts.append(self.verdict(ratio <= ctx.band[1], format_exponent(p), alpha=report.alpha,
                                         predicted=s, ratio=ratio,
                                         max_normalized_sup=report.max_normalized_sup))
        return verdicts
