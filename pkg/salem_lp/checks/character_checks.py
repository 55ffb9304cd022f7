from typing import Optional

from salem_lp.charsums import (
    CurveMap,
    char_sum_grid,
    charsum_lp,
    kloosterman_offset_check,
    kloosterman_pointwise_check,
    make_grid,
    parseval_check,
    spectrum_link_check,
    weil_pointwise_check,
)
from salem_lp.checks.salem_check import CheckContext, SalemCheck, Verdict
from salem_lp.constants import claims
from salem_lp.models.exception import SalemValidationException

CURVE_RECIPES = ("curve", "veronese")
KLOOSTERMAN_RECIPES = ("kloosterman", "kloosterman_image")


def curve_map_for(ctx: CheckContext) -> CurveMap:
    """The parametrization behind a curve-type recipe."""
    ambient, recipe = ctx.ambient, ctx.recipe
    match(recipe.name):
        case "curve":
            return CurveMap.polynomial(ambient, recipe.params["f"])
        case "veronese":
            return CurveMap.polynomial(ambient, [[0] * i + [1] for i in range(1, ambient.d + 1)])
        case "kloosterman":
            return CurveMap.kloosterman(ambient)
        case "kloosterman_image":
            return CurveMap.kloosterman(ambient, extended=True)
    raise SalemValidationException(f"Recipe {recipe.name} has no curve parametrization")


class KloostermanCheck(SalemCheck):
    def __init__(self) -> None:
        super().__init__("kloosterman", claims.CLAIM_KLOOSTERMAN)

    def applies(self, ctx: CheckContext) -> Optional[str]:
        if ctx.ambient.q % 2 == 0:
            return "Kloosterman fiber analysis needs q odd"
        return None

    def verify(self, ctx: CheckContext) -> list[Verdict]:
        field_params = ctx.ambient.field
        pointwise = kloosterman_pointwise_check(field_params)
        offset = kloosterman_offset_check(field_params)
        moment = charsum_lp(make_grid("kloosterman", field_params), 4)
        return [
            self.verdict(pointwise.holds, "pointwise", checked=pointwise.checked,
                         violations=pointwise.violations, worst_ratio=pointwise.worst_ratio,
                         fiber_histogram=pointwise.fiber_histogram,
                         curve_fiber_histogram=pointwise.curve_fiber_histogram,
                         fiber_exceptions=pointwise.fiber_exceptions),
            self.verdict(offset.holds, "offset", kloosterman_l4=offset.kloosterman_l4,
                         extended_l4=offset.extended_l4),
            self.verdict(moment.holds, "l4", **moment.to_dict()),
        ]


class CharSumLinkCheck(SalemCheck):
    def __init__(self) -> None:
        super().__init__("charsum_link", claims.CLAIM_CHARSUM_LINK)

    def applies(self, ctx: CheckContext) -> Optional[str]:
        if ctx.recipe is None or ctx.recipe.name not in CURVE_RECIPES + KLOOSTERMAN_RECIPES:
            return "needs a curve recipe"
        return None

    def verify(self, ctx: CheckContext) -> list[Verdict]:
        f = curve_map_for(ctx)
        grid = char_sum_grid(f)
        parseval = parseval_check(f, grid)
        verdicts = [self.verdict(parseval.holds, "parseval", energy=parseval.energy,
                                 collisions=parseval.collisions)]
        link = spectrum_link_check(f, grid)
        if link.residual is None:
            verdicts.append(Verdict(f"{self.name}:identity", None, self.claim, {}, link.reason))
        else:
            verdicts.append(self.verdict(link.holds, "identity", residual=link.residual))
        return verdicts


class WeilCheck(SalemCheck):
    def __init__(self) -> None:
        super().__init__("weil", claims.CLAIM_WEIL)

    def applies(self, ctx: CheckContext) -> Optional[str]:
        if ctx.recipe is None or ctx.recipe.name not in CURVE_RECIPES:
            return "needs a polynomial curve recipe"
        return None

    def verify(self, ctx: CheckContext) -> list[Verdict]:
        f = curve_map_for(ctx)
        check = weil_pointwise_check(f)
        note = f"degrees {check.flagged_degrees} divisible by p were not tested" if check.flagged_degrees else ""
        verdicts = [self.verdict(check.holds, "pointwise", note=note, checked=check.checked,
                                 violations=check.violations, worst_ratio=check.worst_ratio)]
        if ctx.ambient.q % 2:
            moment = charsum_lp(make_grid("weil", ctx.ambient.field), 4)
            verdicts.append(self.verdict(moment.holds, "l4", **moment.to_dict()))
        return verdicts
