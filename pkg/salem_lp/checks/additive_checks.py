from typing import Optional

from salem_lp.checks.salem_check import CheckContext, SalemCheck, Verdict
from salem_lp.constants import claims
from salem_lp.constructions import is_sidon
from salem_lp.geometry import (
    generates,
    sidon_doubling_report,
    sidon_sum_check,
    sumset,
    sumset_bound_check,
    sumset_good_report,
)
from salem_lp.spectrum import format_exponent

SIDON_SLACK = 0.1
SIDON_EXACT_P = (2.0, 4.0)
GENERATION_K_MAX = 3


class SidonCheck(SalemCheck):
    def __init__(self) -> None:
        super().__init__("sidon", claims.CLAIM_SIDON)

    @staticmethod
    def expects_sidon(ctx: CheckContext) -> bool:
        return (ctx.recipe is not None and ctx.recipe.name == "paraboloid"
                and ctx.ambient.d == 2 and ctx.ambient.q % 2 == 1)

    def verify(self, ctx: CheckContext) -> list[Verdict]:
        E = ctx.point_set
        result = is_sidon(E)
        if not result:
            if self.expects_sidon(ctx):
                return [self.verdict(False, "membership", witness=list(result.witness))]
            return [self.skip(f"not a Sidon set, witness {result.witness}")]
        n = E.cardinality
        # in characteristic 2 every double x + x lands on the origin
        expected = n * (n + 1) // 2 if ctx.ambient.q % 2 else n * (n - 1) // 2 + 1
        size = sumset(E, E).sumset.cardinality
        verdicts = [self.verdict(size == expected, "sumset_size", sumset_size=size, expected=expected)]
        for p in SIDON_EXACT_P:
            check = sidon_sum_check(E, p)
            verdicts.append(self.verdict(check.holds, f"inequality_{format_exponent(p)}", lower=check.lower,
                                         sumset_norm=check.sumset_norm, upper=check.upper))
        for p in ctx.finite_p:
            if p < 4:
                continue
            check = sidon_sum_check(E, p)
            doubling = sidon_doubling_report(E, p)
            verdicts.append(self.verdict(check.s_emp >= check.s_predicted - SIDON_SLACK, format_exponent(p),
                                         s_emp=check.s_emp, predicted=check.s_predicted,
                                         s_sumset=doubling.s_sumset, s_set_2p=doubling.s_set))
        return verdicts


class SumsetCheck(SalemCheck):
    def __init__(self) -> None:
        super().__init__("sumset", claims.CLAIM_SUMSET)

    def applies(self, ctx: CheckContext) -> Optional[str]:
        if ctx.point_set.cardinality < 2:
            return "needs #E >= 2"
        return None

    def verify(self, ctx: CheckContext) -> list[Verdict]:
        E = ctx.point_set
        verdicts = []
        for k in (2, 3):
            bound = sumset_bound_check([E] * k, [float(k)] * k)
            verdicts.append(self.verdict(bound.holds, f"chain_{k}", lhs=bound.lhs, rhs=bound.rhs,
                                         sumset_size=bound.sumset_size))
        report = sumset_good_report(E)
        generation = generates(E, GENERATION_K_MAX)
        verdicts.append(self.verdict(report.pigeonhole_holds, "directions",
                                     s4=report.s4,
                                     sum_ratio=report.sum_ratio,
                                     difference_ratio=report.difference_ratio,
                                     direction_ratio=report.direction_ratio,
                                     generated_at=generation))
        return verdicts
