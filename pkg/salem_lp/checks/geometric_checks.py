from typing import Optional

from salem_lp.checks.salem_check import CheckContext, SalemCheck, Verdict
from salem_lp.constants import claims
from salem_lp.geometry import distance_bound_report, simplex_census, spherical_energy

SIMPLEX_K_MAX = 2


class EnergyCheck(SalemCheck):
    def __init__(self) -> None:
        super().__init__("energy", claims.CLAIM_SPHERICAL)

    def verify(self, ctx: CheckContext) -> list[Verdict]:
        E = ctx.point_set
        energy = spherical_energy(E, ctx.table)
        expected = E.cardinality / ctx.ambient.size
        partition = energy.total + energy.origin_energy
        error = abs(partition - expected) / expected if expected else abs(partition)
        return [
            self.verdict(energy.lemma_holds, "lemma", simplex_statistic=energy.simplex_statistic,
                         bound=energy.lemma_bound),
            self.verdict(error < 1e-9, "partition", relative_error=error,
                         gensalem_max=energy.gensalem_max, gensalem_threshold=energy.gensalem_threshold()),
        ]


class DistanceCheck(SalemCheck):
    def __init__(self) -> None:
        super().__init__("distance", claims.CLAIM_DISTANCE)

    def applies(self, ctx: CheckContext) -> Optional[str]:
        if ctx.ambient.q % 2 == 0:
            return "distance bounds need q odd"
        if ctx.point_set.cardinality < 2:
            return "needs #E >= 2"
        return None

    def verify(self, ctx: CheckContext) -> list[Verdict]:
        report = distance_bound_report(ctx.point_set, ctx.table)
        lo = ctx.band[0]
        return [
            self.verdict(report.mattila_ratio >= lo, "mattila", **report.to_dict()),
            self.verdict(report.salem_ratio >= lo, "salem", salem_ratio=report.salem_ratio, s4=report.s4),
        ]


class SimplexCheck(SalemCheck):
    def __init__(self) -> None:
        super().__init__("simplices", claims.CLAIM_SIMPLICES)

    def applies(self, ctx: CheckContext) -> Optional[str]:
        if ctx.point_set.cardinality < 2:
            return "needs #E >= 2"
        return None

    def verify(self, ctx: CheckContext) -> list[Verdict]:
        verdicts = []
        for k in range(1, min(SIMPLEX_K_MAX, ctx.ambient.d) + 1):
            census = simplex_census(ctx.point_set, k, oracle=True, orbit_budget=ctx.session.orbit_budget)
            passed = census.consistent and census.signature_count <= census.upper_bound
            verdicts.append(self.verdict(passed, f"k{k}", note=census.degenerate_note, **census.to_dict()))
        return verdicts
