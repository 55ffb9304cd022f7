import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Optional, Sequence

from salem_lp.common.salem_logger import harness_logger
from salem_lp.constructions.recipe import SetRecipe
from salem_lp.helpers.utils import json_safe
from salem_lp.lattice import Ambient, PointSet
from salem_lp.models.exception import SalemBudgetException, SalemValidationException
from salem_lp.spectrum import FourierTable
from salem_lp.state.salem_session import SalemSession
from salem_lp.yaml.config import DEFAULT_BAND


@dataclass
class Verdict:
    """passed is None when the check did not apply to the set."""
    check: str
    passed: Optional[bool]
    claim: str
    measured: dict = field(default_factory=dict)
    note: str = ""

    @property
    def skipped(self) -> bool:
        return self.passed is None

    def to_dict(self) -> dict:
        return json_safe({
            "check": self.check,
            "passed": self.passed,
            "claim": self.claim,
            "measured": self.measured,
            "note": self.note,
        })


@dataclass
class CheckContext:
    session: SalemSession
    point_set: PointSet
    table: FourierTable
    p_list: Sequence[float]
    band: tuple[float, float] = DEFAULT_BAND
    recipe: Optional[SetRecipe] = None

    @property
    def ambient(self) -> Ambient:
        return self.point_set.ambient

    @property
    def finite_p(self) -> list[float]:
        return [p for p in self.p_list if math.isfinite(p)]


class SalemCheck(ABC):
    def __init__(self, name: str, claim: str) -> None:
        self.name = name
        self.claim = claim

    def applies(self, ctx: CheckContext) -> Optional[str]:
        """A reason to skip this check for the context, None when it applies."""
        return None

    @abstractmethod
    def verify(self, ctx: CheckContext) -> list[Verdict]:
        pass

    def run(self, ctx: CheckContext) -> list[Verdict]:
        reason = self.applies(ctx)
        if reason is not None:
            harness_logger.debug(f"Check {self.name} skipped for {ctx.point_set!r}: {reason}")
            return [self.skip(reason)]
        try:
            verdicts = self.verify(ctx)
        except SalemBudgetException as e:
            harness_logger.warning(f"Check {self.name} over budget: {e}")
            return [self.skip(str(e))]
        except SalemValidationException as e:
            harness_logger.warning(f"Check {self.name} not applicable: {e}")
            return [self.skip(str(e))]
        for verdict in verdicts:
            if verdict.passed is False:
                harness_logger.error(f"Check {verdict.check} failed on {ctx.point_set!r}: {verdict.measured}")
        return verdicts

    def verdict(self, passed: bool, suffix: str = "", note: str = "", **measured) -> Verdict:
        name = f"{self.name}:{suffix}" if suffix else self.name
        return Verdict(name, bool(passed), self.claim, measured, note)

    def skip(self, reason: str) -> Verdict:
        return Verdict(self.name, None, self.claim, {}, reason)


def in_band(ratio: float, band: Sequence[float]) -> bool:
    lo, hi = band
    return math.isfinite(ratio) and lo <= ratio <= hi
