from dataclasses import dataclass, field
from typing import Callable, Optional

from salem_lp.common.salem_logger import builder_logger
from salem_lp.lattice import Ambient, PointSet

Prediction = Callable[[Ambient, float], Optional[float]]
Hypothesis = Callable[[Ambient], Optional[str]]


def format_param(value) -> str:
    if isinstance(value, SetRecipe):
        return value.grammar()
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(format_param(v) for v in value) + "]"
    return str(value)


@dataclass
class SetRecipe:
    """
    A named construction together with what is known about its spectrum.

    s_theory(ambient, p) returns the predicted Salem exponent at p, or None where no
    prediction applies. hypothesis(ambient) returns a reason string when the prediction's
    hypotheses fail for that ambient, None when they hold.
    """
    name: str
    construct: Callable[[Ambient], PointSet]
    params: dict = field(default_factory=dict)
    s_theory: Optional[Prediction] = None
    hypothesis: Optional[Hypothesis] = None
    claim: str = ""

    def grammar(self) -> str:
        args = ",".join(f"{key}={format_param(value)}" for key, value in self.params.items())
        return f"{self.name}({args})"

    def admissible(self, ambient: Ambient) -> Optional[str]:
        if self.hypothesis is None:
            return None
        return self.hypothesis(ambient)

    def predicted(self, ambient: Ambient, p: float) -> Optional[float]:
        if self.s_theory is None or self.admissible(ambient) is not None:
            return None
        return self.s_theory(ambient, p)

    def build(self, ambient: Ambient) -> PointSet:
        point_set = self.construct(ambient)
        point_set.name = self.grammar()
        point_set.metadata["recipe"] = self.grammar()
        if self.claim:
            point_set.metadata["claim"] = self.claim
        builder_logger.debug(f"Built {point_set!r}")
        return point_set.freeze()
