from enum import Enum
from typing import Optional, Sequence

from salem_lp.checks.additive_checks import SidonCheck, SumsetCheck
from salem_lp.checks.character_checks import CharSumLinkCheck, KloostermanCheck, WeilCheck
from salem_lp.checks.geometric_checks import DistanceCheck, EnergyCheck, SimplexCheck
from salem_lp.checks.salem_check import SalemCheck
from salem_lp.checks.spectral_checks import (
    BigSetsCheck,
    ClosedFormCheck,
    FactorizationCheck,
    HolderCheck,
    LevelSetCheck,
    PlancherelCheck,
)
from salem_lp.constructions.recipe import SetRecipe
from salem_lp.models.exception import SalemValidationException


class CheckKinds(Enum):
    plancherel = "plancherel"
    holder = "holder"
    closed_form = "closed_form"
    factorization = "factorization"
    sidon = "sidon"
    sumset = "sumset"
    energy = "energy"
    distance = "distance"
    simplices = "simplices"
    level_sets = "level_sets"
    bigsets = "bigsets"
    kloosterman = "kloosterman"
    charsum_link = "charsum_link"
    weil = "weil"


ALWAYS = ["plancherel", "holder"]

RECIPE_CHECKS = {
    "sphere": ["energy", "distance"],
    "coneC": ["energy", "distance"],
    "coneD": ["energy", "distance", "level_sets"],
    "cylinder": ["energy", "distance"],
    "paraboloid": ["sidon"],
    "diagonal": ["closed_form"],
    "complement": ["closed_form", "bigsets"],
    "annihilator": ["closed_form"],
    "product": ["factorization"],
    "curve": ["charsum_link", "weil"],
    "veronese": ["charsum_link", "weil"],
    "kloosterman": ["charsum_link", "kloosterman"],
    "kloosterman_image": ["charsum_link", "kloosterman"],
    "random": ["sumset", "energy"],
}


class CheckFactory:

    @staticmethod
    def create(name: str) -> SalemCheck:
        kind = getattr(CheckKinds, name, None)
        match(kind):
            case CheckKinds.plancherel:
                return PlancherelCheck()
            case CheckKinds.holder:
                return HolderCheck()
            case CheckKinds.closed_form:
                return ClosedFormCheck()
            case CheckKinds.factorization:
                return FactorizationCheck()
            case CheckKinds.sidon:
                return SidonCheck()
            case CheckKinds.sumset:
                return SumsetCheck()
            case CheckKinds.energy:
                return EnergyCheck()
            case CheckKinds.distance:
                return DistanceCheck()
            case CheckKinds.simplices:
                return SimplexCheck()
            case CheckKinds.level_sets:
                return LevelSetCheck()
            case CheckKinds.bigsets:
                return BigSetsCheck()
            case CheckKinds.kloosterman:
                return KloostermanCheck()
            case CheckKinds.charsum_link:
                return CharSumLinkCheck()
            case CheckKinds.weil:
                return WeilCheck()
        raise SalemValidationException(f"Unknown check: {name}")

    @staticmethod
    def defaults_for(recipe: Optional[SetRecipe]) -> list[str]:
        if recipe is None:
            return list(ALWAYS)
        return ALWAYS + RECIPE_CHECKS.get(recipe.name, [])

    @staticmethod
    def create_all(names: Optional[Sequence[str]], recipe: Optional[SetRecipe] = None) -> list[SalemCheck]:
        names = list(names) if names else CheckFactory.defaults_for(recipe)
        return [CheckFactory.create(name) for name in names]
