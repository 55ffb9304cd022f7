import os
from typing import Optional

from salem_lp.common.salem_logger import SalemLogger, session_logger
from salem_lp.constructions.recipe import SetRecipe
from salem_lp.field.gf import FieldParams, parse_field_spec
from salem_lp.helpers.utils import random_str
from salem_lp.lattice import DEFAULT_MAX_INDEX, Ambient, PointSet, ambient_make
from salem_lp.spectrum import FourierTable, fourier_transform
from salem_lp.spectrum.transform import DEFAULT_NAIVE_BUDGET, TRANSFORM_MODES
from salem_lp.models.exception import SalemValidationException

DEFAULT_ORBIT_BUDGET = 20_000_000
ANNIHILATOR_CACHE = "annihilator_lines.json"


class SalemSession:

    def __init__(self,
                 max_index: int = DEFAULT_MAX_INDEX,
                 orbit_budget: int = DEFAULT_ORBIT_BUDGET,
                 naive_budget: int = DEFAULT_NAIVE_BUDGET,
                 workers: int = 1,
                 transform_mode: str = "fast",
                 cache_dir: Optional[str] = None,
                 log_level: Optional[str] = "INFO") -> None:

        if transform_mode not in TRANSFORM_MODES:
            raise SalemValidationException(f"Unknown transform mode: {transform_mode}")
        self.session_id = str(random_str(16))
        self.max_index = max_index
        self.orbit_budget = orbit_budget
        self.naive_budget = naive_budget
        self.workers = workers
        self.transform_mode = transform_mode
        self.cache_dir = cache_dir
        self.fields: dict[str, FieldParams] = dict()
        self.recipes: dict[str, SetRecipe] = dict()

        self.init_logger(log_level)
        self.logger = session_logger
        self.logger.info(f"New SalemSession created with ID: {self.session_id}")

    def init_logger(self, log_level: Optional[str]):
        SalemLogger.set_log_level("SESSION", log_level)

    def field(self, spec: str) -> FieldParams:
        spec = str(spec).strip()
        if spec not in self.fields:
            self.fields[spec] = parse_field_spec(spec)
            self.logger.debug(f"Field {self.fields[spec].spec} cached for session {self.session_id}")
        return self.fields[spec]

    def ambient(self, spec: str, d: int) -> Ambient:
        return ambient_make(self.field(spec), d, self.max_index)

    def transform(self, E: PointSet, twist: int = 1) -> FourierTable:
        return fourier_transform(E, twist=twist, mode=self.transform_mode,
                                 workers=self.workers, naive_budget=self.naive_budget)

    def register_recipe(self, name: str, recipe: SetRecipe):
        self.recipes[name] = recipe
        self.logger.info(f"Recipe '{name}' registered for session {self.session_id}")
        return self

    @property
    def annihilator_cache(self) -> Optional[str]:
        if not self.cache_dir:
            return None
        os.makedirs(self.cache_dir, exist_ok=True)
        return os.path.join(self.cache_dir, ANNIHILATOR_CACHE)
