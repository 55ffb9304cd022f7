import re
from typing import List, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from salem_lp.field.gf import parse_field_spec, split_field_specs
from salem_lp.models.exception import SalemValidationException
from salem_lp.spectrum.norms import as_exponent

API_VERSION = "salem/alpha-v1"

KIND_SWEEP = "Sweep"
KIND_MONTE_CARLO = "MonteCarlo"

yaml_kinds = [
    KIND_SWEEP,
    KIND_MONTE_CARLO,
]

cfun_regex = r'^(const:(\d+(?:\.\d+)?)|log|loglog)$'

DEFAULT_BAND = (0.125, 8.0)
DEFAULT_P_LIST = ["2", "4", "8", "inf"]


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    recipe: Optional[str] = None
    d: int = 2
    q_list: List[str] = []
    p_list: List[str] = DEFAULT_P_LIST
    band: List[float] = list(DEFAULT_BAND)
    slope_tolerance: float = 0.1
    slope_points: int = 3
    checks: Optional[List[str]] = None
    trials: int = 100
    seed: int = 0
    alpha: float = 1.0
    cfun: str = "const:5"
    max_exceedance: Optional[float] = 0.1
    workers: int = 1
    csv_path: Optional[str] = Field(default=None, alias="csv")
    json_path: Optional[str] = Field(default=None, alias="json")

    @field_validator("q_list", mode="before")
    @classmethod
    def split_fields(cls, values):
        if isinstance(values, (str, int)):
            return split_field_specs(str(values))
        return [str(v).strip() for v in values]

    @field_validator("p_list", mode="before")
    @classmethod
    def stringify(cls, values):
        if isinstance(values, (str, int, float)):
            values = [v for v in re.split(r'[,;\s]+', str(values)) if v.strip()]
        return [str(v).strip() for v in values]

    def exponents(self) -> list[float]:
        return [as_exponent(p) for p in self.p_list]


class SalemExperimentConfig(BaseModel):
    apiVersion: str
    kind: str
    name: str
    experiment: ExperimentConfig


def to_experiment(yaml_str: str) -> SalemExperimentConfig:
    try:
        parsed_data = yaml.safe_load(yaml_str)
    except yaml.YAMLError as e:
        raise SalemValidationException(f"Experiment YAML does not parse: {e}")
    if not isinstance(parsed_data, dict):
        raise SalemValidationException("Experiment YAML must be a mapping")
    kind = parsed_data.get("kind")
    if kind not in yaml_kinds:
        raise SalemValidationException("Unknown kind: {}".format(kind))
    try:
        experiment = SalemExperimentConfig(**parsed_data)
    except ValidationError as e:
        raise SalemValidationException(f"Invalid experiment: {e}")
    validate_experiment_config(experiment)
    return experiment


def validate_experiment_config(config: SalemExperimentConfig):
    if config.apiVersion != API_VERSION:
        raise SalemValidationException(f"Unsupported apiVersion {config.apiVersion}, expected {API_VERSION}")
    if config.name is None or not is_valid_name(config.name):
        raise SalemValidationException("Invalid experiment name, expected: [^[a-z][a-z0-9_-]*$]")
    body = config.experiment
    if not body.q_list:
        raise SalemValidationException("q_list must name at least one field")
    for spec in body.q_list:
        parse_field_spec(spec)
    exponents = body.exponents()
    if any(p < 1 for p in exponents):
        raise SalemValidationException("p_list entries must lie in [1, inf]")
    if len(body.band) != 2 or not body.band[0] <= 1.0 <= body.band[1]:
        raise SalemValidationException(f"band must be [lo, hi] with lo <= 1 <= hi, got {body.band}")
    if body.d < 1:
        raise SalemValidationException(f"d must be positive, got {body.d}")
    if body.workers < 1:
        raise SalemValidationException(f"workers must be positive, got {body.workers}")
    if config.kind == KIND_SWEEP and not body.recipe:
        raise SalemValidationException("A sweep needs a recipe")
    if config.kind == KIND_MONTE_CARLO:
        if body.trials < 1:
            raise SalemValidationException(f"trials must be >= 1, got {body.trials}")
        if not re.match(cfun_regex, body.cfun):
            raise SalemValidationException(f"cfun must be const:<c>, log or loglog, got {body.cfun}")


def is_valid_name(s: str) -> bool:
    pattern = r'^[a-z][a-z0-9_-]*$'
    return bool(re.match(pattern, s))


def experiment_from_args(kind: str, name: str, **fields) -> SalemExperimentConfig:
    """Builds and validates a config from CLI arguments instead of YAML."""
    body = {k: v for k, v in fields.items() if v is not None}
    try:
        config = SalemExperimentConfig(apiVersion=API_VERSION, kind=kind, name=name,
                                       experiment=ExperimentConfig(**body))
    except ValidationError as e:
        raise SalemValidationException(f"Invalid experiment arguments: {e}")
    validate_experiment_config(config)
    return config


def band_from_text(text: Union[str, List[float]]) -> List[float]:
    if isinstance(text, list):
        return text
    parts = [float(v) for v in str(text).split(",") if v.strip()]
    return parts
