from typing import Optional

from salem_lp.builders.recipe_builder import build_recipe
from salem_lp.common.salem_logger import builder_logger, common_logger, set_global_log_level
from salem_lp.constructions.recipe import SetRecipe
from salem_lp.harness import (
    SWEEP_COLUMNS,
    TRIAL_COLUMNS,
    RunRecord,
    monte_carlo,
    sweep,
    write_csv,
    write_json,
)
from salem_lp.state.salem_session import SalemSession
from salem_lp.yaml.config import KIND_MONTE_CARLO, KIND_SWEEP, SalemExperimentConfig, to_experiment


class Salem:

    def __init__(self,
                 session: SalemSession,
                 config: SalemExperimentConfig,
                 log_level: Optional[str] = "INFO") -> None:
        self.session = session
        self.config = config
        set_global_log_level(log_level)
        self.logger = common_logger
        self.recipe: Optional[SetRecipe] = None
        if config.kind == KIND_SWEEP:
            self.recipe = build_recipe(session, config.experiment.recipe)
        self.logger.info(f"Salem experiment '{config.name}' created for session {session.session_id}")

    def run(self) -> RunRecord:
        self.logger.info(f"Running {self.config.kind} '{self.config.name}'")
        if self.config.kind == KIND_MONTE_CARLO:
            record = monte_carlo(self.session, self.config)
            rows, columns = [s.to_dict() for s in record.trials], TRIAL_COLUMNS
        else:
            record = sweep(self.session, self.config, self.recipe)
            rows, columns = record.measurement_rows(), SWEEP_COLUMNS
        body = self.config.experiment
        if body.csv_path:
            write_csv(body.csv_path, rows, columns)
        if body.json_path:
            write_json(body.json_path, record.to_dict())
        if not record.passed:
            for failure in record.failures:
                self.logger.error(f"Failed: {failure}")
        return record

    @staticmethod
    def build(session: SalemSession, yaml: str, log_level: Optional[str] = "INFO"):
        set_global_log_level(log_level)
        builder_logger.info("Building Salem experiment from YAML")
        return Salem(session, to_experiment(yaml), log_level)
