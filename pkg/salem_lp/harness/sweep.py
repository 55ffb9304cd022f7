import math
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

import numpy as np

from salem_lp.builders.recipe_builder import build_recipe
from salem_lp.checks import CheckContext, CheckFactory, SalemCheck, in_band
from salem_lp.common.salem_logger import harness_logger
from salem_lp.constructions.recipe import SetRecipe
from salem_lp.harness.records import CellResult, Measurement, RunRecord, SlopeFit
from salem_lp.helpers.utils import config_hash, library_version, utc_timestamp
from salem_lp.models.exception import (
    SalemBudgetException,
    SalemIllegalStateException,
    SalemValidationException,
)
from salem_lp.spectrum import spectral_profile
from salem_lp.state.salem_session import SalemSession
from salem_lp.yaml.config import SalemExperimentConfig

CELL_ERRORS = (SalemValidationException, SalemIllegalStateException, SalemBudgetException)


def band_ratio(lp: float, set_size: int, total: int, s: float) -> float:
    """lp over q^-d (#E)^(1-s)."""
    return lp * total / set_size ** (1.0 - s)


def run_cell(session: SalemSession,
             recipe: SetRecipe,
             field_spec: str,
             d: int,
             p_list: Sequence[float],
             band: Sequence[float],
             checks: Sequence[SalemCheck]) -> CellResult:
    started = time.perf_counter()
    cell = CellResult(field=field_spec, q=0)
    try:
        ambient = session.ambient(field_spec, d)
        cell.field, cell.q = ambient.field.spec, ambient.q
        E = recipe.build(ambient)
        cell.set_size = E.cardinality
        table = session.transform(E)
        profile = spectral_profile(E, p_list, table)
        cell.inadmissible = recipe.admissible(ambient)
        if cell.inadmissible:
            harness_logger.warning(f"{recipe.grammar()} over {ambient.spec}: {cell.inadmissible}, no band assertion")
        for rec in profile.records:
            s_theory = recipe.predicted(ambient, rec.p)
            measurement = Measurement(
                field=cell.field, q=cell.q, d=d, set_name=profile.set_name, set_size=E.cardinality,
                p=rec.p, lp_norm=rec.lp_norm, s_emp=rec.s_emp, s_theory=s_theory, claim=recipe.claim,
            )
            if s_theory is not None and E.cardinality >= 2:
                measurement.ratio = band_ratio(rec.lp_norm, E.cardinality, ambient.size, s_theory)
                measurement.in_band = in_band(measurement.ratio, band)
            cell.measurements.append(measurement)
        ctx = CheckContext(session, E, table, p_list, tuple(band), recipe)
        for check in checks:
            cell.verdicts.extend(check.run(ctx))
    except CELL_ERRORS as e:
        harness_logger.error(f"Cell {field_spec} failed: {e}")
        cell.error = f"{type(e).__name__}: {e}"
    cell.seconds = time.perf_counter() - started
    harness_logger.info(f"Cell {cell.field} done in {cell.seconds:.2f}s, passed={cell.passed}")
    return cell


def fit_slopes(cells: Sequence[CellResult], p_list: Sequence[float], tolerance: float, min_points: int) -> list[SlopeFit]:
    fits = []
    for p in p_list:
        xs, ys = [], []
        for cell in cells:
            for m in cell.measurements:
                if m.p == p and m.ratio is not None and m.ratio > 0 and math.isfinite(m.ratio):
                    xs.append(math.log(m.q))
                    ys.append(math.log(m.ratio))
        slope = None
        if len(xs) >= min_points and len(set(xs)) >= 2:
            slope = float(np.polyfit(xs, ys, 1)[0])
        fits.append(SlopeFit(p=p, points=len(xs), slope=slope, tolerance=tolerance))
    return fits


def sweep(session: SalemSession, config: SalemExperimentConfig, recipe: Optional[SetRecipe] = None) -> RunRecord:
    """Builds the recipe at every q of the grid, profiles it and runs the attached checks."""
    body = config.experiment
    if not body.q_list:
        raise SalemValidationException("Sweep needs a non-empty q grid")
    recipe = recipe if recipe is not None else build_recipe(session, body.recipe)
    p_list = sorted(body.exponents())
    checks = CheckFactory.create_all(body.checks, recipe)
    payload = config.model_dump()
    record = RunRecord(
        name=config.name,
        kind=config.kind,
        config=payload,
        config_hash=config_hash(payload),
        version=library_version(),
        started_at=utc_timestamp(),
        claims={"recipe": recipe.claim, **{check.name: check.claim for check in checks}},
    )
    harness_logger.info(f"Sweep {config.name}: {recipe.grammar()} d={body.d} over {body.q_list}")
    started = time.perf_counter()

    def run(field_spec: str) -> CellResult:
        return run_cell(session, recipe, field_spec, body.d, p_list, body.band, checks)

    # map keeps the grid order, so records do not depend on scheduling
    with ThreadPoolExecutor(max_workers=max(1, body.workers)) as pool:
        record.cells = list(pool.map(run, body.q_list))
    record.slopes = fit_slopes(record.cells, p_list, body.slope_tolerance, body.slope_points)
    record.wall_clock = time.perf_counter() - started
    harness_logger.info(f"Sweep {config.name} finished in {record.wall_clock:.2f}s, passed={record.passed}")
    return record
