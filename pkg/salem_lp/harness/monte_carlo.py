import math
import re
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy.stats import binomtest

from salem_lp.common.salem_logger import harness_logger
from salem_lp.constants import claims
from salem_lp.constructions import random_set
from salem_lp.harness.records import CellResult, RunRecord, TrialSummary
from salem_lp.harness.sweep import CELL_ERRORS
from salem_lp.helpers.utils import config_hash, library_version, utc_timestamp
from salem_lp.lattice import Ambient
from salem_lp.models.exception import SalemValidationException
from salem_lp.spectrum import lp_norm
from salem_lp.state.salem_session import SalemSession
from salem_lp.yaml.config import SalemExperimentConfig, cfun_regex

CONFIDENCE = 0.95


def threshold_constant(cfun: str, q: int) -> float:
    """C(q) from its descriptor: const:<c>, log (ln q) or loglog (ln ln q)."""
    match = re.match(cfun_regex, cfun)
    if not match:
        raise SalemValidationException(f"Unknown threshold function: {cfun}")
    if match.group(2) is not None:
        return float(match.group(2))
    if cfun == "log":
        return math.log(q)
    if q < 3:
        raise SalemValidationException("log log q needs q >= 3")
    return math.log(math.log(q))


def trial_seeds(seed: int, trials: int) -> list[int]:
    """Independent per-trial seeds spawned from the run seed."""
    return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in np.random.SeedSequence(seed).spawn(trials)]


def trial_norms(session: SalemSession, ambient: Ambient, alpha: float, p: float, seed: int, trials: int) -> list[float]:
    """||X^||_p for the random sets drawn with the spawned trial seeds, in trial order."""
    def one(trial_seed: int) -> float:
        X = random_set(ambient, alpha, trial_seed)
        return lp_norm(session.transform(X), p)

    with ThreadPoolExecutor(max_workers=max(1, session.workers)) as pool:
        return list(pool.map(one, trial_seeds(seed, trials)))


def wilson_interval(successes: int, trials: int) -> tuple[float, float]:
    ci = binomtest(successes, trials).proportion_ci(confidence_level=CONFIDENCE, method="wilson")
    return float(ci.low), float(ci.high)


def monte_carlo(session: SalemSession, config: SalemExperimentConfig) -> RunRecord:
    """Estimates P(||X^||_p > C(q) q^-d q^(alpha/2)) for uniform random sets of size floor(q^alpha)."""
    body = config.experiment
    if body.trials < 1:
        raise SalemValidationException(f"Need at least one trial, got {body.trials}")
    payload = config.model_dump()
    record = RunRecord(
        name=config.name,
        kind=config.kind,
        config=payload,
        config_hash=config_hash(payload),
        version=library_version(),
        started_at=utc_timestamp(),
        claims={"monte_carlo": claims.CLAIM_MONTE_CARLO},
    )
    started = time.perf_counter()
    for field_spec in body.q_list:
        cell = CellResult(field=field_spec, q=0)
        try:
            ambient = session.ambient(field_spec, body.d)
            cell.field, cell.q = ambient.field.spec, ambient.q
            constant = threshold_constant(body.cfun, ambient.q)
            threshold = constant * ambient.q ** (body.alpha / 2.0) / ambient.size
            for p in body.exponents():
                norms = trial_norms(session, ambient, body.alpha, p, body.seed, body.trials)
                exceedances = sum(1 for n in norms if n > threshold)
                low, high = wilson_interval(exceedances, body.trials)
                summary = TrialSummary(
                    field=cell.field, q=cell.q, p=p, alpha=body.alpha, trials=body.trials,
                    exceedances=exceedances, threshold=threshold, constant=constant,
                    ci_low=low, ci_high=high, max_frequency=body.max_exceedance, norms=norms,
                )
                harness_logger.info(f"{cell.field} p={p}: {exceedances}/{body.trials} exceed C(q)={constant:.3g}")
                record.trials.append(summary)
        except CELL_ERRORS as e:
            harness_logger.error(f"Monte Carlo cell {field_spec} failed: {e}")
            cell.error = f"{type(e).__name__}: {e}"
        record.cells.append(cell)
    record.wall_clock = time.perf_counter() - started
    return record
