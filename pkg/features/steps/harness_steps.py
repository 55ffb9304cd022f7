import math
import os
import shlex
import tempfile

import numpy as np
import yaml
from behave import given, when, then
from salem_lp.cli import main
from salem_lp.constructions import random_set
from salem_lp.core import Salem
from salem_lp.field.gf import parse_field_spec
from salem_lp.harness import monte_carlo, read_csv, sweep, threshold_constant, trial_seeds
from salem_lp.lattice import ambient_make
from salem_lp.models.exception import SalemValidationException
from salem_lp.state.salem_session import SalemSession
from salem_lp.yaml.config import KIND_MONTE_CARLO, KIND_SWEEP, experiment_from_args

BASE_EXPERIMENT = {
    "apiVersion": "salem/alpha-v1",
    "kind": "Sweep",
    "name": "base-sweep",
    "experiment": {
        "recipe": "diagonal(n=1)",
        "d": 2,
        "q_list": [5, 7],
        "p_list": [2, "inf"],
        "band": [0.125, 8],
    },
}


def harness_session(context):
    if not hasattr(context, "harnessSession"):
        context.harnessSession = SalemSession(log_level="ERROR")
    return context.harnessSession


def scratch_dir(context) -> str:
    if not hasattr(context, "scratch"):
        context.scratch = tempfile.mkdtemp(prefix="salem-")
    return context.scratch


@given('a sweep of {recipe} in dimension {d:d} over {q_list}')
def step_impl(context, recipe, d, q_list):
    context.experiment = experiment_from_args(KIND_SWEEP, "scenario", recipe=recipe, d=d, q_list=q_list)

@given('an index budget of {budget:d}')
def step_impl(context, budget):
    context.harnessSession = SalemSession(max_index=budget, log_level="ERROR")

@when('the sweep is run')
def step_impl(context):
    context.record = sweep(harness_session(context), context.experiment)

@when('the sweep is run twice')
def step_impl(context):
    session = harness_session(context)
    context.records = [sweep(session, context.experiment), sweep(session, context.experiment)]

@then('the run passes')
def step_impl(context):
    assert context.record.passed, context.record.failures

@then('the run fails')
def step_impl(context):
    assert not context.record.passed

@then('every cell has {n:d} measurements in band')
def step_impl(context, n):
    for cell in context.record.cells:
        assert len(cell.measurements) == n, cell.field
        assert all(m.in_band is True for m in cell.measurements), cell.field

@then('a slope is fitted for every exponent')
def step_impl(context):
    exponents = context.experiment.experiment.exponents()
    assert len(context.record.slopes) == len(exponents)
    for fit in context.record.slopes:
        assert fit.slope is not None
        assert fit.holds

@then('the closed form check passed in every cell')
def step_impl(context):
    for cell in context.record.cells:
        closed = [v for v in cell.verdicts if v.check.startswith("closed_form")]
        assert closed, cell.field
        assert all(v.passed is True for v in closed), cell.field

@then('every cell is marked inadmissible')
def step_impl(context):
    assert context.record.cells
    assert all(cell.inadmissible for cell in context.record.cells)

@then('no measurement carries a band verdict')
def step_impl(context):
    for cell in context.record.cells:
        assert all(m.in_band is None for m in cell.measurements)

@then('the cell for {field} carries an error')
def step_impl(context, field):
    cells = {cell.field: cell for cell in context.record.cells}
    assert cells[field].error is not None
    others = [cell for cell in context.record.cells if cell.field != field]
    assert all(cell.error is None for cell in others)

@then('both runs agree apart from timings')
def step_impl(context):
    first, second = context.records
    assert first.measurements_equal(second)


@given('a Monte Carlo experiment over {field} in dimension {d:d} with alpha {alpha:g} and {trials:d} trials from seed {seed:d}')
def step_impl(context, field, d, alpha, trials, seed):
    context.experiment = experiment_from_args(KIND_MONTE_CARLO, "scenario", q_list=field, d=d,
                                          alpha=alpha, trials=trials, seed=seed)

@when('the Monte Carlo experiment is run twice')
def step_impl(context):
    session = harness_session(context)
    context.records = [monte_carlo(session, context.experiment), monte_carlo(session, context.experiment)]

@then('the Wilson interval contains the exceedance frequency')
def step_impl(context):
    summaries = context.records[0].trials
    assert summaries
    for summary in summaries:
        assert summary.ci_low <= summary.frequency <= summary.ci_high

@then('the threshold constant {cfun} at q {q:d} is {value:g}')
def step_impl(context, cfun, q, value):
    assert math.isclose(threshold_constant(cfun, q), value, rel_tol=1e-6)

@then('a sweep with an empty q grid is refused')
def step_impl(context):
    isException = False
    try:
        experiment_from_args(KIND_SWEEP, "empty", recipe="full()", d=2, q_list=[])
    except SalemValidationException:
        isException = True
    assert isException


@given('the experiment YAML')
def step_impl(context):
    context.yaml = context.text

@when('the experiment is built and run with a CSV file')
def step_impl(context):
    context.csvPath = os.path.join(scratch_dir(context), "sweep.csv")
    experiment = Salem.build(harness_session(context), context.yaml, log_level="ERROR")
    experiment.config.experiment.csv_path = context.csvPath
    context.record = experiment.run()

@then('the CSV file has {n:d} rows')
def step_impl(context, n):
    assert len(read_csv(context.csvPath)) == n

@given('the experiment YAML with {field} set to {value}')
def step_impl(context, field, value):
    document = {**BASE_EXPERIMENT, "experiment": dict(BASE_EXPERIMENT["experiment"])}
    parsed = yaml.safe_load(value)
    if field in document:
        document[field] = parsed
    else:
        document["experiment"][field] = parsed
    context.yaml = yaml.safe_dump(document)

@then('building the experiment is refused')
def step_impl(context):
    isException = False
    try:
        Salem.build(harness_session(context), context.yaml, log_level="ERROR")
    except SalemValidationException:
        isException = True
    assert isException


@when('the command line runs {command}')
def step_impl(context, command):
    context.setPath = getattr(context, "setPath", os.path.join(scratch_dir(context), "set.json"))
    suffix = " on the constructed set"
    if command.endswith(suffix):
        argv = [command[:-len(suffix)], "--in", context.setPath]
    elif command.endswith(" on the experiment file"):
        path = os.path.join(scratch_dir(context), "experiment.yaml")
        with open(path, "w") as fh:
            fh.write(context.yaml)
        argv = [command.split()[0], path]
    else:
        argv = shlex.split(command)
        if argv[0] == "construct":
            argv += ["--out", context.setPath]
    context.exitCode = main(["--log-level", "ERROR", *argv])

@then('the command exits with {code:d}')
def step_impl(context, code):
    assert context.exitCode == code, context.exitCode


@given('a sweep at exponents {p_list} of {recipe} in dimension {d:d} over {q_list}')
def step_impl(context, p_list, recipe, d, q_list):
    context.experiment = experiment_from_args(KIND_SWEEP, "scenario", recipe=recipe, d=d, q_list=q_list, p_list=p_list)

@then('the run has cells for q {qs}')
def step_impl(context, qs):
    assert [cell.q for cell in context.record.cells] == [int(q) for q in qs.split(",")]
    assert all(cell.error is None for cell in context.record.cells)

@then('the fitted slope at exponent {p} is about {value:g}')
def step_impl(context, p, value):
    fits = {fit.p: fit for fit in context.record.slopes}
    fit = fits[math.inf if p == "inf" else float(p)]
    assert fit.slope is not None
    assert abs(fit.slope - value) < 0.02, fit.slope

@given('a Monte Carlo experiment at exponent {p} over {field} in dimension {d:d} with alpha {alpha:g} and {trials:d} trials from seed {seed:d}')
def step_impl(context, p, field, d, alpha, trials, seed):
    context.experiment = experiment_from_args(KIND_MONTE_CARLO, "scenario", q_list=field, d=d, p_list=p,
                                          alpha=alpha, trials=trials, seed=seed, cfun="const:5")

@when('the Monte Carlo experiment is run')
def step_impl(context):
    context.record = monte_carlo(harness_session(context), context.experiment)

@then('the exceedance frequency is below {limit:g}')
def step_impl(context, limit):
    assert context.record.trials
    for summary in context.record.trials:
        assert summary.frequency < limit, summary.frequency

@then('the median of q^d ||X^||_p / q^(alpha/2) lies between {lo:g} and {hi:g}')
def step_impl(context, lo, hi):
    body = context.experiment.experiment
    for summary in context.record.trials:
        scaled = np.asarray(summary.norms) * summary.q ** body.d / summary.q ** (body.alpha / 2.0)
        assert lo <= float(np.median(scaled)) <= hi, float(np.median(scaled))

@then('the trial seeds from {first:d} and {second:d} share no trial over {field} in dimension {d:d}')
def step_impl(context, first, second, field, d):
    seeds_a, seeds_b = trial_seeds(first, 50), trial_seeds(second, 50)
    assert seeds_a == trial_seeds(first, 50)
    assert not set(seeds_a) & set(seeds_b)
    ambient = ambient_make(parse_field_spec(field), d)
    sets_a = [random_set(ambient, 1.0, s) for s in seeds_a[:10]]
    sets_b = [random_set(ambient, 1.0, s) for s in seeds_b[:10]]
    assert all(a != b for a in sets_a for b in sets_b)
