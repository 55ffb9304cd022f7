"""
Command-line entry point.

    salem construct --recipe "sphere(r=0)" --field 5 --d 3 --out set.json
    salem spectrum --in set.json --p 2,4,8,inf --csv profile.csv
    salem sweep --recipe "sphere(r=0)" --d 3 --q-list 5,9,13 --p 2,4,inf --band 0.125,8 --csv sweep.csv
    salem distance --in set.json
    salem simplices --in set.json --k 2 --oracle
    salem charsum --kind kloosterman --field 7 --p 4
    salem random --field 49 --d 2 --alpha 1 --p 4 --trials 200 --seed 7 --cfun const:5
    salem run experiment.yaml

Exit code 0 iff every assertion passes.
"""
import argparse
import os
import sys
from typing import List, Optional

from dotenv import load_dotenv

from salem_lp.builders.recipe_builder import build_recipe
from salem_lp.charsums import CHARSUM_KINDS, CurveMap, char_sum_grid, charsum_lp, kloosterman_pointwise_check, weil_pointwise_check
from salem_lp.checks import CheckContext, CheckFactory, Verdict
from salem_lp.common.salem_logger import FILE_ENV, common_logger, log_to_file, set_global_log_level
from salem_lp.core import Salem
from salem_lp.geometry import distance_bound_report, simplex_census
from salem_lp.harness import write_csv, write_json
from salem_lp.lattice import DEFAULT_MAX_INDEX, ambient_make, read_set_file, write_set_file
from salem_lp.models.exception import SalemBudgetException, SalemIllegalStateException, SalemValidationException
from salem_lp.spectrum import PROFILE_COLUMNS, TRANSFORM_MODES, parse_exponent_list, spectral_profile
from salem_lp.state.salem_session import SalemSession
from salem_lp.yaml.config import (
    DEFAULT_BAND,
    DEFAULT_P_LIST,
    KIND_MONTE_CARLO,
    KIND_SWEEP,
    band_from_text,
    experiment_from_args,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2


def _session(args) -> SalemSession:
    return SalemSession(
        max_index=args.max_index,
        workers=args.workers,
        transform_mode=args.mode,
        cache_dir=args.cache_dir,
        log_level=args.log_level,
    )


def _report(verdicts: List[Verdict]) -> int:
    failed = [v for v in verdicts if v.passed is False]
    for v in verdicts:
        status = "skip" if v.skipped else ("ok" if v.passed else "FAIL")
        print(f"[{status}] {v.check}: {v.note or v.claim}")
    return EXIT_FAILED if failed else EXIT_OK


def cmd_construct(args) -> int:
    session = _session(args)
    recipe = build_recipe(session, args.recipe)
    ambient = session.ambient(args.field, args.d)
    reason = recipe.admissible(ambient)
    if reason:
        common_logger.warning(f"{recipe.grammar()} over {ambient.spec}: {reason}")
    E = recipe.build(ambient)
    write_set_file(E, args.out)
    print(f"{E.name}: {E.cardinality} points of {ambient.spec} -> {args.out}")
    return EXIT_OK


def cmd_spectrum(args) -> int:
    session = _session(args)
    E = read_set_file(args.input, args.max_index)
    table = session.transform(E)
    p_list = sorted(parse_exponent_list(args.p))
    profile = spectral_profile(E, p_list, table)
    if args.csv:
        write_csv(args.csv, profile.rows(), PROFILE_COLUMNS)
    if args.json:
        write_json(args.json, profile.to_dict())
    for row in profile.rows():
        print(f"p={row['p']}: lp={row['lp_norm']:.6g} s_emp={row['s_emp']}")
    ctx = CheckContext(session, E, table, p_list)
    verdicts = []
    for check in CheckFactory.create_all(["plancherel", "holder"]):
        verdicts.extend(check.run(ctx))
    return _report(verdicts)


def cmd_sweep(args) -> int:
    session = _session(args)
    config = experiment_from_args(
        KIND_SWEEP, args.name,
        recipe=args.recipe, d=args.d, q_list=args.q_list, p_list=args.p,
        band=band_from_text(args.band), slope_tolerance=args.slope_tolerance,
        checks=args.checks.split(",") if args.checks else None,
        workers=args.workers, csv=args.csv, json=args.json,
    )
    record = Salem(session, config, args.log_level).run()
    print(f"{config.name}: {len(record.cells)} cells, passed={record.passed}")
    return EXIT_OK if record.passed else EXIT_FAILED


def cmd_distance(args) -> int:
    session = _session(args)
    E = read_set_file(args.input, args.max_index)
    table = session.transform(E)
    report = distance_bound_report(E, table)
    if args.json:
        write_json(args.json, report.to_dict())
    print(f"#D(E) = {report.distance_count}, Mattila bound {report.mattila_bound:.4g}, "
          f"Salem bound {report.salem_bound:.4g}")
    ctx = CheckContext(session, E, table, [4.0])
    verdicts = []
    for check in CheckFactory.create_all(["energy", "distance"]):
        verdicts.extend(check.run(ctx))
    return _report(verdicts)


def cmd_simplices(args) -> int:
    session = _session(args)
    E = read_set_file(args.input, args.max_index)
    census = simplex_census(E, args.k, oracle=args.oracle, orbit_budget=session.orbit_budget)
    if args.json:
        write_json(args.json, census.to_dict())
    print(f"k={census.k}: {census.signature_count} signatures, orbits={census.orbit_count}, "
          f"upper bound {census.upper_bound}")
    print(census.degenerate_note)
    return EXIT_OK if census.consistent else EXIT_FAILED


def cmd_charsum(args) -> int:
    session = _session(args)
    field_params = session.field(args.field)
    ambient = ambient_make(field_params, args.d, args.max_index)
    if args.kind == "weil":
        f = CurveMap.weil(field_params)
    elif args.kind == "kloosterman":
        f = CurveMap.kloosterman(ambient)
    else:
        if not args.f:
            raise SalemValidationException("--f is required for general character sums")
        f = CurveMap.polynomial(ambient, [part.strip() for part in args.f.split(",")])
    grid = char_sum_grid(f)
    if args.csv:
        write_csv(args.csv, grid.rows())
    summaries = [charsum_lp(grid, p, args.constant) for p in parse_exponent_list(args.p)]
    passed = True
    for summary in summaries:
        print(f"p={summary.to_dict()['p']}: {summary.value:.6g} vs {summary.bound:.6g} (ratio {summary.ratio:.4f})")
        if args.kind != "general":
            passed = passed and summary.holds
    payload = {"kind": args.kind, "field": field_params.spec, "moments": [s.to_dict() for s in summaries]}
    if args.kind == "kloosterman" and field_params.p != 2:
        pointwise = kloosterman_pointwise_check(field_params)
        payload["pointwise"] = {"checked": pointwise.checked, "violations": pointwise.violations,
                                "fiber_histogram": pointwise.fiber_histogram,
                                "curve_fiber_histogram": pointwise.curve_fiber_histogram,
                                "fiber_exceptions": pointwise.fiber_exceptions}
        passed = passed and pointwise.holds
    elif args.kind != "kloosterman":
        weil = weil_pointwise_check(f, grid)
        payload["weil"] = {"checked": weil.checked, "violations": weil.violations,
                           "flagged_degrees": weil.flagged_degrees}
        passed = passed and weil.holds
    if args.json:
        write_json(args.json, payload)
    return EXIT_OK if passed else EXIT_FAILED


def cmd_random(args) -> int:
    session = _session(args)
    config = experiment_from_args(
        KIND_MONTE_CARLO, args.name,
        d=args.d, q_list=args.field, p_list=args.p, alpha=args.alpha, trials=args.trials,
        seed=args.seed, cfun=args.cfun, max_exceedance=args.max_exceedance,
        workers=args.workers, csv=args.csv, json=args.json,
    )
    record = Salem(session, config, args.log_level).run()
    for summary in record.trials:
        print(f"{summary.field} p={summary.p}: {summary.exceedances}/{summary.trials} exceed, "
              f"Wilson [{summary.ci_low:.4f}, {summary.ci_high:.4f}]")
    return EXIT_OK if record.passed else EXIT_FAILED


def cmd_run(args) -> int:
    session = _session(args)
    try:
        with open(args.config, "r") as fh:
            text = fh.read()
    except OSError as e:
        raise SalemValidationException(f"Cannot read experiment file {args.config}: {e}")
    experiment = Salem.build(session, text, args.log_level)
    record = experiment.run()
    print(f"{record.name}: passed={record.passed}")
    return EXIT_OK if record.passed else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="salem", description="(p, s)-Salem experiments over finite fields.")
    p.add_argument("--log-level", default=None, dest="log_level",
                   help="Level for every salem logger; defaults to SALEM_LOG_LEVEL_<NAME> or INFO.")
    p.add_argument("--workers", type=int, default=1, help="Threads for transforms and sweep cells.")
    p.add_argument("--max-index", type=int, default=DEFAULT_MAX_INDEX, dest="max_index",
                   help="Largest ambient size q^d accepted.")
    p.add_argument("--mode", choices=TRANSFORM_MODES, default="fast", help="Transform implementation.")
    p.add_argument("--cache-dir", default=None, dest="cache_dir", help="Directory for search caches.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="Build a set from a recipe and write it as JSON.")
    c.add_argument("--recipe", required=True)
    c.add_argument("--field", required=True, help="q, or p^m, or p^m/c0,c1,... for an explicit modulus.")
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--out", required=True)
    c.set_defaults(handler=cmd_construct)

    s = sub.add_parser("spectrum", help="L^p profile of a set file.")
    s.add_argument("--in", required=True, dest="input")
    s.add_argument("--p", default=",".join(DEFAULT_P_LIST))
    s.add_argument("--csv")
    s.add_argument("--json")
    s.set_defaults(handler=cmd_spectrum)

    w = sub.add_parser("sweep", help="Band assertions for a recipe across a q grid.")
    w.add_argument("--recipe", required=True)
    w.add_argument("--name", default="sweep")
    w.add_argument("--d", type=int, required=True)
    w.add_argument("--q-list", required=True, dest="q_list")
    w.add_argument("--p", default=",".join(DEFAULT_P_LIST))
    w.add_argument("--band", default=",".join(str(b) for b in DEFAULT_BAND))
    w.add_argument("--slope-tolerance", type=float, default=0.1, dest="slope_tolerance")
    w.add_argument("--checks", default=None, help="Comma separated check names; defaults depend on the recipe.")
    w.add_argument("--csv")
    w.add_argument("--json")
    w.set_defaults(handler=cmd_sweep)

    t = sub.add_parser("distance", help="Distance set and Mattila integral of a set file.")
    t.add_argument("--in", required=True, dest="input")
    t.add_argument("--json")
    t.set_defaults(handler=cmd_distance)

    x = sub.add_parser("simplices", help="Congruence census of k-simplices.")
    x.add_argument("--in", required=True, dest="input")
    x.add_argument("--k", type=int, default=1)
    x.add_argument("--oracle", action="store_true", help="Also count orbits under O_d.")
    x.add_argument("--json")
    x.set_defaults(handler=cmd_simplices)

    h = sub.add_parser("charsum", help="Character sum grid and its moments.")
    h.add_argument("--kind", choices=CHARSUM_KINDS, required=True)
    h.add_argument("--field", required=True)
    h.add_argument("--d", type=int, default=2)
    h.add_argument("--f", default=None, help="Comma separated polynomial components, e.g. 'k,k^2'.")
    h.add_argument("--p", default="4")
    h.add_argument("--constant", type=float, default=None, help="c in the bound c sqrt(q).")
    h.add_argument("--csv")
    h.add_argument("--json")
    h.set_defaults(handler=cmd_charsum)

    r = sub.add_parser("random", help="Monte Carlo over uniform random sets.")
    r.add_argument("--name", default="random")
    r.add_argument("--field", required=True, help="One field spec or a comma separated list.")
    r.add_argument("--d", type=int, default=2)
    r.add_argument("--alpha", type=float, default=1.0)
    r.add_argument("--p", default="4")
    r.add_argument("--trials", type=int, default=100)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--cfun", default="const:5")
    r.add_argument("--max-exceedance", type=float, default=0.1, dest="max_exceedance")
    r.add_argument("--csv")
    r.add_argument("--json")
    r.set_defaults(handler=cmd_random)

    y = sub.add_parser("run", help="Run a YAML experiment.")
    y.add_argument("config")
    y.set_defaults(handler=cmd_run)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)
    try:
        set_global_log_level(args.log_level)
        if os.environ.get(FILE_ENV):
            log_to_file(os.environ[FILE_ENV])
        return args.handler(args)
    except (SalemValidationException, SalemBudgetException, SalemIllegalStateException) as e:
        common_logger.error(f"{args.command} failed: {e}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
