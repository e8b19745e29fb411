"""Command line interface.

Exit codes: 0 success, 1 usage error, 2 unreadable or invalid input
data, 3 verification failure (a failed self-check battery, or simulated
estimates drifting past the flag threshold). A reader closing our
stdout early (sweep piped into head) exits 141, the usual SIGPIPE
status, rather than pretending the input was bad.

Exact values print as canonical rationals with a rounded decimal in
parentheses; files and CSV cells carry only the exact form.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from fractions import Fraction

from . import montecarlo, verify
from .core import (
    Decision,
    NewcombScenario,
    PredictionModel,
    expected_reward,
    posterior_box_full,
    preferred_decision,
    authority_check,
    scenario_summary,
)
from .errors import InvalidScenarioError, NewcombError
from .rational import decimal_str, format_rational, parse_rational
from .refinement import check_delta_omniscience, coarsen, variance_decomposition
from .impossibility import (
    bad_decision_probability,
    build_adversarial_game,
    choice_payout,
    optimal_choice,
)
from .scenario_io import load_scenario, save_scenario

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_VERIFY = 3
EXIT_PIPE = 128 + 13

SWEEP_COLUMNS = (
    "p",
    "spread",
    "sigma2",
    "threshold",
    "r_over_R",
    "preference",
    "e_onebox",
    "e_twobox",
)


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors by default; this CLI
    # reserves 2 for bad input data
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(value: Fraction) -> str:
    return f"{format_rational(value)} ({decimal_str(value)})"


def _parse_rational_list(text: str, what: str) -> list[Fraction]:
    items = [piece.strip() for piece in text.split(",")]
    if not any(items):
        raise InvalidScenarioError(f"{what}: empty list")
    return [
        parse_rational(piece, what=f"{what}[{i}]")
        for i, piece in enumerate(items)
    ]


def _cmd_analyze(args) -> int:
    loaded = load_scenario(args.scenario)
    scenario = loaded.scenario
    summary = scenario_summary(scenario)
    small, large = scenario.small_reward, scenario.large_reward
    print(f"support points: {len(scenario.prediction.support)}")
    print(
        f"rewards: r = {format_rational(small)}, R = {format_rational(large)}"
        f" (ratio r/R = {_fmt(small / large)})"
    )
    print(f"p (marginal accuracy): {_fmt(summary.p)}")
    print(f"sigma^2 (prior variance): {_fmt(summary.sigma2)}")
    print(f"prior P(box full): {_fmt(summary.prior_box_full)}")
    print(f"threshold sigma^2/(p(1-p)): {_fmt(summary.threshold)}")
    print(
        "posterior P(full | one-box): "
        f"{_fmt(posterior_box_full(scenario, Decision.ONE_BOX))}"
    )
    print(
        "posterior P(full | two-box): "
        f"{_fmt(posterior_box_full(scenario, Decision.TWO_BOX))}"
    )
    print(
        f"E[reward | one-box]: {_fmt(expected_reward(scenario, Decision.ONE_BOX))}"
    )
    print(
        f"E[reward | two-box]: {_fmt(expected_reward(scenario, Decision.TWO_BOX))}"
    )
    print(f"preference: {preferred_decision(scenario).label.value}")
    for omega, _ in scenario.prediction.support:
        print(
            f"authority: P(one-box | omega = {format_rational(omega)}) = "
            f"{_fmt(authority_check(scenario, omega))}"
        )

    if loaded.refinement is not None:
        rm = loaded.refinement
        coarse = coarsen(rm)
        parts = variance_decomposition(rm)
        print(f"partition: {len(rm.blocks)} block(s)")
        print(f"coarse support points: {len(coarse.support)}")
        for omega, q in coarse.support:
            print(
                f"  coarse omega {format_rational(omega)} "
                f"with weight {format_rational(q)}"
            )
        print(
            f"variance split: fine {_fmt(parts.fine_variance)} = "
            f"coarse {_fmt(parts.coarse_variance)} + "
            f"within-block {_fmt(parts.expected_conditional_variance)}"
        )

    if args.delta is not None:
        delta = parse_rational(args.delta, what="--delta")
        report = check_delta_omniscience(scenario.prediction, delta)
        verdict = "yes" if report.is_omniscient else "no"
        print(f"delta-omniscient at delta = {format_rational(delta)}: {verdict}")
        print(
            f"variance lower bound when omniscient: "
            f"{_fmt(report.variance_lower_bound)}; "
            f"actual variance: {_fmt(report.actual_variance)}"
        )

    if args.emit is not None:
        save_scenario(args.emit, scenario, loaded.refinement)
        print(f"wrote canonical scenario to {args.emit}")
    return EXIT_OK


def _sweep_rows(ps, spreads, ratios):
    for p in ps:
        if not 0 < p < 1:
            raise InvalidScenarioError(
                f"p = {format_rational(p)}: must lie strictly between 0 and 1"
            )
    for a in spreads:
        if a < 0:
            raise InvalidScenarioError(
                f"spread = {format_rational(a)}: must not be negative"
            )
    for ratio in ratios:
        if ratio <= 0:
            raise InvalidScenarioError(
                f"ratio = {format_rational(ratio)}: must be positive"
            )
    for p in ps:
        for a in spreads:
            if a > min(p, 1 - p):
                raise InvalidScenarioError(
                    f"spread {format_rational(a)} too wide for "
                    f"p = {format_rational(p)}: omega would leave [0, 1]"
                )
            model = PredictionModel.from_weights(
                ((p - a, Fraction(1)), (p + a, Fraction(1)))
            )
            sigma2 = model.variance
            threshold = sigma2 / (p * (1 - p))
            for ratio in ratios:
                scenario = NewcombScenario(
                    prediction=model,
                    small_reward=ratio,
                    large_reward=Fraction(1),
                )
                pref = preferred_decision(scenario)
                yield (
                    format_rational(p),
                    format_rational(a),
                    format_rational(sigma2),
                    format_rational(threshold),
                    format_rational(ratio),
                    pref.label.value,
                    format_rational(pref.expected_onebox),
                    format_rational(pref.expected_twobox),
                )


def _cmd_sweep(args) -> int:
    ps = _parse_rational_list(args.p, "--p")
    spreads = _parse_rational_list(args.spread, "--spread")
    ratios = _parse_rational_list(args.ratio, "--ratio")
    rows = list(_sweep_rows(ps, spreads, ratios))
    if args.output is None:
        writer = csv.writer(sys.stdout)
        writer.writerow(SWEEP_COLUMNS)
        writer.writerows(rows)
    else:
        with open(args.output, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(SWEEP_COLUMNS)
            writer.writerows(rows)
        print(f"wrote {len(rows)} row(s) to {args.output}")
    return EXIT_OK


def _cmd_impossibility(args) -> int:
    beliefs = _parse_rational_list(args.beliefs, "--beliefs")
    game = build_adversarial_game(beliefs)
    n = game.n
    print(f"boxes: {n}")
    print("beliefs: " + ", ".join(format_rational(pi) for pi in game.beliefs))
    target = game.target_index
    print(
        f"adversarial target: box {target + 1} "
        f"(belief {format_rational(game.beliefs[target])} <= 1/{n})"
    )
    print("rewards: " + ", ".join(format_rational(x) for x in game.rewards))
    best = optimal_choice(game)
    print(
        f"counterfactually optimal choice: box {best + 1} "
        f"(payout {format_rational(choice_payout(game, best))})"
    )
    bad = bad_decision_probability(game)
    print(
        f"P(subject picks a worthless box): {_fmt(bad)}; "
        f"lower bound 1 - 1/{n} = {_fmt(1 - Fraction(1, n))}"
    )
    return EXIT_OK


def _cmd_simulate(args) -> int:
    loaded = load_scenario(args.scenario)
    scenario = loaded.scenario
    report = montecarlo.simulate(
        scenario,
        samples=args.samples,
        seed=args.seed,
        chunk_size=args.chunk_size,
        kernel=args.kernel,
    )
    print(
        f"samples: {report.samples}  seed: {report.seed}  "
        f"chunk size: {report.chunk_size}"
    )
    print(f"rng: {report.rng_algorithm}")
    cells = report.cell_counts
    print(
        "counts: "
        f"two-box/empty {cells[0][0]}, two-box/full {cells[0][1]}, "
        f"one-box/empty {cells[1][0]}, one-box/full {cells[1][1]}"
    )
    if not scenario.prediction.is_imperfect:
        print("exact comparison unavailable: prior mean is 0 or 1")
        return EXIT_OK
    rows = montecarlo.compare_to_exact(
        report, scenario, flag_threshold=args.flag_threshold
    )
    header = (
        f"{'quantity':<24} {'exact':>18} {'estimate':>14} "
        f"{'stderr':>12} {'dev(SE)':>9} flag"
    )
    print(header)
    for row in rows:
        if row.estimate is None:
            print(
                f"{row.quantity:<24} {format_rational(row.exact):>18} "
                f"{'unavailable':>14} {'-':>12} {'-':>9}"
            )
            continue
        mark = " <--" if row.flagged else ""
        print(
            f"{row.quantity:<24} {format_rational(row.exact):>18} "
            f"{row.estimate:>14.8g} {row.stderr:>12.4g} "
            f"{row.deviation_ses:>9.3g}{mark}"
        )
    flagged = [row.quantity for row in rows if row.flagged]
    if flagged:
        print(
            f"FLAGGED: {', '.join(flagged)} deviate by more than "
            f"{args.flag_threshold} standard error(s)"
        )
        return EXIT_VERIFY
    return EXIT_OK


def _cmd_verify(args) -> int:
    results = verify.run_all(seed=args.seed, models=args.models, echo=print)
    passed = sum(1 for r in results if r.ok)
    print(f"{passed}/{len(results)} checks passed")
    return EXIT_OK if verify.all_ok(results) else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="newcomb",
        description=(
            "Exact analysis and simulation of prediction games with a "
            "coin-flipping predictor."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    analyze = sub.add_parser(
        "analyze", help="exact summary of a scenario file"
    )
    analyze.add_argument("--scenario", required=True, help="scenario JSON file")
    analyze.add_argument(
        "--delta",
        help="also test delta-omniscience at this rational delta",
    )
    analyze.add_argument(
        "--emit", help="write the canonical form of the scenario to this path"
    )
    analyze.set_defaults(func=_cmd_analyze)

    sweep = sub.add_parser(
        "sweep",
        help="preference table over a grid of two-point priors",
        description=(
            "Grid over symmetric two-point priors {p - spread, p + spread} "
            "with equal weights, rewards normalized to R = 1, r = ratio. "
            "Writes CSV with exact rational cells."
        ),
    )
    sweep.add_argument("--p", required=True, help="comma-separated prior means")
    sweep.add_argument(
        "--spread", required=True, help="comma-separated half-widths"
    )
    sweep.add_argument(
        "--ratio", required=True, help="comma-separated reward ratios r/R"
    )
    sweep.add_argument("--output", help="CSV path (default: stdout)")
    sweep.set_defaults(func=_cmd_sweep)

    imposs = sub.add_parser(
        "impossibility",
        help="adversarial n-box game against a belief vector",
    )
    imposs.add_argument(
        "--beliefs", required=True, help="comma-separated rational beliefs"
    )
    imposs.set_defaults(func=_cmd_impossibility)

    simulate = sub.add_parser(
        "simulate", help="Monte Carlo run checked against exact values"
    )
    simulate.add_argument("--scenario", required=True, help="scenario JSON file")
    simulate.add_argument("--samples", required=True, type=int)
    simulate.add_argument("--seed", required=True, type=int)
    simulate.add_argument(
        "--chunk-size", type=int, default=montecarlo.DEFAULT_CHUNK_SIZE
    )
    simulate.add_argument(
        "--kernel",
        choices=("auto", "numba", "numpy"),
        help="counting kernel (default: NEWCOMB_KERNEL or auto)",
    )
    simulate.add_argument(
        "--flag-threshold",
        type=float,
        default=4.0,
        help="flag estimates deviating by more than this many SEs",
    )
    simulate.set_defaults(func=_cmd_simulate)

    verify_cmd = sub.add_parser(
        "verify", help="run the self-verification battery"
    )
    verify_cmd.add_argument("--seed", type=int, default=0)
    verify_cmd.add_argument(
        "--models",
        type=int,
        default=200,
        help="random instances per property check",
    )
    verify_cmd.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits on --help (0) and usage errors (1 via _Parser)
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except NewcombError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except BrokenPipeError:
        # point stdout at devnull so the interpreter's exit-time flush
        # does not raise a second time
        try:
            os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        except (OSError, ValueError):
            pass
        return EXIT_PIPE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


def entrypoint() -> None:
    raise SystemExit(main())
