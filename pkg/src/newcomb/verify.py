"""Self-verification battery.

Each check recomputes facts the engine promises by an independent route
and compares exactly: closed forms against conditioning of the
enumerated joint, decompositions against their parts, threshold
comparisons against expectation comparisons, simulated frequencies
against exact probabilities. Engine calls go through module attributes
(core.posterior_box_full, not a from-import), so replacing a function
with a broken one really is caught.

The random generators in this module are also what the test suite uses
to produce arbitrary valid models.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import core, impossibility, montecarlo, refinement
from .core import Decision, NewcombScenario, PredictionModel, PreferenceLabel
from .refinement import RefinementModel


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def random_prediction_model(
    rng: random.Random,
    max_support: int = 6,
    max_denominator: int = 16,
    require_imperfect: bool = True,
) -> PredictionModel:
    """A valid random prior: distinct omegas in [0, 1], weights sum to 1."""
    while True:
        k = rng.randint(1, max_support)
        omegas: set[Fraction] = set()
        while len(omegas) < k:
            den = rng.randint(1, max_denominator)
            omegas.add(Fraction(rng.randint(0, den), den))
        pairs = [(omega, Fraction(rng.randint(1, 20))) for omega in sorted(omegas)]
        model = PredictionModel.from_weights(pairs)
        if not require_imperfect or model.is_imperfect:
            return model


def random_scenario(
    rng: random.Random, require_imperfect: bool = True
) -> NewcombScenario:
    model = random_prediction_model(rng, require_imperfect=require_imperfect)
    return NewcombScenario(
        prediction=model,
        small_reward=Fraction(rng.randint(1, 1000), rng.randint(1, 10)),
        large_reward=Fraction(rng.randint(1, 1000), rng.randint(1, 10)),
    )


def random_refinement(
    rng: random.Random, max_support: int = 8, max_denominator: int = 16
) -> RefinementModel:
    model = random_prediction_model(
        rng,
        max_support=max_support,
        max_denominator=max_denominator,
        require_imperfect=False,
    )
    n = len(model.support)
    order = list(range(n))
    rng.shuffle(order)
    n_blocks = rng.randint(1, n)
    cuts = sorted(rng.sample(range(1, n), n_blocks - 1)) if n_blocks > 1 else []
    blocks = []
    prev = 0
    for cut in cuts + [n]:
        blocks.append(tuple(order[prev:cut]))
        prev = cut
    return RefinementModel(fine=model, blocks=tuple(blocks))


def random_beliefs(
    rng: random.Random, n: int | None = None, max_boxes: int = 10
) -> tuple[Fraction, ...]:
    """A belief vector over n boxes: entries in (0, 1) summing to 1."""
    if n is None:
        n = rng.randint(2, max_boxes)
    raw = [rng.randint(1, 30) for _ in range(n)]
    total = sum(raw)
    return tuple(Fraction(x, total) for x in raw)


def builtin_scenarios() -> dict[str, NewcombScenario]:
    """Small scenarios with hand-checkable exact values."""
    half = Fraction(1, 2)
    return {
        "symmetric-tenths": NewcombScenario(
            prediction=PredictionModel(
                ((Fraction(1, 10), half), (Fraction(9, 10), half))
            ),
            small_reward=Fraction(1000),
            large_reward=Fraction(1000000),
        ),
        "point-half": NewcombScenario(
            prediction=PredictionModel(((half, Fraction(1)),)),
            small_reward=Fraction(1000),
            large_reward=Fraction(1000000),
        ),
        "quarters-tie": NewcombScenario(
            prediction=PredictionModel(
                ((Fraction(1, 4), half), (Fraction(3, 4), half))
            ),
            small_reward=Fraction(1),
            large_reward=Fraction(4),
        ),
    }


def _check_worked_examples() -> str:
    scenarios = builtin_scenarios()
    half = Fraction(1, 2)

    sym = scenarios["symmetric-tenths"]
    summary = core.scenario_summary(sym)
    assert summary.p == half, summary
    assert summary.sigma2 == Fraction(4, 25), summary
    assert summary.prior_box_full == half, summary
    assert summary.threshold == Fraction(16, 25), summary
    assert core.posterior_box_full(sym, Decision.ONE_BOX) == Fraction(41, 50)
    assert core.posterior_box_full(sym, Decision.TWO_BOX) == Fraction(9, 50)
    assert core.expected_reward(sym, Decision.ONE_BOX) == 820000
    assert core.expected_reward(sym, Decision.TWO_BOX) == 181000
    assert core.preferred_decision(sym).label is PreferenceLabel.ONE_BOX
    assert core.authority_check(sym, Fraction(1, 10)) == Fraction(1, 10)
    assert core.authority_check(sym, Fraction(9, 10)) == Fraction(9, 10)
    joint = core.build_joint(sym)
    atom = core.JointAtom(0, Decision.ONE_BOX, True)
    assert joint.weight(atom) == Fraction(1, 200), joint.weight(atom)

    point = scenarios["point-half"]
    assert core.posterior_box_full(point, Decision.ONE_BOX) == half
    assert core.posterior_box_full(point, Decision.TWO_BOX) == half
    assert core.expected_reward(point, Decision.ONE_BOX) == 500000
    assert core.expected_reward(point, Decision.TWO_BOX) == 501000
    assert core.preferred_decision(point).label is PreferenceLabel.TWO_BOX

    tie = scenarios["quarters-tie"]
    pref = core.preferred_decision(tie)
    assert pref.label is PreferenceLabel.INDIFFERENT
    assert pref.expected_onebox == Fraction(5, 2) == pref.expected_twobox

    quarter = Fraction(1, 4)
    fine = PredictionModel(
        (
            (Fraction(1, 10), quarter),
            (Fraction(3, 10), quarter),
            (Fraction(7, 10), quarter),
            (Fraction(9, 10), quarter),
        )
    )
    rm = RefinementModel(fine=fine, blocks=((0, 1), (2, 3)))
    coarse = refinement.coarsen(rm)
    assert coarse.support == ((Fraction(1, 5), half), (Fraction(4, 5), half))
    parts = refinement.variance_decomposition(rm)
    assert parts.fine_variance == Fraction(1, 10), parts
    assert parts.coarse_variance == Fraction(9, 100), parts
    assert parts.expected_conditional_variance == Fraction(1, 100), parts

    skewed = PredictionModel(
        ((Fraction(1, 100), half), (Fraction(99, 100), half))
    )
    report = refinement.check_delta_omniscience(skewed, Fraction(1, 100))
    assert report.is_omniscient
    assert report.variance_lower_bound == Fraction(230249, 1000000), report
    assert report.actual_variance == Fraction(2401, 10000), report
    report = refinement.check_delta_omniscience(skewed, Fraction(1, 200))
    assert not report.is_omniscient

    game = impossibility.build_adversarial_game(
        (half, Fraction(3, 10), Fraction(1, 5))
    )
    assert game.target_index == 1
    assert impossibility.bad_decision_probability(game) == Fraction(7, 10)
    uniform = impossibility.build_adversarial_game(
        tuple(Fraction(1, 4) for _ in range(4))
    )
    assert uniform.target_index == 0
    assert impossibility.bad_decision_probability(uniform) == Fraction(3, 4)
    return "all built-in example values reproduced"


def _check_distribution_laws(rng: random.Random, trials: int) -> str:
    for _ in range(trials):
        scenario = random_scenario(rng, require_imperfect=False)
        joint = core.build_joint(scenario)
        total = sum((w for _, w in joint.atoms), Fraction(0))
        assert total == 1, f"joint mass {total}"
        assert all(w > 0 for _, w in joint.atoms), "zero atom survived pruning"
        p = scenario.prediction.p
        marginal = joint.map(lambda a: a.decision)
        assert marginal.weight(Decision.ONE_BOX) == p
        assert joint.prob(lambda a: a.box_full) == p
        if 0 < p < 1:
            given_one = joint.condition(
                lambda a: a.decision is Decision.ONE_BOX
            )
            if given_one.prob(lambda a: a.box_full) > 0:
                chained = given_one.condition(lambda a: a.box_full)
                direct = joint.condition(
                    lambda a: a.decision is Decision.ONE_BOX and a.box_full
                )
                assert chained == direct, "conditioning chain broke"
    return f"{trials} random joints: unit mass, marginals, conditioning chain"


def _check_posterior_routes(rng: random.Random, trials: int) -> str:
    for _ in range(trials):
        scenario = random_scenario(rng)
        model = scenario.prediction
        for decision in Decision:
            closed = core.posterior_box_full(scenario, decision)
            routed = core.posterior_box_full_via_joint(scenario, decision)
            assert closed == routed, (closed, routed, model.support)
            assert 0 <= closed <= 1
        up = core.posterior_box_full(scenario, Decision.ONE_BOX)
        down = core.posterior_box_full(scenario, Decision.TWO_BOX)
        if model.variance > 0:
            assert down < model.p < up
        else:
            assert down == model.p == up
    return f"{trials} models: closed-form posteriors equal joint conditioning"


def _check_expected_rewards(rng: random.Random, trials: int) -> str:
    for _ in range(trials):
        scenario = random_scenario(rng)
        for decision in Decision:
            closed = core.expected_reward(scenario, decision)
            routed = core.expected_reward_via_joint(scenario, decision)
            assert closed == routed, (closed, routed)
    return f"{trials} models: closed-form expectations equal joint means"


def _check_preference_threshold(rng: random.Random, trials: int) -> str:
    ratios = [
        Fraction(1, 1000),
        Fraction(1, 10),
        Fraction(1, 2),
        Fraction(2),
        Fraction(17, 3),
    ]
    ties = 0
    for _ in range(trials):
        model = random_prediction_model(rng)
        threshold = model.variance / (model.p * (1 - model.p))
        todo = list(ratios)
        if threshold > 0:
            todo.append(threshold)
            ties += 1
        for ratio in todo:
            scenario = NewcombScenario(
                prediction=model, small_reward=ratio, large_reward=Fraction(1)
            )
            pref = core.preferred_decision(scenario)
            if ratio < threshold:
                expect = PreferenceLabel.ONE_BOX
            elif ratio == threshold:
                expect = PreferenceLabel.INDIFFERENT
            else:
                expect = PreferenceLabel.TWO_BOX
            assert pref.label is expect, (model.support, ratio, pref)
            scale = Fraction(rng.randint(1, 50), rng.randint(1, 7))
            scaled = NewcombScenario(
                prediction=model,
                small_reward=ratio * scale,
                large_reward=scale,
            )
            assert core.preferred_decision(scaled).label is pref.label
    return (
        f"{trials} models x {len(ratios)}+ ratios: preference matches the "
        f"variance threshold ({ties} exact ties included)"
    )


def _check_authority(rng: random.Random, trials: int) -> str:
    points = 0
    for _ in range(trials):
        scenario = random_scenario(rng, require_imperfect=False)
        for omega, _ in scenario.prediction.support:
            assert core.authority_check(scenario, omega) == omega
            points += 1
    return f"{points} support points: P(one-box | omega) = omega exactly"


def _check_refinement(rng: random.Random, trials: int) -> str:
    for _ in range(trials):
        rm = random_refinement(rng)
        fine = rm.fine
        coarse = refinement.coarsen(rm)
        assert coarse.p == fine.p, "coarsening moved the mean"
        parts = refinement.variance_decomposition(rm)
        assert (
            parts.fine_variance
            == parts.coarse_variance + parts.expected_conditional_variance
        ), parts
        assert parts.coarse_variance <= parts.fine_variance
        assert parts.expected_conditional_variance >= 0
        singletons = RefinementModel(
            fine=fine, blocks=tuple((i,) for i in range(len(fine.support)))
        )
        assert refinement.coarsen(singletons) == fine
        lumped = RefinementModel(
            fine=fine, blocks=(tuple(range(len(fine.support))),)
        )
        assert refinement.coarsen(lumped).variance == 0
    return f"{trials} refinements: mean kept, variances decompose exactly"


def _check_omniscience(rng: random.Random, trials: int) -> str:
    half = Fraction(1, 2)
    for _ in range(trials):
        model = random_prediction_model(rng)
        limit = min(model.p, 1 - model.p)
        delta = limit * Fraction(rng.randint(0, 15), 16)
        report = refinement.check_delta_omniscience(model, delta)
        p = model.p
        assert report.variance_lower_bound >= p * (1 - p) - 3 * delta
        if report.is_omniscient:
            assert report.actual_variance >= report.variance_lower_bound

        delta2 = Fraction(rng.randint(1, 499), 1000)
        pair = PredictionModel(((delta2, half), (1 - delta2, half)))
        report2 = refinement.check_delta_omniscience(pair, delta2)
        assert report2.is_omniscient
        assert report2.actual_variance == (half - delta2) ** 2
        assert report2.actual_variance >= report2.variance_lower_bound

    ratio = Fraction(1, 1000)
    for k in range(2, 11):
        delta = Fraction(1, 2**k)
        pair = PredictionModel(((delta, half), (1 - delta, half)))
        scenario = NewcombScenario(
            prediction=pair, small_reward=ratio, large_reward=Fraction(1)
        )
        pref = core.preferred_decision(scenario)
        assert pref.label is PreferenceLabel.ONE_BOX, (delta, pref)
    blunt = Fraction(2499, 5000)
    pair = PredictionModel(((blunt, half), (1 - blunt, half)))
    scenario = NewcombScenario(
        prediction=pair, small_reward=ratio, large_reward=Fraction(1)
    )
    assert core.preferred_decision(scenario).label is PreferenceLabel.TWO_BOX
    return (
        f"{trials} models: bound >= p(1-p) - 3*delta; sharp two-point "
        "priors force one-boxing at ratio 1/1000"
    )


def _check_impossibility(rng: random.Random, trials: int) -> str:
    for _ in range(trials):
        beliefs = random_beliefs(rng)
        n = len(beliefs)
        game = impossibility.build_adversarial_game(beliefs)
        bound = Fraction(1, n)
        target = game.target_index
        assert beliefs[target] <= bound
        assert all(pi > bound for pi in beliefs[:target]), "target not minimal"
        assert game.rewards[target] == 1
        assert sum(game.rewards) == 1
        assert impossibility.optimal_choice(game) == target
        assert impossibility.choice_payout(game, target) == 1
        bad = impossibility.bad_decision_probability(game)
        assert bad == 1 - beliefs[target]
        assert bad >= 1 - bound
    for n in range(2, 11):
        uniform = tuple(Fraction(1, n) for _ in range(n))
        game = impossibility.build_adversarial_game(uniform)
        assert game.target_index == 0
        assert impossibility.bad_decision_probability(game) == 1 - Fraction(1, n)
    return f"{trials} belief vectors: pigeonhole target, bad-pick bound"


def _check_simulation() -> str:
    scenario = builtin_scenarios()["symmetric-tenths"]
    report = montecarlo.simulate(scenario, samples=200_000, seed=2024)
    again = montecarlo.simulate(scenario, samples=200_000, seed=2024)
    assert report == again, "identical runs disagreed"
    rows = montecarlo.compare_to_exact(report, scenario)
    flagged = [row.quantity for row in rows if row.flagged]
    assert not flagged, f"estimates off by >4 standard errors: {flagged}"
    freqs = montecarlo.empirical_authority(report)
    for (omega, _), freq in zip(scenario.prediction.support, freqs):
        assert freq is not None and abs(freq - float(omega)) < 0.02
    return "200k-sample run reproducible and within 4 SEs of exact values"


def run_all(
    seed: int = 0,
    models: int = 200,
    echo: Callable[[str], None] | None = None,
) -> list[CheckResult]:
    """Run every check; never raises. Pass echo=print for live output."""
    master = random.Random(seed)

    def child() -> random.Random:
        return random.Random(master.randrange(2**32))

    checks: list[tuple[str, Callable[[], str]]] = [
        ("worked-examples", _check_worked_examples),
        ("distribution-laws", lambda r=child(): _check_distribution_laws(r, models)),
        ("posterior-routes", lambda r=child(): _check_posterior_routes(r, models)),
        ("expected-rewards", lambda r=child(): _check_expected_rewards(r, models)),
        (
            "preference-threshold",
            lambda r=child(): _check_preference_threshold(r, models),
        ),
        ("authority", lambda r=child(): _check_authority(r, max(1, models // 2))),
        ("refinement", lambda r=child(): _check_refinement(r, models)),
        ("omniscience", lambda r=child(): _check_omniscience(r, models)),
        (
            "impossibility",
            lambda r=child(): _check_impossibility(r, max(10, models * 2)),
        ),
        ("simulation", _check_simulation),
    ]
    results = []
    for name, fn in checks:
        try:
            detail = fn()
            result = CheckResult(name=name, ok=True, detail=detail)
        except Exception as exc:
            result = CheckResult(
                name=name, ok=False, detail=f"{type(exc).__name__}: {exc}"
            )
        results.append(result)
        if echo is not None:
            mark = "ok  " if result.ok else "FAIL"
            echo(f"{mark} {result.name}: {result.detail}")
    return results


def all_ok(results: list[CheckResult]) -> bool:
    return all(r.ok for r in results)
