import random
from fractions import Fraction

from newcomb import all_ok, run_all
from newcomb import core, impossibility
from newcomb.verify import (
    builtin_scenarios,
    random_beliefs,
    random_prediction_model,
    random_refinement,
)

F = Fraction


class TestBattery:
    def test_everything_passes(self):
        results = run_all(models=60)
        failed = [r for r in results if not r.ok]
        assert all_ok(results), failed
        assert len(results) == 10

    def test_deterministic_given_seed(self):
        assert run_all(seed=5, models=30) == run_all(seed=5, models=30)

    def test_broken_posterior_is_caught(self, monkeypatch):
        honest = core.posterior_box_full

        def skewed(scenario, decision):
            return honest(scenario, decision) + F(1, 1000)

        monkeypatch.setattr(core, "posterior_box_full", skewed)
        results = run_all(models=30)
        assert not all_ok(results)
        bad = {r.name for r in results if not r.ok}
        assert "posterior-routes" in bad or "worked-examples" in bad

    def test_broken_game_builder_is_caught(self, monkeypatch):
        honest = impossibility.build_adversarial_game

        def last_instead_of_first(beliefs):
            game = honest(beliefs)
            n = game.n
            worst = max(
                range(n), key=lambda i: (game.beliefs[i] <= F(1, n), i)
            )
            rewards = tuple(
                F(1) if i == worst else F(0) for i in range(n)
            )
            return impossibility.NBoxGame(
                beliefs=game.beliefs, target_index=worst, rewards=rewards
            )

        monkeypatch.setattr(
            impossibility, "build_adversarial_game", last_instead_of_first
        )
        results = run_all(models=30)
        assert not all_ok(results)

    def test_failures_do_not_raise(self, monkeypatch):
        def broken(*args, **kwargs):
            raise RuntimeError("deliberately broken")

        monkeypatch.setattr(core, "build_joint", broken)
        results = run_all(models=10)
        assert not all_ok(results)
        assert any("deliberately broken" in r.detail for r in results)


class TestGenerators:
    def test_prediction_models_are_valid(self):
        rng = random.Random(0)
        for _ in range(200):
            model = random_prediction_model(rng)
            total = sum((q for _, q in model.support), F(0))
            assert total == 1
            assert all(0 <= omega <= 1 for omega, _ in model.support)
            assert model.is_imperfect
            omegas = [omega for omega, _ in model.support]
            assert omegas == sorted(omegas)
            assert len(set(omegas)) == len(omegas)

    def test_refinements_are_valid(self):
        rng = random.Random(1)
        for _ in range(200):
            rm = random_refinement(rng)
            covered = sorted(i for block in rm.blocks for i in block)
            assert covered == list(range(len(rm.fine.support)))

    def test_beliefs_are_valid(self):
        rng = random.Random(2)
        for _ in range(200):
            beliefs = random_beliefs(rng)
            assert len(beliefs) >= 2
            assert sum(beliefs) == 1
            assert all(0 < pi < 1 for pi in beliefs)


class TestBuiltins:
    def test_scenarios_are_well_formed(self):
        scenarios = builtin_scenarios()
        assert set(scenarios) == {
            "symmetric-tenths",
            "point-half",
            "quarters-tie",
        }
        for scenario in scenarios.values():
            assert scenario.small_reward > 0
            assert scenario.large_reward > 0
