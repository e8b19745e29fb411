from fractions import Fraction

import pytest
from hypothesis import given

import oracle
from newcomb import (
    NBoxGame,
    bad_decision_probability,
    build_adversarial_game,
    choice_payout,
    optimal_choice,
)
from newcomb.errors import (
    InvalidModelError,
    NotADistributionError,
    PerfectKnowledgeError,
)
from strategies import belief_vectors

F = Fraction


class TestBuild:
    def test_first_small_enough_belief_is_targeted(self):
        game = build_adversarial_game((F(1, 2), F(3, 10), F(1, 5)))
        assert game.target_index == 1
        assert game.rewards == (F(0), F(1), F(0))
        assert bad_decision_probability(game) == F(7, 10)

    def test_uniform_beliefs_target_the_first_box(self):
        game = build_adversarial_game(tuple(F(1, 4) for _ in range(4)))
        assert game.target_index == 0
        assert bad_decision_probability(game) == F(3, 4)

    def test_target_can_be_the_last_box(self):
        game = build_adversarial_game((F(2, 5), F(7, 20), F(1, 4)))
        assert game.target_index == 2
        assert bad_decision_probability(game) == F(3, 4)

    def test_sum_must_be_exactly_one(self):
        with pytest.raises(NotADistributionError):
            build_adversarial_game((F(1, 2), F(1, 3)))

    def test_negative_entries_rejected_before_certainty_check(self):
        with pytest.raises(NotADistributionError):
            build_adversarial_game((F(3, 2), F(-1, 2)))

    def test_certainty_rejected(self):
        with pytest.raises(PerfectKnowledgeError):
            build_adversarial_game((F(0), F(1, 2), F(1, 2)))
        with pytest.raises(PerfectKnowledgeError):
            build_adversarial_game((F(1), F(0)))

    def test_needs_at_least_two_boxes(self):
        with pytest.raises(InvalidModelError):
            build_adversarial_game((F(1),))

    def test_floats_rejected(self):
        with pytest.raises(InvalidModelError):
            build_adversarial_game((0.5, 0.5))


class TestGameObject:
    def test_direct_construction_validates(self):
        beliefs = (F(1, 2), F(1, 2))
        with pytest.raises(InvalidModelError):
            NBoxGame(beliefs=beliefs, target_index=5, rewards=(F(1), F(0)))
        with pytest.raises(InvalidModelError):
            NBoxGame(beliefs=beliefs, target_index=0, rewards=(F(1),))
        with pytest.raises(InvalidModelError):
            NBoxGame(beliefs=beliefs, target_index=0, rewards=(F(1), F(-1)))

    def test_payout_is_the_reward_of_the_chosen_box(self):
        game = build_adversarial_game((F(1, 2), F(3, 10), F(1, 5)))
        assert choice_payout(game, 1) == 1
        assert choice_payout(game, 0) == 0
        with pytest.raises(InvalidModelError):
            choice_payout(game, 3)

    def test_optimal_choice_requires_a_unique_best(self):
        game = build_adversarial_game((F(1, 2), F(3, 10), F(1, 5)))
        assert optimal_choice(game) == 1
        flat = NBoxGame(
            beliefs=(F(1, 2), F(1, 2)),
            target_index=0,
            rewards=(F(1), F(1)),
        )
        with pytest.raises(InvalidModelError):
            optimal_choice(flat)


class TestPigeonhole:
    @given(belief_vectors())
    def test_target_exists_is_minimal_and_bounds_hold(self, beliefs):
        """Some box gets at most 1/n, and picking anything else is likely."""
        n = len(beliefs)
        game = build_adversarial_game(beliefs)
        target = game.target_index
        assert target == oracle.adversarial_target(beliefs)
        assert beliefs[target] <= F(1, n)
        assert all(pi > F(1, n) for pi in beliefs[:target])
        bad = bad_decision_probability(game)
        assert bad == 1 - beliefs[target]
        assert bad >= 1 - F(1, n)

    @given(belief_vectors())
    def test_seeing_the_rewards_would_make_the_choice_trivial(self, beliefs):
        """The optimal pick is the target, yet the subject rarely takes it."""
        game = build_adversarial_game(beliefs)
        best = optimal_choice(game)
        assert best == game.target_index
        assert choice_payout(game, best) == 1
        others = [i for i in range(game.n) if i != best]
        assert all(choice_payout(game, i) == 0 for i in others)
