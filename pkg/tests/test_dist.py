from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from newcomb.dist import FiniteDist
from newcomb.errors import (
    EmptyDistributionError,
    InvalidModelError,
    NegativeWeightError,
    ZeroProbabilityEventError,
    ZeroTotalWeightError,
)

F = Fraction

raw_weightings = st.lists(
    st.tuples(
        st.sampled_from("abcde"),
        st.fractions(min_value=0, max_value=10, max_denominator=20),
    ),
    min_size=1,
    max_size=12,
).filter(lambda pairs: sum(w for _, w in pairs) > 0)


class TestConstruction:
    def test_normalizes(self):
        d = FiniteDist.from_weights([("a", F(2)), ("b", F(6))])
        assert d.weight("a") == F(1, 4)
        assert d.weight("b") == F(3, 4)

    def test_merges_duplicates_and_drops_zeros(self):
        d = FiniteDist.from_weights(
            [("a", F(1)), ("b", F(0)), ("a", F(1)), ("c", F(2))]
        )
        assert d.support == ("a", "c")
        assert d.weight("a") == F(1, 2)
        assert d.weight("b") == 0

    def test_empty_input(self):
        with pytest.raises(EmptyDistributionError):
            FiniteDist.from_weights([])

    def test_negative_weight(self):
        with pytest.raises(NegativeWeightError):
            FiniteDist.from_weights([("a", F(-1)), ("b", F(2))])

    def test_zero_total(self):
        with pytest.raises(ZeroTotalWeightError):
            FiniteDist.from_weights([("a", F(0)), ("b", F(0))])

    def test_direct_construction_checks_mass(self):
        with pytest.raises(ZeroTotalWeightError):
            FiniteDist(atoms=(("a", F(1, 2)),))

    def test_direct_construction_rejects_duplicates(self):
        with pytest.raises(InvalidModelError):
            FiniteDist(atoms=(("a", F(1, 2)), ("a", F(1, 2))))

    def test_direct_construction_rejects_nonpositive_atoms(self):
        with pytest.raises(NegativeWeightError):
            FiniteDist(atoms=(("a", F(0)), ("b", F(1))))


class TestEquality:
    def test_order_insensitive(self):
        d1 = FiniteDist.from_weights([("a", F(1)), ("b", F(3))])
        d2 = FiniteDist.from_weights([("b", F(3)), ("a", F(1))])
        assert d1 == d2
        assert hash(d1) == hash(d2)

    def test_merge_insensitive(self):
        d1 = FiniteDist.from_weights([("a", F(1)), ("a", F(1))])
        d2 = FiniteDist.from_weights([("a", F(7))])
        assert d1 == d2

    def test_different_masses_differ(self):
        d1 = FiniteDist.from_weights([("a", F(1)), ("b", F(1))])
        d2 = FiniteDist.from_weights([("a", F(1)), ("b", F(3))])
        assert d1 != d2


class TestQueries:
    def test_prob_sums_matching_atoms(self):
        d = FiniteDist.from_weights([("a", F(1)), ("b", F(2)), ("c", F(1))])
        assert d.prob(lambda x: x in "ab") == F(3, 4)
        assert d.prob(lambda x: False) == 0
        assert d.prob(lambda x: True) == 1

    def test_mean_and_moments(self):
        d = FiniteDist.from_weights([(0, F(1)), (2, F(1))])
        mean, var = d.moments(lambda x: x)
        assert mean == 1
        assert var == 1
        assert d.mean(lambda x: 3 * x) == 3

    def test_map_merges_images(self):
        d = FiniteDist.from_weights([(-1, F(1)), (1, F(1)), (2, F(2))])
        squared = d.map(lambda x: x * x)
        assert squared.weight(1) == F(1, 2)
        assert squared.weight(4) == F(1, 2)


class TestConditioning:
    def test_reweights_exactly(self):
        d = FiniteDist.from_weights([("a", F(1)), ("b", F(2)), ("c", F(1))])
        given_ab = d.condition(lambda x: x in "ab")
        assert given_ab.weight("a") == F(1, 3)
        assert given_ab.weight("b") == F(2, 3)
        assert given_ab.weight("c") == 0

    def test_zero_probability_event_is_refused(self):
        d = FiniteDist.from_weights([("a", F(1))])
        with pytest.raises(ZeroProbabilityEventError):
            d.condition(lambda x: x == "z")

    @given(raw_weightings)
    def test_total_mass_is_one(self, pairs):
        """Normalization always lands on exactly 1, never approximately."""
        d = FiniteDist.from_weights(pairs)
        assert sum((w for _, w in d.atoms), F(0)) == 1

    @given(raw_weightings)
    def test_chained_conditioning_matches_conjunction(self, pairs):
        """condition(E) then condition(F) equals condition(E and F)."""
        d = FiniteDist.from_weights(pairs)
        in_e = lambda x: x in "abc"
        in_f = lambda x: x in "bcd"
        if d.prob(in_e) == 0:
            return
        step = d.condition(in_e)
        if step.prob(in_f) == 0:
            return
        chained = step.condition(in_f)
        direct = d.condition(lambda x: in_e(x) and in_f(x))
        assert chained == direct

    @given(raw_weightings)
    def test_conditioning_preserves_weight_ratios(self, pairs):
        """Surviving outcomes keep their relative odds."""
        d = FiniteDist.from_weights(pairs)
        in_e = lambda x: x in "abc"
        mass = d.prob(in_e)
        if mass == 0:
            return
        conditioned = d.condition(in_e)
        for outcome in d.support:
            if in_e(outcome):
                assert conditioned.weight(outcome) == d.weight(outcome) / mass
