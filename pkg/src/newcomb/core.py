"""Exact analysis of the two-box game with a coin-flipping predictor.

The predictor studies the subject and settles on a bias omega, then
fills the opaque box with probability omega. The subject's own choice to
take only the opaque box is, by the predictor's calibration, a flip of
the same coin, independent of the filling flip given omega. The subject
holds a finite prior over omega; everything downstream (posteriors,
counterfactual expectations, the preference threshold) is computed in
exact rational arithmetic from that prior.

Closed forms and joint-distribution conditioning are both provided so
each can be checked against the other; neither is derived from the
other at runtime.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, NamedTuple

from .dist import FiniteDist
from .errors import (
    InvalidModelError,
    PerfectKnowledgeError,
    UnknownOmegaValueError,
)
from .rational import coerce_fraction


class Decision(Enum):
    """The subject's move: take only the opaque box, or both boxes."""

    ONE_BOX = "onebox"
    TWO_BOX = "twobox"


class PreferenceLabel(Enum):
    ONE_BOX = "onebox"
    TWO_BOX = "twobox"
    INDIFFERENT = "indifferent"


class JointAtom(NamedTuple):
    """One cell of the joint distribution.

    d indexes the prior support (which bias the predictor settled on),
    decision is the subject's move, box_full says whether the opaque box
    holds the large reward.
    """

    d: int
    decision: Decision
    box_full: bool


@dataclass(frozen=True)
class PredictionModel:
    """Finite prior over the predictor's bias omega.

    support holds (omega, weight) pairs with distinct omega in [0, 1],
    strictly positive weights summing to exactly 1. It is stored sorted
    by omega, so equal priors compare equal regardless of input order.
    """

    support: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        cleaned = []
        for entry in self.support:
            try:
                omega, weight = entry
            except (TypeError, ValueError):
                raise InvalidModelError(
                    f"support entry {entry!r} is not an (omega, weight) pair"
                ) from None
            cleaned.append(
                (coerce_fraction(omega, "omega"), coerce_fraction(weight, "weight"))
            )
        if not cleaned:
            raise InvalidModelError("support is empty")
        cleaned.sort(key=lambda pair: pair[0])
        seen = set()
        total = Fraction(0)
        for omega, weight in cleaned:
            if not 0 <= omega <= 1:
                raise InvalidModelError(f"omega {omega} lies outside [0, 1]")
            if omega in seen:
                raise InvalidModelError(
                    f"omega {omega} appears twice; use from_weights to merge"
                )
            seen.add(omega)
            if weight <= 0:
                raise InvalidModelError(
                    f"weight {weight} for omega {omega} must be positive"
                )
            total += weight
        if total != 1:
            raise InvalidModelError(f"weights sum to {total}, not 1")
        object.__setattr__(self, "support", tuple(cleaned))

    @classmethod
    def from_weights(
        cls, pairs: Iterable[tuple[Fraction, Fraction | int]]
    ) -> "PredictionModel":
        """Build from raw nonnegative weights.

        Duplicate omega values merge and weights normalize to total 1.
        """
        dist = FiniteDist.from_weights(
            (coerce_fraction(omega, "omega"), weight) for omega, weight in pairs
        )
        return cls(support=dist.atoms)

    @property
    def omega_dist(self) -> FiniteDist[Fraction]:
        """The prior as a distribution over omega values."""
        return FiniteDist(atoms=self.support)

    @property
    def p(self) -> Fraction:
        """Prior mean of omega: the marginal accuracy of the predictor."""
        return sum((q * omega for omega, q in self.support), Fraction(0))

    @property
    def second_moment(self) -> Fraction:
        return sum((q * omega * omega for omega, q in self.support), Fraction(0))

    @property
    def variance(self) -> Fraction:
        m = self.p
        return self.second_moment - m * m

    @property
    def is_imperfect(self) -> bool:
        """True when 0 < p < 1, so both decisions have positive mass."""
        return 0 < self.p < 1

    def require_imperfect(self) -> None:
        if not self.is_imperfect:
            raise PerfectKnowledgeError(
                f"prior mean is {self.p}; conditioning on one of the two "
                "decisions would condition on a zero-probability event"
            )


@dataclass(frozen=True)
class NewcombScenario:
    """A prior over omega plus the two rewards.

    small_reward sits in the transparent box, large_reward is what the
    predictor may put in the opaque one. Both must be positive.
    """

    prediction: PredictionModel
    small_reward: Fraction
    large_reward: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.prediction, PredictionModel):
            raise InvalidModelError(
                f"prediction must be a PredictionModel, got "
                f"{type(self.prediction).__name__}"
            )
        object.__setattr__(
            self, "small_reward", coerce_fraction(self.small_reward, "small_reward")
        )
        object.__setattr__(
            self, "large_reward", coerce_fraction(self.large_reward, "large_reward")
        )
        if self.small_reward <= 0:
            raise InvalidModelError(
                f"small_reward must be positive, got {self.small_reward}"
            )
        if self.large_reward <= 0:
            raise InvalidModelError(
                f"large_reward must be positive, got {self.large_reward}"
            )


@dataclass(frozen=True)
class ScenarioSummary:
    """Exact headline quantities of a scenario.

    prior_box_full is recomputed from the joint distribution rather than
    copied from p, so their equality is a checkable fact. threshold is
    the reward ratio r/R at which the preference flips.
    """

    p: Fraction
    sigma2: Fraction
    prior_box_full: Fraction
    threshold: Fraction


@dataclass(frozen=True)
class Preference:
    """Outcome of comparing the two counterfactual expectations."""

    label: PreferenceLabel
    expected_onebox: Fraction
    expected_twobox: Fraction


def _joint_of_model(model: PredictionModel) -> FiniteDist[JointAtom]:
    pairs = []
    for d, (omega, q) in enumerate(model.support):
        for decision in Decision:
            p_dec = omega if decision is Decision.ONE_BOX else 1 - omega
            for box_full in (False, True):
                p_box = omega if box_full else 1 - omega
                pairs.append(
                    (JointAtom(d, decision, box_full), q * p_dec * p_box)
                )
    return FiniteDist.from_weights(pairs)


def build_joint(scenario: NewcombScenario) -> FiniteDist[JointAtom]:
    """Joint distribution over (d, decision, box_full).

    Given d, the decision flip and the filling flip are independent,
    each coming up "one-box" / "full" with probability omega_d.
    Zero-weight atoms are pruned.
    """
    return _joint_of_model(scenario.prediction)


def scenario_summary(scenario: NewcombScenario) -> ScenarioSummary:
    """p, sigma squared, the prior fill probability, and the threshold.

    Requires an imperfect prior (0 < p < 1) since the threshold divides
    by p(1 - p).
    """
    model = scenario.prediction
    model.require_imperfect()
    p = model.p
    sigma2 = model.variance
    joint = build_joint(scenario)
    prior_full = joint.prob(lambda a: a.box_full)
    return ScenarioSummary(
        p=p,
        sigma2=sigma2,
        prior_box_full=prior_full,
        threshold=sigma2 / (p * (1 - p)),
    )


def posterior_box_full(scenario: NewcombScenario, decision: Decision) -> Fraction:
    """P(box full | the subject's own decision), in closed form.

    One-boxing raises it to p + sigma2/p, two-boxing lowers it to
    p - sigma2/(1 - p): the subject's choice is evidence about omega.
    """
    model = scenario.prediction
    model.require_imperfect()
    p = model.p
    sigma2 = model.variance
    if decision is Decision.ONE_BOX:
        return p + sigma2 / p
    return p - sigma2 / (1 - p)


def posterior_box_full_via_joint(
    scenario: NewcombScenario, decision: Decision
) -> Fraction:
    """Same posterior, by conditioning the enumerated joint instead."""
    joint = build_joint(scenario)
    given = joint.condition(lambda a: a.decision is decision)
    return given.prob(lambda a: a.box_full)


def _payout(scenario: NewcombScenario, atom: JointAtom) -> Fraction:
    amount = scenario.large_reward if atom.box_full else Fraction(0)
    if atom.decision is Decision.TWO_BOX:
        amount += scenario.small_reward
    return amount


def expected_reward(scenario: NewcombScenario, decision: Decision) -> Fraction:
    """Counterfactual expected payout of the decision, in closed form."""
    full = posterior_box_full(scenario, decision)
    if decision is Decision.ONE_BOX:
        return scenario.large_reward * full
    return scenario.large_reward * full + scenario.small_reward


def expected_reward_via_joint(
    scenario: NewcombScenario, decision: Decision
) -> Fraction:
    """Same expectation, as the mean payout of the conditioned joint."""
    joint = build_joint(scenario)
    given = joint.condition(lambda a: a.decision is decision)
    return given.mean(lambda a: _payout(scenario, a))


def preferred_decision(scenario: NewcombScenario) -> Preference:
    """Compare the two counterfactual expectations exactly.

    Equal expectations yield INDIFFERENT rather than an arbitrary pick.
    """
    one = expected_reward(scenario, Decision.ONE_BOX)
    two = expected_reward(scenario, Decision.TWO_BOX)
    if one > two:
        label = PreferenceLabel.ONE_BOX
    elif two > one:
        label = PreferenceLabel.TWO_BOX
    else:
        label = PreferenceLabel.INDIFFERENT
    return Preference(label=label, expected_onebox=one, expected_twobox=two)


def authority_check(scenario: NewcombScenario, omega_value) -> Fraction:
    """P(one-box | omega = omega_value), from the joint.

    The returned value equals omega_value itself: within a support
    point, the decision frequency is the predictor's coin. Raises
    UnknownOmegaValueError for values outside the support, since that
    conditioning event has probability zero.
    """
    value = coerce_fraction(omega_value, "omega_value")
    which = {
        d
        for d, (omega, _) in enumerate(scenario.prediction.support)
        if omega == value
    }
    if not which:
        raise UnknownOmegaValueError(
            f"omega {value} is not in the prior support"
        )
    joint = build_joint(scenario)
    given = joint.condition(lambda a: a.d in which)
    return given.prob(lambda a: a.decision is Decision.ONE_BOX)
