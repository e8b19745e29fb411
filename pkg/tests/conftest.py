"""Shared fixtures. Scenario values are restated literally here rather
than imported from the package's own builtin_scenarios, so a bug there
cannot hide one here."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from newcomb import NewcombScenario, PredictionModel

HALF = Fraction(1, 2)


@pytest.fixture
def rng() -> random.Random:
    """A fresh deterministic generator per test."""
    return random.Random(99991)


@pytest.fixture
def symmetric_tenths() -> NewcombScenario:
    """Two-point prior {1/10, 9/10}, rewards 1000 / 1000000."""
    model = PredictionModel(((Fraction(1, 10), HALF), (Fraction(9, 10), HALF)))
    return NewcombScenario(
        prediction=model,
        small_reward=Fraction(1000),
        large_reward=Fraction(1000000),
    )


@pytest.fixture
def point_half() -> NewcombScenario:
    """Point mass at omega = 1/2: zero variance, two-boxing wins."""
    model = PredictionModel(((HALF, Fraction(1)),))
    return NewcombScenario(
        prediction=model,
        small_reward=Fraction(1000),
        large_reward=Fraction(1000000),
    )


@pytest.fixture
def quarters_tie() -> NewcombScenario:
    """Prior {1/4, 3/4} with r/R = 1/4 exactly at the threshold."""
    model = PredictionModel(((Fraction(1, 4), HALF), (Fraction(3, 4), HALF)))
    return NewcombScenario(
        prediction=model, small_reward=Fraction(1), large_reward=Fraction(4)
    )
