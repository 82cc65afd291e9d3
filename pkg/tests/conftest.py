"""Shared fixtures: the market-entry scenario games and heavy sampled objects."""

from __future__ import annotations

import pytest

from coopetition.coopetitive import CoopetitiveGame
from coopetition.demo import (
    coopetitive_entry_game,
    entry_loss_game,
    market_entry_table,
    mixed_loss_map,
    normalized_loss_game,
)
from coopetition.games import Orientation
from coopetition.geometry import pareto_filter, sample_image


@pytest.fixture(scope="session")
def gain_table():
    return market_entry_table()


@pytest.fixture(scope="session")
def loss_game():
    return entry_loss_game()


@pytest.fixture(scope="session")
def norm_loss_game():
    return normalized_loss_game()


@pytest.fixture(scope="session")
def f0():
    return mixed_loss_map()


@pytest.fixture(scope="session")
def f0_cloud_513(f0):
    return sample_image(f0, 513)


@pytest.fixture(scope="session")
def f0_boundary_513(f0_cloud_513):
    return pareto_filter(f0_cloud_513, Orientation.LOSS, "minimal")


@pytest.fixture(scope="session")
def coop_game() -> CoopetitiveGame:
    return coopetitive_entry_game()


@pytest.fixture(scope="session")
def coop_cloud_65(coop_game):
    return sample_image(coop_game.payoff, 65)
