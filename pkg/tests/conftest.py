"""
Shared fixtures.
"""
from pathlib import Path
from typing import Callable

import numpy as np
import pytest

from rank_poison.schemas.attack import AttackConfig
from rank_poison.schemas.experiment import ExperimentSpec
from tests.factories import attack_config, spec_document


@pytest.fixture
def two_arm_config() -> AttackConfig:
    """L = 2, delta = 0.1, delta0 = 0.1, target arm 1"""
    return attack_config(2, targets=[1])


@pytest.fixture
def make_spec() -> Callable[..., ExperimentSpec]:
    def _make(**kwargs) -> ExperimentSpec:
        return ExperimentSpec.model_validate(spec_document(**kwargs))
    return _make


@pytest.fixture
def write_ratings(tmp_path: Path) -> Callable[..., Path]:
    """Write a ratings CSV (header included by the caller) and return its path."""
    def _write(text: str, name: str = "ratings.csv") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path
    return _write


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)
