"""
Experiment configurations: the config-file schema and the shipped presets.

A config file is JSON. It holds either a bare experiment spec or a document with the spec plus
the strategies to compare and the sweeps to run:

    {
      "description": "...",
      "spec": {"name": ..., "env": {...}, "learner": ..., "attack": {...}, "horizon": ...},
      "strategies": ["pbm_attack", "trivialK"],
      "sweeps": [{"param": "delta0", "values": [0.05, 0.1]}]
    }
"""
import json
from pathlib import Path
from typing import Dict, List, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ..core.errors import ConfigError, DataFileError
from ..schemas.enums import AttackStrategy
from ..schemas.experiment import ExperimentSpec, SweepSpec


class ExperimentConfig(BaseModel):
    """A spec together with what to run on it"""
    description: str = ""
    spec: ExperimentSpec
    strategies: List[AttackStrategy] = Field(default_factory=list, description="Strategies for compare/sweep")
    sweeps: List[SweepSpec] = Field(default_factory=list, description="One-dimensional grids")

    model_config = ConfigDict(extra="forbid")


def parse_config(document: Dict) -> ExperimentConfig:
    """Validate a config document; a bare spec is accepted too."""
    try:
        if isinstance(document, dict) and "spec" in document:
            return ExperimentConfig.model_validate(document)
        return ExperimentConfig(spec=ExperimentSpec.model_validate(document))
    except ValidationError as exc:
        raise ConfigError("invalid experiment config", reason=str(exc)) from exc


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataFileError("cannot read config file", path=str(path), reason=str(exc)) from exc
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("config file is not valid JSON", path=str(path), line=exc.lineno) from exc
    return parse_config(document)


def _pbm_synthetic(name: str, **attack) -> Dict:
    return {
        "name": name,
        "env": {
            "click_model": "pbm",
            "list_len": 8,
            "means": {"source": "uniform", "num_items": 16},
        },
        "learner": "pbm_ucb",
        "attack": {"strategy": "pbm_attack", "delta0": 0.1, "delta": 0.05, **attack},
        "horizon": 100_000,
        "replications": 20,
        "epsilon": 0.1,
    }


PRESET_DOCUMENTS: Dict[str, Dict] = {
    "fig4-two-armed": {
        "description": "Two-armed bandit, mu_1 = 0.85: the conservative UCB attack against the "
                       "modified unclamped attack and Trivial1 as mu_2 varies",
        "spec": {
            "name": "fig4-two-armed",
            "env": {"click_model": "single_arm", "means": {"source": "inline", "means": [0.85, 0.03]}},
            "learner": "ucb",
            "attack": {"strategy": "ucb_attack", "delta0": 0.1, "delta": 0.1},
            "horizon": 10_000,
            "replications": 50,
        },
        "strategies": ["ucb_attack", "modified_jun", "trivial1"],
        "sweeps": [{"param": "mu_target", "values": [0.03, 0.06, 0.09, 0.12, 0.15]}],
    },
    "fig1-synthetic-pbm": {
        "description": "PBM-UCB on 16 items with U(0, 1) means, K = 8",
        "spec": _pbm_synthetic("fig1-synthetic-pbm"),
        "strategies": ["pbm_attack", "trivialK", "trivial1"],
    },
    "fig1-real-pbm": {
        "description": "PBM-UCB on the 100 most-rated MovieLens movies, K = 10",
        "spec": {
            **_pbm_synthetic("fig1-real-pbm"),
            "env": {
                "click_model": "pbm",
                "list_len": 10,
                "means": {"source": "movielens", "num_items": 100},
            },
        },
        "strategies": ["pbm_attack", "trivialK", "trivial1"],
    },
    "fig6-synthetic-cascade": {
        "description": "CascadeUCB on 16 items with U(0, 1) means, K = 8",
        "spec": {
            "name": "fig6-synthetic-cascade",
            "env": {
                "click_model": "cascade",
                "list_len": 8,
                "means": {"source": "uniform", "num_items": 16},
            },
            "learner": "cascade_ucb",
            "attack": {"strategy": "cascade_attack", "delta0": 0.1, "delta": 0.05},
            "horizon": 100_000,
            "replications": 20,
        },
        "strategies": ["cascade_attack", "trivialK", "trivial1"],
    },
    "fig7-real-cascade": {
        "description": "CascadeUCB on the 100 most-rated MovieLens movies, K = 10",
        "spec": {
            "name": "fig7-real-cascade",
            "env": {
                "click_model": "cascade",
                "list_len": 10,
                "means": {"source": "movielens", "num_items": 100},
            },
            "learner": "cascade_ucb",
            "attack": {"strategy": "cascade_attack", "delta0": 0.1, "delta": 0.05},
            "horizon": 100_000,
            "replications": 20,
        },
        "strategies": ["cascade_attack", "trivialK", "trivial1"],
    },
    "fig5-sweeps": {
        "description": "PBM attack cost as delta0 varies (U(0, 1) means) and as x varies (U(0, x) means)",
        "spec": _pbm_synthetic("fig5-sweeps"),
        "sweeps": [
            {"param": "delta0", "values": [0.05, 0.1, 0.2, 0.3]},
            {"param": "x", "values": [0.25, 0.5, 0.75, 1.0]},
        ],
    },
    "pull-bound-ucb": {
        "description": "Four-armed UCB attack with delta0 = 0.3 for the per-arm pull bound",
        "spec": {
            "name": "pull-bound-ucb",
            "env": {"click_model": "single_arm", "means": {"source": "inline", "means": [0.9, 0.7, 0.5, 0.2]}},
            "learner": "ucb",
            "attack": {"strategy": "ucb_attack", "delta0": 0.3, "delta": 0.1},
            "horizon": 100_000,
            "replications": 100,
        },
    },
}

ALIASES = {
    "fig1-synthetic": "fig1-synthetic-pbm",
    "fig1-real": "fig1-real-pbm",
    "fig6-cascade": "fig6-synthetic-cascade",
    "fig7-cascade": "fig7-real-cascade",
}


def preset_names() -> List[str]:
    return list(PRESET_DOCUMENTS)


def get_preset(name: str) -> ExperimentConfig:
    """Validated copy of a shipped preset."""
    key = ALIASES.get(name, name)
    if key not in PRESET_DOCUMENTS:
        raise ConfigError(f"unknown preset '{name}'", available=", ".join(preset_names()))
    return parse_config(PRESET_DOCUMENTS[key])
