"""
Click environments producing pre-attack feedback.

All three models consume exactly K uniforms per round from the stream they are handed, so
two runs that recommend the same list see the same clicks.
"""
from typing import Optional, Sequence

import numpy as np

from ..core.errors import InvalidActionError, ShapeError
from ..core.rng import bernoulli
from ..schemas.enums import ClickModel
from ..schemas.env import EnvModel, Feedback


def default_kappa(list_len: int, position_bias: float = 0.5) -> list[float]:
    """Power-law examination curve kappa_k = (1/(k+1))^eta."""
    ranks = np.arange(1, list_len + 1, dtype=np.float64)
    return (1.0 / ranks ** position_bias).tolist()


def build_env(
    kind: ClickModel,
    means: Sequence[float],
    list_len: int,
    kappa: Optional[Sequence[float]] = None,
    position_bias: float = 0.5,
) -> EnvModel:
    """EnvModel with the default examination curve filled in for PBM."""
    if kind == ClickModel.POSITION_BASED and not kappa:
        kappa = default_kappa(list_len, position_bias)
    return EnvModel(
        means=[float(m) for m in means],
        kappa=list(kappa) if kappa else [],
        list_len=list_len,
        kind=kind,
    )


def check_action(model: EnvModel, action: np.ndarray) -> None:
    if len(action) != model.list_len:
        raise ShapeError("action length differs from list_len", expected=model.list_len, got=len(action))
    items = action.tolist()
    if len(set(items)) != len(items):
        raise InvalidActionError("action repeats an item", action=items)
    if min(items) < 0 or max(items) >= model.num_items:
        raise InvalidActionError("action holds an unknown item", action=items)


def draw_feedback(model: EnvModel, action: np.ndarray, rng: np.random.Generator) -> Feedback:
    """Sample the pre-attack clicks of ``action``."""
    action = np.asarray(action, dtype=np.int64)
    check_action(model, action)
    mu = model.means_array[action]

    if model.kind == ClickModel.POSITION_BASED:
        return Feedback(clicks=bernoulli(rng, model.kappa_array * mu))

    if model.kind == ClickModel.CASCADE:
        hits = np.flatnonzero(bernoulli(rng, mu))
        clicks = np.zeros(model.list_len, dtype=np.int8)
        if len(hits) == 0:
            return Feedback(clicks=clicks, click_pos=None)
        first = int(hits[0])
        clicks[first] = 1
        return Feedback(clicks=clicks, click_pos=first)

    return Feedback(clicks=bernoulli(rng, mu))


def feasible(kind: ClickModel, clicks: np.ndarray) -> bool:
    """Whether a click vector lies in the model's feasible feedback space."""
    clicks = np.asarray(clicks)
    if not np.all((clicks == 0) | (clicks == 1)):
        return False
    if kind == ClickModel.CASCADE:
        return int(clicks.sum()) <= 1
    if kind == ClickModel.SINGLE_ARM:
        return len(clicks) == 1
    return True


def observed_count(kind: ClickModel, clicks: np.ndarray) -> int:
    """Number of leading positions a learner observes given the clicks it receives."""
    if kind != ClickModel.CASCADE:
        return len(clicks)
    hits = np.flatnonzero(clicks)
    return int(hits[0]) + 1 if len(hits) else len(clicks)
