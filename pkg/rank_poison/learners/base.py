"""
Shared state and update rule of the victim learners.

A learner only ever sees post-attack feedback, so from its point of view the feedback it
receives is the reward itself: its ledger records those clicks as rewards and never carries
attack values.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import ClassVar, Optional

import numpy as np

from ..core.errors import InfeasibleFeedbackError
from ..core.stats import ArmLedger
from ..env.click_models import feasible, observed_count
from ..schemas.enums import ClickModel
from ..schemas.env import Feedback


@dataclass
class LearnerState:
    ledger: ArmLedger
    round: int = 0
    epsilon: float = 0.0

    def clone(self) -> "LearnerState":
        return LearnerState(ledger=self.ledger.copy(), round=self.round, epsilon=self.epsilon)


def init_rounds(num_items: int, list_len: int) -> int:
    """Number of forced lists that show every item at least once."""
    return -(-num_items // list_len)


def init_action(num_items: int, list_len: int, t: int) -> np.ndarray:
    """t-th forced list (t is 1-based): consecutive items, wrapping around."""
    start = (t - 1) * list_len
    return (start + np.arange(list_len, dtype=np.int64)) % num_items


def top_k(index: np.ndarray, list_len: int) -> np.ndarray:
    """Items with the K largest indices, highest first, lowest id first among ties."""
    order = np.argsort(-index, kind="stable")
    return order[:list_len].astype(np.int64)


def learner_update(
    state: LearnerState,
    kind: ClickModel,
    action: np.ndarray,
    feedback: Feedback,
    kappa: Optional[np.ndarray] = None,
) -> LearnerState:
    """Fold one round of post-attack feedback into the learner's ledger."""
    clicks = feedback.clicks
    if len(clicks) != len(action) or not feasible(kind, clicks):
        raise InfeasibleFeedbackError(kind=kind.value, clicks=clicks.tolist())
    state.ledger.mark_recommended(action)
    seen = observed_count(kind, clicks)
    state.ledger.record(
        action[:seen],
        clicks[:seen].astype(np.int64),
        kappa=kappa[:seen] if kind == ClickModel.POSITION_BASED and kappa is not None else None,
    )
    return state


class Learner(ABC):
    """Uniform choose/update interface of the victims"""
    kind: ClassVar[ClickModel]

    def __init__(self, num_items: int, list_len: int = 1, epsilon: float = 0.0,
                 kappa: Optional[np.ndarray] = None):
        self.num_items = num_items
        self.list_len = list_len
        self.kappa = None if kappa is None else np.asarray(kappa, dtype=np.float64)
        self.state = LearnerState(ledger=ArmLedger(num_items), epsilon=epsilon)

    def choose(self) -> np.ndarray:
        """Advance to the next round and return its list."""
        self.state.round += 1
        return self._choose()

    @abstractmethod
    def _choose(self) -> np.ndarray:
        ...

    def update(self, action: np.ndarray, feedback: Feedback) -> None:
        learner_update(self.state, self.kind, action, feedback, self.kappa)

    def post_means(self) -> np.ndarray:
        return self.state.ledger.post_means()
