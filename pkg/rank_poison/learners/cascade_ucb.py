import numpy as np

from ..schemas.enums import ClickModel
from .base import Learner, LearnerState, init_action, init_rounds, top_k
from .ucb import ucb_index


def cascade_ucb_choose(state: LearnerState, list_len: int) -> np.ndarray:
    """Top-K items by mu_hat_a + 1.5 sqrt(log t / N_a), after the forced lists."""
    num_items = state.ledger.num_items
    t = state.round
    if t <= init_rounds(num_items, list_len):
        return init_action(num_items, list_len, t)
    return top_k(ucb_index(state), list_len)


class CascadeUCBLearner(Learner):
    """CascadeUCB; observes positions up to the first click it is shown"""
    kind = ClickModel.CASCADE

    def _choose(self) -> np.ndarray:
        return cascade_ucb_choose(self.state, self.list_len)
