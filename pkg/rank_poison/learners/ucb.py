import math

import numpy as np

from ..schemas.enums import ClickModel
from .base import Learner, LearnerState, top_k

# (alpha, psi)-UCB with alpha = 4.5 and psi(l) = l^2/8 reduces to this bonus factor.
UCB_BONUS = 1.5


def ucb_index(state: LearnerState) -> np.ndarray:
    """mu_hat_a(t-1) + 1.5 sqrt(log t / N_a(t-1)); unobserved items get +inf."""
    ledger = state.ledger
    pulls = ledger.pulls
    log_t = math.log(state.round)
    index = np.full(ledger.num_items, np.inf)
    seen = pulls > 0
    index[seen] = ledger.post_sum[seen] / pulls[seen] + UCB_BONUS * np.sqrt(log_t / pulls[seen])
    return index


def ucb_choose(state: LearnerState) -> int:
    """Arm of round ``state.round``; rounds 1..L play every arm once in id order."""
    t = state.round
    if t <= state.ledger.num_items:
        return t - 1
    return int(top_k(ucb_index(state), 1)[0])


class UCBLearner(Learner):
    """UCB on L-armed Bernoulli bandits"""
    kind = ClickModel.SINGLE_ARM

    def _choose(self) -> np.ndarray:
        return np.array([ucb_choose(self.state)], dtype=np.int64)
