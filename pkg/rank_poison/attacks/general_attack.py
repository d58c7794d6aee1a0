import math

import numpy as np

from ..core.stats import ArmLedger, beta
from ..schemas.attack import AttackConfig
from ..schemas.enums import AttackStrategy
from ..schemas.env import Feedback
from ..schemas.results import AttackAudit
from .base import Attacker, AttackState


def attack_probability(ledger: ArmLedger, config: AttackConfig, item: int) -> float:
    """Probability of removing a click of ``item``.

    max over protected a of [UCB_item - LCB_a]_+ / UCB_item on pre-attack statistics, clamped
    to [0, 1]. An unobserved protected item has lower bound 0.
    """
    params = config.beta_params
    pulls = int(ledger.pulls[item])
    upper = ledger.pre_sum[item] / pulls + beta(params, pulls)
    if upper <= 0.0:
        return 0.0
    gap = 0.0
    for a in config.protected_set:
        n_a = int(ledger.pulls[a])
        lower = ledger.pre_sum[a] / n_a - beta(params, n_a) if n_a else 0.0
        gap = max(gap, upper - lower)
    return min(1.0, gap / upper)


def general_attack_round(
    state: AttackState,
    config: AttackConfig,
    action: np.ndarray,
    pre_feedback: Feedback,
    rng: np.random.Generator,
    protected_mask: np.ndarray,
) -> np.ndarray:
    """Randomized attack needing only the feasible feedback space.

    Each click on an item outside a* is removed with its attack probability; one uniform is
    drawn per candidate click. Removing clicks keeps any feasible vector feasible.
    """
    alpha = np.zeros(len(action), dtype=np.int64)
    for position in np.flatnonzero(pre_feedback.clicks).tolist():
        item = int(action[position])
        if protected_mask[item]:
            continue
        p = attack_probability(state.ledger, config, item)
        if rng.random() < p:
            alpha[position] = 1
        if state.record_audits:
            pulls = int(state.ledger.pulls[item])
            post_sum = int(state.ledger.pre_sum[item] - state.ledger.attack_sum[item]) - int(alpha[position])
            state.audits.append(AttackAudit(
                item=item,
                pre_reward=1,
                alpha=int(alpha[position]),
                post_mean_after=post_sum / pulls if pulls else math.nan,
                probability=p,
            ))
    return alpha


class GeneralAttacker(Attacker):
    """Randomized attack applicable to any click model"""
    strategy = AttackStrategy.GENERAL_ATTACK

    def _alpha(self, action: np.ndarray, pre: Feedback) -> np.ndarray:
        return general_attack_round(self.state, self.config, action, pre, self.rng, self._protected_mask)
