"""
Baseline attackers the conservative attacks are compared against.
"""
import math

import numpy as np

from ..core.stats import beta
from ..schemas.attack import AttackConfig
from ..schemas.enums import AttackStrategy
from ..schemas.env import Feedback
from ..schemas.results import AttackAudit
from .base import Attacker, AttackState


def trivial_attack_round(action: np.ndarray, pre_feedback: Feedback, spared_mask: np.ndarray) -> np.ndarray:
    """Remove every click on an item outside ``spared_mask``."""
    clicks = pre_feedback.clicks.astype(np.int64)
    return np.where(spared_mask[action], 0, clicks)


class Trivial1Attacker(Attacker):
    """Removes every click that is not on a target"""
    strategy = AttackStrategy.TRIVIAL1
    guards_protected_set = False

    def _alpha(self, action: np.ndarray, pre: Feedback) -> np.ndarray:
        return trivial_attack_round(action, pre, self._target_mask)


class TrivialKAttacker(Attacker):
    """Removes every click on an item outside a*"""
    strategy = AttackStrategy.TRIVIAL_K

    def _alpha(self, action: np.ndarray, pre: Feedback) -> np.ndarray:
        return trivial_attack_round(action, pre, self._protected_mask)


def modified_jun_alpha(state: AttackState, config: AttackConfig, chosen_arm: int) -> float:
    """Unclamped attack value N_l mu_hat_l - N_l (mu_lower_target(t) - delta0) on the current ledger.

    The target's lower bound is -inf until it has been pulled.
    """
    ledger = state.ledger
    target = config.target
    pulls = int(ledger.pulls[chosen_arm])
    unattacked = float(ledger.pre_sum[chosen_arm] - ledger.attack_sum[chosen_arm])
    n_target = int(ledger.pulls[target])
    if n_target == 0:
        return math.inf
    lower = ledger.post_sum[target] / n_target - 2.0 * beta(config.beta_params, n_target)
    return unattacked - pulls * (lower - config.delta0)


def modified_jun_attack_round(state: AttackState, config: AttackConfig, chosen_arm: int, pre_reward: int) -> int:
    """1 when the unclamped value is positive and the arm was rewarded, else 0; no timestamps."""
    if chosen_arm in config.targets or pre_reward == 0:
        return 0
    value = modified_jun_alpha(state, config, chosen_arm)
    alpha = 1 if value > 0.0 else 0
    if state.record_audits:
        pulls = int(state.ledger.pulls[chosen_arm])
        post_sum = int(state.ledger.pre_sum[chosen_arm] - state.ledger.attack_sum[chosen_arm]) - alpha
        state.audits.append(AttackAudit(
            item=chosen_arm,
            pre_reward=pre_reward,
            alpha=alpha,
            post_mean_after=post_sum / pulls,
            gammas=(value,),
        ))
    return alpha


class ModifiedJunAttacker(Attacker):
    """Unconservative UCB attack restricted to binary feedback"""
    strategy = AttackStrategy.MODIFIED_JUN

    def _alpha(self, action: np.ndarray, pre: Feedback) -> np.ndarray:
        arm = int(action[0])
        return np.array([modified_jun_attack_round(self.state, self.config, arm, int(pre.clicks[0]))], dtype=np.int64)
