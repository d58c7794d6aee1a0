import numpy as np

from ..schemas.attack import AttackConfig
from ..schemas.enums import AttackStrategy
from ..schemas.env import Feedback
from .base import Attacker, AttackState
from .conservative import cal_alpha


def ucb_attack_round(state: AttackState, config: AttackConfig, chosen_arm: int, pre_reward: int) -> int:
    """Attack value of a single-arm round.

    The target never loses its reward; any other arm is held below the target's conservative
    lower bound, with the target as the only protected item.
    """
    if chosen_arm in config.targets:
        return 0
    return cal_alpha(state, config, chosen_arm, pre_reward)


class UCBAttacker(Attacker):
    """Conservative attack on UCB"""
    strategy = AttackStrategy.UCB_ATTACK

    def _alpha(self, action: np.ndarray, pre: Feedback) -> np.ndarray:
        arm = int(action[0])
        return np.array([ucb_attack_round(self.state, self.config, arm, int(pre.clicks[0]))], dtype=np.int64)
