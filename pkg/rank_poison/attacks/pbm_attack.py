import numpy as np

from ..schemas.attack import AttackConfig
from ..schemas.enums import AttackStrategy
from ..schemas.env import Feedback
from .base import Attacker, AttackState
from .conservative import cal_alpha


def pbm_attack_round(
    state: AttackState,
    config: AttackConfig,
    action: np.ndarray,
    pre_feedback: Feedback,
    protected_mask: np.ndarray,
) -> np.ndarray:
    """Attack vector of a position-based round: every shown item outside a* goes through cal_alpha.

    Items that are not shown keep their timestamps.
    """
    alpha = np.zeros(len(action), dtype=np.int64)
    for position, item in enumerate(action.tolist()):
        if protected_mask[item]:
            continue
        alpha[position] = cal_alpha(state, config, item, int(pre_feedback.clicks[position]))
    return alpha


class PBMAttacker(Attacker):
    """Conservative attack on PBM-UCB.

    Given the examination probabilities the floors use the same S / Ntilde means PBM-UCB ranks
    by; without them the attacker falls back to plain averages.
    """
    strategy = AttackStrategy.PBM_ATTACK
    uses_examination = True

    def _alpha(self, action: np.ndarray, pre: Feedback) -> np.ndarray:
        return pbm_attack_round(self.state, self.config, action, pre, self._protected_mask)
