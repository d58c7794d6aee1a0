from typing import Optional

import numpy as np

from ..schemas.attack import AttackConfig
from ..schemas.enums import AttackStrategy
from ..schemas.env import Feedback
from .base import Attacker, AttackState
from .conservative import cal_alpha


def cascade_attack_round(
    state: AttackState,
    config: AttackConfig,
    action: np.ndarray,
    pre_feedback: Feedback,
    click_pos: Optional[int],
    protected_mask: np.ndarray,
) -> np.ndarray:
    """Attack vector of a cascade round.

    Only the clicked item can be attacked. When its click is removed, the first protected item
    below it gets a click instead (attack value -1) so the user's scan still stops on a* and
    the items in between are observed as skipped.
    """
    alpha = np.zeros(len(action), dtype=np.int64)
    if click_pos is None:
        return alpha
    clicked = int(action[click_pos])
    if protected_mask[clicked]:
        return alpha
    alpha[click_pos] = cal_alpha(state, config, clicked, int(pre_feedback.clicks[click_pos]))
    if alpha[click_pos] == 1:
        below = np.flatnonzero(protected_mask[action[click_pos + 1:]])
        if len(below):
            alpha[click_pos + 1 + int(below[0])] = -1
    return alpha


class CascadeAttacker(Attacker):
    """Conservative attack on CascadeUCB"""
    strategy = AttackStrategy.CASCADE_ATTACK

    def _alpha(self, action: np.ndarray, pre: Feedback) -> np.ndarray:
        return cascade_attack_round(self.state, self.config, action, pre, pre.click_pos, self._protected_mask)
