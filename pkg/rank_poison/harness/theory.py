"""
High-probability guarantees the attacks come with, evaluated on a concrete instance.

Values are reported next to the measured ones; vacuous (negative) lower bounds are left as they
are. The general attack only has a cost order, reported without its hidden constant.
"""
import math
from typing import Dict, Optional

import numpy as np

from ..core.stats import BetaParams, beta, beta_array
from ..schemas.enums import AttackStrategy
from ..schemas.env import EnvModel


def ucb_attack_bounds(env: EnvModel, target: int, horizon: int, delta0: float, delta: float) -> Dict[str, float]:
    params = BetaParams(num_items=env.num_items, delta=delta)
    per_arm = 1.0 + 3.0 * math.log(horizon) / delta0 ** 2
    others = np.arange(env.num_items) != target
    radius = float(beta_array(params, np.array([per_arm]))[0])
    gaps = env.gaps(target)[others]
    return {
        "target_pulls_lower_bound": horizon - (env.num_items - 1) * per_arm,
        "cost_upper_bound": per_arm * float(np.sum(gaps + delta0 + 4.0 * radius)),
    }


def pbm_attack_bounds(env: EnvModel, horizon: int, delta0: float, epsilon: float) -> Dict[str, float]:
    kappa_last = float(env.kappa_array[-1])
    outside = env.num_items - env.list_len
    missed = outside * (1.0 + epsilon) * math.log(horizon) / (2.0 * kappa_last ** 2 * delta0 ** 2)
    return {"target_pulls_lower_bound": horizon - missed}


def cascade_attack_bounds(env: EnvModel, horizon: int, delta0: float) -> Dict[str, Optional[float]]:
    p_star = env.p_star
    if p_star <= 0.0:
        return {"target_pulls_lower_bound": None}
    outside = env.num_items - env.list_len
    missed = outside * 12.0 * math.log(horizon) / (p_star * delta0 ** 2)
    return {"target_pulls_lower_bound": horizon - missed}


def general_attack_bounds(env: EnvModel, target: int, horizon: int, delta: float) -> Dict[str, float]:
    params = BetaParams(num_items=env.num_items, delta=delta)
    others = np.arange(env.num_items) != target
    constant = float(np.sum(env.gaps(target)[others] + 4.0 * beta(params, 1)))
    return {"cost_order": constant * math.log(horizon)}


def theoretical_bounds(
    env: EnvModel,
    strategy: AttackStrategy,
    target: int,
    horizon: int,
    delta0: float,
    delta: float,
    epsilon: float = 0.0,
) -> Dict[str, Optional[float]]:
    """Guarantees of ``strategy`` on ``env``; empty for strategies without any."""
    if strategy == AttackStrategy.UCB_ATTACK:
        return ucb_attack_bounds(env, target, horizon, delta0, delta)
    if strategy == AttackStrategy.PBM_ATTACK:
        return pbm_attack_bounds(env, horizon, delta0, epsilon)
    if strategy == AttackStrategy.CASCADE_ATTACK:
        return cascade_attack_bounds(env, horizon, delta0)
    if strategy == AttackStrategy.GENERAL_ATTACK:
        return general_attack_bounds(env, target, horizon, delta)
    return {}
