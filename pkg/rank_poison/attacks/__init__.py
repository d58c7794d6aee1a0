"""
Attack strategies: conservative attacks on UCB, PBM-UCB and CascadeUCB, the general randomized
attack, and the baselines they are measured against.
"""

from .base import AttackOutcome, Attacker, AttackState, NoAttack, new_attack_state
from .baselines import (
    ModifiedJunAttacker,
    Trivial1Attacker,
    TrivialKAttacker,
    modified_jun_alpha,
    modified_jun_attack_round,
    trivial_attack_round,
)
from .cascade_attack import CascadeAttacker, cascade_attack_round
from .conservative import (
    cal_alpha,
    ceil_alpha,
    conservative_gammas,
    frozen_floors,
    lower_floor,
    mu_lower,
    protected_floors,
)
from .general_attack import GeneralAttacker, attack_probability, general_attack_round
from .pbm_attack import PBMAttacker, pbm_attack_round
from .registry import STRATEGIES, build_attacker
from .ucb_attack import UCBAttacker, ucb_attack_round

__all__ = [
    # Protocol
    "AttackOutcome",
    "Attacker",
    "AttackState",
    "new_attack_state",
    "build_attacker",
    "STRATEGIES",

    # Conservative machinery
    "cal_alpha",
    "ceil_alpha",
    "conservative_gammas",
    "frozen_floors",
    "lower_floor",
    "mu_lower",
    "protected_floors",

    # Strategies
    "CascadeAttacker",
    "GeneralAttacker",
    "ModifiedJunAttacker",
    "NoAttack",
    "PBMAttacker",
    "Trivial1Attacker",
    "TrivialKAttacker",
    "UCBAttacker",
    "attack_probability",
    "cascade_attack_round",
    "general_attack_round",
    "modified_jun_alpha",
    "modified_jun_attack_round",
    "pbm_attack_round",
    "trivial_attack_round",
    "ucb_attack_round",
]
