from typing import Dict, Optional, Type

import numpy as np

from ..core.errors import ConfigError
from ..schemas.attack import AttackConfig
from ..schemas.enums import STRATEGY_MODELS, AttackStrategy, ClickModel
from .base import Attacker, NoAttack
from .baselines import ModifiedJunAttacker, Trivial1Attacker, TrivialKAttacker
from .cascade_attack import CascadeAttacker
from .general_attack import GeneralAttacker
from .pbm_attack import PBMAttacker
from .ucb_attack import UCBAttacker

STRATEGIES: Dict[AttackStrategy, Type[Attacker]] = {
    AttackStrategy.UCB_ATTACK: UCBAttacker,
    AttackStrategy.PBM_ATTACK: PBMAttacker,
    AttackStrategy.CASCADE_ATTACK: CascadeAttacker,
    AttackStrategy.GENERAL_ATTACK: GeneralAttacker,
    AttackStrategy.TRIVIAL1: Trivial1Attacker,
    AttackStrategy.TRIVIAL_K: TrivialKAttacker,
    AttackStrategy.MODIFIED_JUN: ModifiedJunAttacker,
    AttackStrategy.NONE: NoAttack,
}


def build_attacker(
    strategy: AttackStrategy,
    config: AttackConfig,
    kind: ClickModel,
    rng: Optional[np.random.Generator] = None,
    record_audits: bool = False,
    kappa: Optional[np.ndarray] = None,
) -> Attacker:
    """Instantiate a strategy by name for the given click model.

    ``kappa`` are the examination probabilities, for strategies that correct for position bias.
    """
    strategy = AttackStrategy(strategy)
    if kind not in STRATEGY_MODELS[strategy]:
        raise ConfigError(f"strategy '{strategy.value}' cannot attack the '{kind.value}' model",
                          strategy=strategy.value, model=kind.value)
    if strategy == AttackStrategy.GENERAL_ATTACK and rng is None:
        raise ConfigError("general_attack needs an attacker random stream")
    return STRATEGIES[strategy](config, kind, rng=rng, record_audits=record_audits, kappa=kappa)
