from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..core.stats import BetaParams


class AttackConfig(BaseModel):
    """Resolved parameters of an attacker"""
    delta0: float = Field(..., gt=0.0, description="Margin below the target's conservative lower bound")
    beta_params: BetaParams = Field(..., description="Carries L and delta")
    targets: Tuple[int, ...] = Field(..., min_length=1, description="Target item(s)")
    protected_set: Tuple[int, ...] = Field(..., min_length=1, description="Items never demoted (a*)")

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_sets(self) -> "AttackConfig":
        num_items = self.beta_params.num_items
        for item in (*self.targets, *self.protected_set):
            if not 0 <= item < num_items:
                raise ValueError(f"item {item} outside 0..{num_items - 1}")
        if len(set(self.protected_set)) != len(self.protected_set):
            raise ValueError("protected_set contains duplicates")
        if len(set(self.targets)) != len(self.targets):
            raise ValueError("targets contain duplicates")
        missing = set(self.targets) - set(self.protected_set)
        if missing:
            raise ValueError(f"targets {sorted(missing)} are not in protected_set")
        return self

    @property
    def target(self) -> int:
        """Primary target."""
        return self.targets[0]

    @property
    def delta(self) -> float:
        return self.beta_params.delta

    def protected_array(self) -> np.ndarray:
        return np.asarray(self.protected_set, dtype=np.int64)

    def protected_mask(self) -> np.ndarray:
        mask = np.zeros(self.beta_params.num_items, dtype=bool)
        mask[list(self.protected_set)] = True
        return mask

    def target_mask(self) -> np.ndarray:
        mask = np.zeros(self.beta_params.num_items, dtype=bool)
        mask[list(self.targets)] = True
        return mask
