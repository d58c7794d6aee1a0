"""
Shared numerical primitives: the confidence radius, per-item bookkeeping and clamping.
"""
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .errors import DomainError, UndefinedMeanError


class BetaParams(BaseModel):
    """Parameters of the confidence radius beta(N)"""
    num_items: int = Field(..., ge=1, description="Number of items L")
    delta: float = Field(..., gt=0.0, le=0.5, description="Confidence parameter")

    model_config = ConfigDict(frozen=True)


def beta(params: BetaParams, n: int) -> float:
    """sqrt(log(pi^2 L n^2 / (3 delta)) / (2n)) for n >= 1."""
    if n < 1:
        raise DomainError("beta is undefined for n < 1", n=n)
    return math.sqrt(math.log(math.pi ** 2 * params.num_items * n * n / (3.0 * params.delta)) / (2.0 * n))


def beta_array(params: BetaParams, n: np.ndarray) -> np.ndarray:
    """Vectorized beta; entries with n < 1 come back as +inf."""
    n = np.asarray(n, dtype=np.float64)
    safe = np.maximum(n, 1.0)
    values = np.sqrt(np.log(math.pi ** 2 * params.num_items * safe * safe / (3.0 * params.delta)) / (2.0 * safe))
    return np.where(n >= 1.0, values, np.inf)


def clamp_plus(x: float) -> float:
    """[x]_+ = max(0, x)"""
    return x if x > 0.0 else 0.0


@dataclass(frozen=True)
class ArmStats:
    """Bookkeeping of a single item.

    ``attack_sum`` is signed: the cascade attack may push a protected item's click
    from 0 to 1, which is recorded as an attack value of -1.
    """
    pulls: int = 0
    pre_reward_sum: int = 0
    attack_sum: int = 0
    bias_corrected_pulls: float = 0.0

    @property
    def post_reward_sum(self) -> int:
        return self.pre_reward_sum - self.attack_sum


def empirical_means(stats: ArmStats) -> Tuple[float, float]:
    """Return (pre-attack mean, post-attack mean) of an item."""
    if stats.pulls < 1:
        raise UndefinedMeanError(pulls=stats.pulls)
    return stats.pre_reward_sum / stats.pulls, stats.post_reward_sum / stats.pulls


@dataclass
class ArmLedger:
    """Column store of ArmStats for all L items.

    ``recommended`` counts how often an item was put in a list; ``pulls`` only counts
    the times it was also observed (the two differ under the cascade model).
    """
    num_items: int
    pulls: np.ndarray = field(init=False)
    recommended: np.ndarray = field(init=False)
    pre_sum: np.ndarray = field(init=False)
    attack_sum: np.ndarray = field(init=False)
    kappa_pulls: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        self.pulls = np.zeros(self.num_items, dtype=np.int64)
        self.recommended = np.zeros(self.num_items, dtype=np.int64)
        self.pre_sum = np.zeros(self.num_items, dtype=np.int64)
        self.attack_sum = np.zeros(self.num_items, dtype=np.int64)
        self.kappa_pulls = np.zeros(self.num_items, dtype=np.float64)

    def record(
        self,
        items: np.ndarray,
        rewards: np.ndarray,
        attacks: Optional[np.ndarray] = None,
        kappa: Optional[np.ndarray] = None,
    ) -> None:
        """Fold one observation per item; ``items`` must not repeat."""
        if len(items) == 0:
            return
        self.pulls[items] += 1
        self.pre_sum[items] += rewards
        if attacks is not None:
            self.attack_sum[items] += attacks
        if kappa is not None:
            self.kappa_pulls[items] += kappa

    def add_attacks(self, items: np.ndarray, attacks: np.ndarray) -> None:
        self.attack_sum[items] += attacks

    def mark_recommended(self, items: np.ndarray) -> None:
        self.recommended[items] += 1

    @property
    def post_sum(self) -> np.ndarray:
        return self.pre_sum - self.attack_sum

    def stats(self, item: int) -> ArmStats:
        return ArmStats(
            pulls=int(self.pulls[item]),
            pre_reward_sum=int(self.pre_sum[item]),
            attack_sum=int(self.attack_sum[item]),
            bias_corrected_pulls=float(self.kappa_pulls[item]),
        )

    def pre_means(self) -> np.ndarray:
        """Pre-attack means; NaN where an item has no pulls."""
        return _safe_ratio(self.pre_sum, self.pulls)

    def post_means(self) -> np.ndarray:
        """Post-attack means; NaN where an item has no pulls."""
        return _safe_ratio(self.post_sum, self.pulls)

    def copy(self) -> "ArmLedger":
        clone = ArmLedger(self.num_items)
        clone.pulls = self.pulls.copy()
        clone.recommended = self.recommended.copy()
        clone.pre_sum = self.pre_sum.copy()
        clone.attack_sum = self.attack_sum.copy()
        clone.kappa_pulls = self.kappa_pulls.copy()
        return clone


def _safe_ratio(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    out = np.full(num.shape, np.nan, dtype=np.float64)
    np.divide(num, den, out=out, where=den > 0)
    return out
