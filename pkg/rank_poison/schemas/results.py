from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field


@dataclass(slots=True)
class BoundSnapshot:
    """Post-attack mean and pull count of a protected item at some round"""
    item: int
    round: int
    post_mean: float
    pulls: int


@dataclass(slots=True)
class AttackAudit:
    """What the attacker computed for one attacked item in one round.

    ``snapshots_after`` hold the protected items' statistics at h[l, a](t), the bounds that
    ``post_mean_after`` must stay under. ``gammas``/``gamma_tildes`` are per protected item in
    the order of the protected set. ``probability`` is only set by the general attack.
    """
    item: int
    pre_reward: int
    alpha: int
    post_mean_after: float
    gammas: Tuple[float, ...] = ()
    gamma_tildes: Tuple[float, ...] = ()
    advanced: bool = False
    snapshots_after: Tuple[BoundSnapshot, ...] = ()
    probability: Optional[float] = None


@dataclass(slots=True)
class RoundRecord:
    """One round of the protocol"""
    round: int
    action: np.ndarray
    pre_clicks: np.ndarray
    alpha: np.ndarray
    post_clicks: np.ndarray
    click_pos: Optional[int]
    post_click_pos: Optional[int]
    audits: List[AttackAudit] = field(default_factory=list)


class BoundChecks(BaseModel):
    """Runtime checks of the guarantees the attacks come with"""
    event_e: bool = Field(True, description="All pre-attack means stayed within beta of the truth after round L")
    pull_bound_checked: bool = Field(False, description="Whether the pull bound applies to this run")
    pull_bound_violations: int = 0
    conservative_checked_rounds: int = 0
    conservative_violations: int = 0


class InstanceInfo(BaseModel):
    """Instance actually simulated"""
    means: List[float]
    kappa: List[float]
    targets: List[int]
    protected_set: List[int]
    gaps: List[float]
    p_star: float


class Metrics(BaseModel):
    """Logged time series and final state of one replication"""
    replication: int
    grid: List[int] = Field(..., description="Logged rounds")
    chosen_count: List[int]
    chosen_ratio: List[float]
    cost: List[int]
    regret: List[float]
    per_arm_pulls: List[int]
    per_arm_recommendations: List[int]
    per_target_chosen: List[int]
    checks: BoundChecks = Field(default_factory=BoundChecks)
    instance: InstanceInfo

    @property
    def horizon(self) -> int:
        return self.grid[-1]

    @property
    def final_ratio(self) -> float:
        return self.chosen_ratio[-1]

    @property
    def final_cost(self) -> int:
        return self.cost[-1]

    @property
    def final_chosen(self) -> int:
        return self.chosen_count[-1]

    @property
    def target_misses(self) -> int:
        """T - N_L(T)"""
        return self.horizon - self.final_chosen


class RunFinal(BaseModel):
    """Exact end-of-run figures of one replication"""
    replication: int
    chosen_count: int
    target_misses: int
    cost: int
    chosen_ratio: float
    regret: float
    event_e: bool
    pull_bound_violations: int
    conservative_violations: int


class Summary(BaseModel):
    """Aggregate of the replications of one strategy"""
    label: str
    replications: int
    grid: List[int]
    chosen_count_mean: List[float]
    chosen_count_std: List[float]
    chosen_ratio_mean: List[float]
    chosen_ratio_std: List[float]
    cost_mean: List[float]
    cost_std: List[float]
    regret_mean: List[float]
    regret_std: List[float]
    final_ratio_mean: float
    final_ratio_std: float
    final_cost_mean: float
    final_cost_std: float
    final_chosen_mean: float
    final_chosen_std: float
    per_arm_pulls_mean: List[float]
    runs: List[RunFinal]
    instance: InstanceInfo
    bounds: Dict[str, Optional[float]] = Field(default_factory=dict)
    means_digest: Optional[str] = Field(None, description="sha256 over the means of every replication")
