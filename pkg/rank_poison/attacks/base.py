"""
Attacker state and the round protocol shared by every strategy.

Each round the attacker folds the positions the learner is going to observe into its own
ledger (pre-attack clicks, plain counts, and examination-weighted counts when the
examination probabilities are known), asks the strategy for an attack vector, checks that
the post-attack feedback stays binary and feasible for the click model, then books the attack
values and the cost. Under the cascade model the observed prefix is decided by the post-attack
click, so positions revealed by the attack are folded after the strategy has run.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import ClassVar, Dict, List, Optional, Tuple

import numpy as np

from ..core.errors import FeasibilityError
from ..core.stats import ArmLedger
from ..env.click_models import feasible, observed_count
from ..schemas.attack import AttackConfig
from ..schemas.enums import AttackStrategy, ClickModel
from ..schemas.env import Feedback
from ..schemas.results import AttackAudit

SNAPSHOT_PRUNE_EVERY = 1024


@dataclass
class AttackState:
    """Attacker's private view of the run.

    ``timestamps[l, j]`` is h[l, a] for the j-th protected item a. ``snapshots`` maps a round
    to the (post mean, pulls) of every protected item as they were when a timestamp moved to
    that round; ``floor_cache`` holds the lower floors derived from each snapshot.

    With ``bias_corrected`` set, means are S / Ntilde and an item's mass is its
    examination-weighted count Ntilde; otherwise both use the plain count N. The
    confidence radius always uses N.
    """
    ledger: ArmLedger
    protected: np.ndarray
    timestamps: np.ndarray
    snapshots: Dict[int, Tuple[np.ndarray, np.ndarray]] = field(default_factory=dict)
    floor_cache: Dict[int, np.ndarray] = field(default_factory=dict)
    bias_corrected: bool = False
    round: int = 0
    cumulative_cost: int = 0
    conservative_checks: int = 0
    conservative_violations: int = 0
    record_audits: bool = False
    audits: List[AttackAudit] = field(default_factory=list)

    def mass(self, items: np.ndarray) -> np.ndarray:
        """Ntilde under bias correction, N otherwise."""
        if self.bias_corrected:
            return self.ledger.kappa_pulls[items]
        return self.ledger.pulls[items].astype(np.float64)

    def protected_stats(self) -> Tuple[np.ndarray, np.ndarray]:
        """Live (post mean, pulls) of the protected items; NaN mean for unobserved ones."""
        items = self.protected
        pulls = self.ledger.pulls[items].copy()
        mass = self.mass(items)
        means = np.full(len(items), np.nan)
        np.divide(self.ledger.post_sum[items], mass, out=means, where=pulls > 0)
        return means, pulls

    def take_snapshot(self) -> None:
        if self.round not in self.snapshots:
            self.snapshots[self.round] = self.protected_stats()

    def prune_snapshots(self) -> None:
        live = set(np.unique(self.timestamps).tolist())
        live.add(self.round)
        for stale in [r for r in self.snapshots if r not in live]:
            del self.snapshots[stale]
            self.floor_cache.pop(stale, None)


def new_attack_state(config: AttackConfig, record_audits: bool = False,
                     bias_corrected: bool = False) -> AttackState:
    num_items = config.beta_params.num_items
    protected = config.protected_array()
    return AttackState(
        ledger=ArmLedger(num_items),
        protected=protected,
        timestamps=np.ones((num_items, len(protected)), dtype=np.int64),
        record_audits=record_audits,
        bias_corrected=bias_corrected,
    )


@dataclass(slots=True)
class AttackOutcome:
    """Attack vector of one round and the feedback the learner receives"""
    alpha: np.ndarray
    feedback: Feedback
    audits: List[AttackAudit] = field(default_factory=list)

    @property
    def cost(self) -> int:
        return int(np.abs(self.alpha).sum())


class Attacker(ABC):
    """Base class of the strategies; subclasses only compute the attack vector"""
    strategy: ClassVar[AttackStrategy]
    # Items whose clicks the strategy may never remove: a* by default, only the targets
    # for strategies that ignore the protected set.
    guards_protected_set: ClassVar[bool] = True
    # Whether the strategy reads S / Ntilde means once the examination probabilities are known.
    uses_examination: ClassVar[bool] = False

    def __init__(
        self,
        config: AttackConfig,
        kind: ClickModel,
        rng: Optional[np.random.Generator] = None,
        record_audits: bool = False,
        kappa: Optional[np.ndarray] = None,
    ):
        self.config = config
        self.kind = kind
        self.rng = rng
        self.kappa = None if kappa is None else np.asarray(kappa, dtype=np.float64)
        self.state = new_attack_state(config, record_audits=record_audits,
                                      bias_corrected=self.uses_examination and self.kappa is not None)
        self._protected_mask = config.protected_mask()
        self._target_mask = config.target_mask()
        self._guard_mask = self._protected_mask if self.guards_protected_set else self._target_mask

    def is_protected(self, item: int) -> bool:
        return bool(self._protected_mask[item])

    def is_target(self, item: int) -> bool:
        return bool(self._target_mask[item])

    def attack(self, action: np.ndarray, pre: Feedback) -> AttackOutcome:
        """Run the attacker's side of one round."""
        state = self.state
        state.round += 1
        state.audits = []
        pre_clicks = pre.clicks.astype(np.int64)

        observed = observed_count(self.kind, pre_clicks)
        state.ledger.mark_recommended(action)
        state.ledger.record(action[:observed], pre_clicks[:observed], kappa=self._kappa(0, observed))
        if state.round == 1:
            state.take_snapshot()

        alpha = np.asarray(self._alpha(action, pre), dtype=np.int64)
        post_clicks = pre_clicks - alpha
        self._check_feasible(action, pre_clicks, alpha, post_clicks)

        revealed = observed_count(self.kind, post_clicks)
        if revealed > observed:
            state.ledger.record(action[observed:revealed], pre_clicks[observed:revealed],
                                kappa=self._kappa(observed, revealed))
        hit = np.flatnonzero(alpha)
        if len(hit):
            state.ledger.add_attacks(action[hit], alpha[hit])
        state.cumulative_cost += int(np.abs(alpha).sum())

        if state.round % SNAPSHOT_PRUNE_EVERY == 0:
            state.prune_snapshots()

        post = Feedback.from_clicks(self.kind, post_clicks.astype(np.int8))
        return AttackOutcome(alpha=alpha.astype(np.int8), feedback=post, audits=state.audits)

    def _kappa(self, start: int, stop: int) -> Optional[np.ndarray]:
        return None if self.kappa is None else self.kappa[start:stop]

    @abstractmethod
    def _alpha(self, action: np.ndarray, pre: Feedback) -> np.ndarray:
        """Attack vector for the round; the ledger already holds the observed pre clicks."""

    def _check_feasible(self, action, pre_clicks, alpha, post_clicks) -> None:
        if np.any((alpha < -1) | (alpha > 1)):
            raise FeasibilityError("attack value outside {-1, 0, 1}",
                                   round=self.state.round, alpha=alpha.tolist())
        if not feasible(self.kind, post_clicks):
            raise FeasibilityError(round=self.state.round, action=action.tolist(),
                                   pre=pre_clicks.tolist(), alpha=alpha.tolist())
        if self.kind == ClickModel.CASCADE and observed_count(self.kind, post_clicks) < observed_count(self.kind, pre_clicks):
            raise FeasibilityError("attack hid an observed position", round=self.state.round)
        guarded = self._guard_mask[action]
        if np.any(alpha[guarded] > 0):
            raise FeasibilityError("attack demoted a protected item", round=self.state.round,
                                   action=action.tolist(), alpha=alpha.tolist())


class NoAttack(Attacker):
    strategy = AttackStrategy.NONE

    def _alpha(self, action: np.ndarray, pre: Feedback) -> np.ndarray:
        return np.zeros(len(action), dtype=np.int64)
