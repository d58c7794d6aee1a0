"""
Runtime and trace-replay checks of the guarantees the attacks come with.
"""
import math
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from ..core.stats import ArmLedger, BetaParams, beta, beta_array, clamp_plus
from ..schemas.results import AttackAudit, BoundSnapshot, RoundRecord

REPLAY_TOLERANCE = 1e-8


def confidence_event_broken(
    ledger: ArmLedger,
    means: np.ndarray,
    params: BetaParams,
    items: np.ndarray,
) -> bool:
    """Whether some observed item's pre-attack mean is beta(N) or more away from its true mean."""
    pulls = ledger.pulls[items]
    seen = pulls > 0
    if not np.any(seen):
        return False
    items = items[seen]
    estimate = ledger.pre_sum[items] / ledger.pulls[items]
    return bool(np.any(np.abs(estimate - means[items]) >= beta_array(params, ledger.pulls[items])))


def pull_bound_violations(pulls: np.ndarray, target: int, t: int, delta0: float) -> int:
    """Non-target arms with N_a(t) > min(N_target(t), 1 + 3 log t / delta0^2)."""
    bound = min(float(pulls[target]), 1.0 + 3.0 * math.log(t) / delta0 ** 2)
    over = pulls > bound + 1e-12
    over[target] = False
    return int(over.sum())


def snapshot_floor(snapshot: BoundSnapshot, params: BetaParams, delta0: float) -> float:
    """[post mean - 2 beta(N) - delta0]_+ of a stored snapshot; 0 when it had no pulls."""
    if snapshot.pulls < 1:
        return 0.0
    return clamp_plus(snapshot.post_mean - 2.0 * beta(params, snapshot.pulls) - delta0)


def audit_holds(audit: AttackAudit, params: BetaParams, delta0: float) -> bool:
    """mu_hat_l(t) <= [mu_lower_a(h[l, a](t)) - delta0]_+ for every protected a."""
    floors = [snapshot_floor(s, params, delta0) for s in audit.snapshots_after]
    return audit.post_mean_after <= min(floors) + REPLAY_TOLERANCE


def replay_conservative(trace: Iterable[RoundRecord], params: BetaParams, delta0: float) -> Tuple[int, int]:
    """(checked, violated) over every conservative audit stored in a trace."""
    checked = violated = 0
    for record in trace:
        for audit in record.audits:
            if not audit.snapshots_after:
                continue
            checked += 1
            if not audit_holds(audit, params, delta0):
                violated += 1
    return checked, violated


def replay_cost(trace: Sequence[RoundRecord]) -> List[int]:
    """Cumulative ||r_t - r0_t||_1 recomputed from the raw clicks."""
    per_round = [
        int(np.abs(record.post_clicks.astype(np.int64) - record.pre_clicks.astype(np.int64)).sum())
        for record in trace
    ]
    return np.cumsum(per_round, dtype=np.int64).tolist()
