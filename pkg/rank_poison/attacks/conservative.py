"""
Conservative attack values shared by the UCB, PBM and cascade attacks.

For an item l outside the protected set the attacker keeps, for every protected item a, the
round h[l, a] at which it last checked l against a's lower confidence bound. Each time l is
attacked it first tries to meet the bound computed now; if the pre-attack click does not
leave enough room for that, it falls back to the bound frozen at h[l, a], which the previous
attacks already satisfied. Attack values therefore never exceed the pre-attack click.

Floors are evaluated for the whole protected set at once. Floors of a snapshot round never
change, so they are computed once and kept next to the snapshot.
"""
import math
from typing import Tuple

import numpy as np

from ..core.errors import FeasibilityError, SimulationError, UndefinedMeanError
from ..core.stats import beta, beta_array
from ..schemas.attack import AttackConfig
from ..schemas.results import AttackAudit, BoundSnapshot
from .base import AttackState

CEIL_GUARD = 1e-9
CHECK_TOLERANCE = 1e-8


def ceil_alpha(x: float) -> int:
    """Ceiling that ignores floating-point residue above an integer."""
    return int(math.ceil(x - CEIL_GUARD)) if x > 0.0 else 0


def _protected_slot(state: AttackState, item: int) -> int:
    slots = np.flatnonzero(state.protected == item)
    if len(slots) == 0:
        raise SimulationError("item is not in the protected set", item=item)
    return int(slots[0])


def protected_stats_at(state: AttackState, at_round: int) -> Tuple[np.ndarray, np.ndarray]:
    """(post means, pulls) of the protected set as seen at ``at_round``."""
    if at_round == state.round:
        return state.protected_stats()
    snapshot = state.snapshots.get(at_round)
    if snapshot is None:
        raise SimulationError("no snapshot kept for round", round=at_round, current=state.round)
    return snapshot


def stats_at(state: AttackState, slot: int, at_round: int) -> Tuple[float, int]:
    """(post mean, pulls) of one protected item as seen at ``at_round``."""
    means, pulls = protected_stats_at(state, at_round)
    return float(means[slot]), int(pulls[slot])


def mu_lower(state: AttackState, config: AttackConfig, item: int, at_round: int) -> float:
    """Post mean of ``item`` at ``at_round`` minus 2 beta(N) at that round."""
    mean, pulls = stats_at(state, _protected_slot(state, item), at_round)
    if pulls < 1:
        raise UndefinedMeanError(item=item, round=at_round)
    return mean - 2.0 * beta(config.beta_params, pulls)


def floors_from(means: np.ndarray, pulls: np.ndarray, config: AttackConfig) -> np.ndarray:
    """[mean - 2 beta(N) - delta0]_+ per item; unobserved items impose no bound (0)."""
    seen = pulls > 0
    out = np.zeros(len(pulls))
    if np.any(seen):
        radius = beta_array(config.beta_params, pulls[seen])
        out[seen] = np.maximum(means[seen] - 2.0 * radius - config.delta0, 0.0)
    return out


def protected_floors(state: AttackState, config: AttackConfig, at_round: int) -> np.ndarray:
    """Lower floors of every protected item at ``at_round``, in protected-set order."""
    if at_round == state.round:
        return floors_from(*state.protected_stats(), config)
    floors = state.floor_cache.get(at_round)
    if floors is None:
        floors = floors_from(*protected_stats_at(state, at_round), config)
        state.floor_cache[at_round] = floors
    return floors


def frozen_floors(state: AttackState, config: AttackConfig, item: int) -> np.ndarray:
    """Floor of each protected a taken at its own h[l, a]."""
    rounds = state.timestamps[item]
    first = int(rounds[0])
    if np.all(rounds == first):
        return protected_floors(state, config, first)
    out = np.empty(len(rounds))
    for at_round in np.unique(rounds).tolist():
        hit = rounds == at_round
        out[hit] = protected_floors(state, config, at_round)[hit]
    return out


def lower_floor(state: AttackState, config: AttackConfig, slot: int, at_round: int) -> float:
    """[mu_lower - delta0]_+ of a protected item; an unobserved item imposes no bound (0)."""
    return float(protected_floors(state, config, at_round)[slot])


def _gammas_and_floors(
    state: AttackState, config: AttackConfig, item: int,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    ledger = state.ledger
    mass = float(state.mass(item))
    unattacked = int(ledger.pre_sum[item] - ledger.attack_sum[item])
    now = protected_floors(state, config, state.round)
    frozen = frozen_floors(state, config, item)
    gammas = np.maximum(unattacked - mass * now, 0.0)
    gamma_tildes = np.maximum(unattacked - mass * frozen, 0.0)
    return gammas, gamma_tildes, now, frozen


def conservative_gammas(state: AttackState, config: AttackConfig, item: int) -> Tuple[np.ndarray, np.ndarray]:
    """gamma_t(l, a) and gamma_tilde_t(l, a) for every protected a, in protected-set order.

    The ledger must already hold round t's pre-attack click of ``item`` but not its attack.
    """
    gammas, gamma_tildes, _, _ = _gammas_and_floors(state, config, item)
    return gammas, gamma_tildes


def _snapshots(state: AttackState, item: int) -> Tuple[BoundSnapshot, ...]:
    out = []
    for j, a in enumerate(state.protected):
        at_round = int(state.timestamps[item, j])
        mean, pulls = stats_at(state, j, at_round)
        out.append(BoundSnapshot(item=int(a), round=at_round, post_mean=mean, pulls=pulls))
    return tuple(out)


def cal_alpha(state: AttackState, config: AttackConfig, item: int, pre_click: int) -> int:
    """Attack value of an item outside the protected set for the current round.

    If the largest gamma fits under the pre-attack click it is used and every h[l, a] moves
    to the current round; otherwise the largest gamma_tilde is used and the timestamps stay.
    """
    t = state.round
    gammas, gamma_tildes, now, frozen = _gammas_and_floors(state, config, item)

    gamma_max = float(gammas.max())
    if gamma_max <= pre_click:
        alpha = ceil_alpha(gamma_max)
        state.timestamps[item, :] = t
        state.take_snapshot()
        advanced = True
        bound = now
    else:
        alpha = ceil_alpha(float(gamma_tildes.max()))
        advanced = False
        bound = frozen

    if not 0 <= alpha <= pre_click:
        raise FeasibilityError("conservative attack value exceeds the pre-attack click",
                               round=t, item=item, alpha=alpha, pre_click=pre_click,
                               gamma_max=gamma_max, gamma_tilde_max=float(gamma_tildes.max()))

    post_sum = int(state.ledger.pre_sum[item] - state.ledger.attack_sum[item]) - alpha
    mass = float(state.mass(item))
    _audit_inequality(state, post_sum, mass, bound)

    if state.record_audits:
        state.audits.append(AttackAudit(
            item=item,
            pre_reward=pre_click,
            alpha=alpha,
            post_mean_after=post_sum / mass,
            gammas=tuple(gammas.tolist()),
            gamma_tildes=tuple(gamma_tildes.tolist()),
            advanced=advanced,
            snapshots_after=_snapshots(state, item),
        ))
    return alpha


def _audit_inequality(state: AttackState, post_sum: int, mass: float, floors: np.ndarray) -> None:
    """Online check of post_sum_l <= mass_l [mu_lower_a(h[l, a]) - delta0]_+ for every protected a.

    ``floors`` are the floors at the timestamps h[l, a] as they stand after the attack.
    """
    state.conservative_checks += 1
    if post_sum > mass * float(floors.min()) + CHECK_TOLERANCE:
        state.conservative_violations += 1
