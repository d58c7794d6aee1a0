from typing import Dict, List, Optional

import numpy as np

from ..core.errors import SimulationError
from ..schemas.results import InstanceInfo, Metrics, RunFinal, Summary


def run_final(metrics: Metrics) -> RunFinal:
    return RunFinal(
        replication=metrics.replication,
        chosen_count=metrics.final_chosen,
        target_misses=metrics.target_misses,
        cost=metrics.final_cost,
        chosen_ratio=metrics.final_ratio,
        regret=metrics.regret[-1],
        event_e=metrics.checks.event_e,
        pull_bound_violations=metrics.checks.pull_bound_violations,
        conservative_violations=metrics.checks.conservative_violations,
    )


def _mean_std(rows: List[List[float]]) -> tuple:
    values = np.asarray(rows, dtype=np.float64)
    return values.mean(axis=0), values.std(axis=0)


def aggregate(
    runs: List[Metrics],
    label: str = "",
    instance: Optional[InstanceInfo] = None,
    bounds: Optional[Dict[str, Optional[float]]] = None,
) -> Summary:
    """Pointwise mean and (population) standard deviation over replications.

    Runs are ordered by replication index; every run must share the same logging grid.
    """
    if not runs:
        raise SimulationError("nothing to aggregate")
    runs = sorted(runs, key=lambda m: m.replication)
    grid = runs[0].grid
    for metrics in runs[1:]:
        if metrics.grid != grid:
            raise SimulationError("replications logged on different grids",
                                  first=runs[0].replication, other=metrics.replication)

    count_mean, count_std = _mean_std([m.chosen_count for m in runs])
    ratio_mean, ratio_std = _mean_std([m.chosen_ratio for m in runs])
    cost_mean, cost_std = _mean_std([m.cost for m in runs])
    regret_mean, regret_std = _mean_std([m.regret for m in runs])
    pulls_mean, _ = _mean_std([m.per_arm_pulls for m in runs])

    return Summary(
        label=label,
        replications=len(runs),
        grid=list(grid),
        chosen_count_mean=count_mean.tolist(),
        chosen_count_std=count_std.tolist(),
        chosen_ratio_mean=ratio_mean.tolist(),
        chosen_ratio_std=ratio_std.tolist(),
        cost_mean=cost_mean.tolist(),
        cost_std=cost_std.tolist(),
        regret_mean=regret_mean.tolist(),
        regret_std=regret_std.tolist(),
        final_ratio_mean=float(ratio_mean[-1]),
        final_ratio_std=float(ratio_std[-1]),
        final_cost_mean=float(cost_mean[-1]),
        final_cost_std=float(cost_std[-1]),
        final_chosen_mean=float(count_mean[-1]),
        final_chosen_std=float(count_std[-1]),
        per_arm_pulls_mean=pulls_mean.tolist(),
        runs=[run_final(m) for m in runs],
        instance=instance or runs[0].instance,
        bounds=bounds or {},
    )


def relative_figures(summaries: Dict[str, Summary]) -> List[Dict[str, object]]:
    """cost and target-pull ratios at T for every ordered pair of strategies."""
    rows = []
    for numerator, a in summaries.items():
        for denominator, b in summaries.items():
            if numerator == denominator:
                continue
            rows.append({
                "numerator": numerator,
                "denominator": denominator,
                "relative_cost": a.final_cost_mean / b.final_cost_mean if b.final_cost_mean else None,
                "relative_chosen": a.final_chosen_mean / b.final_chosen_mean if b.final_chosen_mean else None,
            })
    return rows
