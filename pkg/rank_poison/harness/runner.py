"""
Experiment orchestration.

A replication wires environment, learner and attacker together for T rounds:

    learner chooses -> environment draws r0 -> attacker returns r -> learner updates on r

Every source of randomness is a labelled stream derived from ``base_seed`` and the replication
index, so a replication is reproducible on its own and strategies compared on the same seed see
the same environment draws for as long as their lists coincide.
"""
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import ValidationError

from ..attacks import build_attacker
from ..core.config import settings
from ..core.errors import ConfigError
from ..core.logger import get_logger
from ..core.rng import rng_stream
from ..core.stats import BetaParams
from ..env.click_models import build_env, draw_feedback
from ..learners import BIAS_CORRECTED, build_learner
from ..schemas.attack import AttackConfig
from ..schemas.enums import AttackStrategy, ClickModel, SweepParam
from ..schemas.env import EnvModel
from ..schemas.experiment import ExperimentSpec, InlineMeans, MovieLensMeans, SweepSpec, UniformMeans
from ..schemas.results import BoundChecks, InstanceInfo, Metrics, RoundRecord, Summary
from .aggregate import aggregate, relative_figures
from .checks import confidence_event_broken, pull_bound_violations
from .movielens import ingest_movielens, means_digest
from .theory import theoretical_bounds

logger = get_logger(__name__)

FULL_LOG_HORIZON = 10_000


def logging_grid(horizon: int, log_every: Optional[int] = None) -> List[int]:
    """Rounds at which metrics are logged; the final round is always included."""
    stride = log_every or (1 if horizon <= FULL_LOG_HORIZON else math.ceil(horizon / FULL_LOG_HORIZON))
    grid = list(range(stride, horizon + 1, stride))
    if not grid or grid[-1] != horizon:
        grid.append(horizon)
    return grid


def resolve_means(spec: ExperimentSpec, replication: int) -> np.ndarray:
    source = spec.env.means
    if isinstance(source, InlineMeans):
        return np.asarray(source.means, dtype=np.float64)
    if isinstance(source, UniformMeans):
        label = f"means/{replication}" if source.resample else "means"
        rng = rng_stream(spec.base_seed, label)
        return rng.uniform(source.low, source.high, size=source.num_items)
    if isinstance(source, MovieLensMeans):
        path = source.ratings_path or settings.MOVIELENS_RATINGS
        if not path:
            raise ConfigError("movielens means need ratings_path or MOVIELENS_RATINGS")
        return ingest_movielens(path, source.num_items, source.threshold)
    raise ConfigError(f"unknown means source {source!r}")


def select_protected(spec: ExperimentSpec, replication: int) -> Tuple[int, ...]:
    """a*: pinned, the targets alone for single-arm runs, else targets plus random fillers."""
    targets = spec.targets
    if spec.attack.protected_set is not None:
        return tuple(sorted(spec.attack.protected_set))
    if spec.env.click_model == ClickModel.SINGLE_ARM:
        return tuple(sorted(targets))
    others = np.setdiff1d(np.arange(spec.num_items), targets)
    rng = rng_stream(spec.base_seed, f"protected/{replication}")
    fillers = rng.choice(others, size=spec.env.list_len - len(targets), replace=False)
    return tuple(sorted(int(a) for a in (*targets, *fillers.tolist())))


def build_instance(spec: ExperimentSpec, replication: int) -> Tuple[EnvModel, AttackConfig]:
    """Environment and attacker parameters of one replication."""
    means = resolve_means(spec, replication)
    try:
        env = build_env(spec.env.click_model, means, spec.env.list_len,
                        kappa=spec.env.kappa, position_bias=spec.env.position_bias)
        config = AttackConfig(
            delta0=spec.attack.delta0,
            beta_params=BetaParams(num_items=spec.num_items, delta=spec.attack.delta),
            targets=tuple(spec.targets),
            protected_set=select_protected(spec, replication),
        )
    except ValidationError as exc:
        raise ConfigError("invalid instance", name=spec.name, reason=str(exc)) from exc
    return env, config


def instance_info(env: EnvModel, config: AttackConfig) -> InstanceInfo:
    return InstanceInfo(
        means=list(env.means),
        kappa=list(env.kappa),
        targets=list(config.targets),
        protected_set=list(config.protected_set),
        gaps=env.gaps(config.target).tolist(),
        p_star=env.p_star,
    )


@dataclass
class ReplicationResult:
    metrics: Metrics
    trace: Optional[List[RoundRecord]] = None


def run_replication(spec: ExperimentSpec, replication: int, record_trace: Optional[bool] = None) -> ReplicationResult:
    """Run T rounds of one replication; deterministic given (base_seed, replication)."""
    record_trace = spec.record_trace if record_trace is None else record_trace
    env, config = build_instance(spec, replication)
    num_items, horizon = spec.num_items, spec.horizon
    strategy = spec.attack.strategy

    learner = build_learner(spec.learner, num_items, spec.env.list_len, epsilon=spec.epsilon,
                            kappa=env.kappa_array, pbm_mean=spec.pbm_mean)
    attacker = build_attacker(strategy, config, env.kind,
                              rng=rng_stream(spec.base_seed, f"attacker/{replication}"),
                              record_audits=record_trace,
                              kappa=env.kappa_array if spec.pbm_mean == BIAS_CORRECTED else None)
    env_rng = rng_stream(spec.base_seed, f"env/{replication}")

    grid = logging_grid(horizon, spec.log_every)
    targets = np.asarray(config.targets, dtype=np.int64)
    means = env.means_array
    best = env.expected_clicks(env.optimal_action())
    check_pull_bound = strategy == AttackStrategy.UCB_ATTACK

    chosen = 0
    per_target = np.zeros(len(targets), dtype=np.int64)
    regret = 0.0
    checks = BoundChecks(pull_bound_checked=check_pull_bound)
    series: Dict[str, list] = {"chosen_count": [], "chosen_ratio": [], "cost": [], "regret": []}
    trace: Optional[List[RoundRecord]] = [] if record_trace else None
    next_log = 0

    logger.info(f"Replication {replication} of '{spec.name}': {strategy.value} vs {spec.learner.value}, "
                f"L={num_items}, K={spec.env.list_len}, T={horizon}")

    for t in range(1, horizon + 1):
        action = learner.choose()
        pre = draw_feedback(env, action, env_rng)
        outcome = attacker.attack(action, pre)
        learner.update(action, outcome.feedback)

        present = np.isin(targets, action)
        per_target += present
        if present.all():
            chosen += 1
        regret += best - env.expected_clicks(action)

        if checks.event_e and t > num_items:
            items = np.arange(num_items) if t == num_items + 1 else action
            if confidence_event_broken(attacker.state.ledger, means, config.beta_params, items):
                checks.event_e = False

        if trace is not None:
            trace.append(RoundRecord(
                round=t,
                action=action,
                pre_clicks=pre.clicks,
                alpha=outcome.alpha,
                post_clicks=outcome.feedback.clicks,
                click_pos=pre.click_pos,
                post_click_pos=outcome.feedback.click_pos,
                audits=outcome.audits,
            ))

        if t == grid[next_log]:
            series["chosen_count"].append(chosen)
            series["chosen_ratio"].append(chosen / t)
            series["cost"].append(attacker.state.cumulative_cost)
            series["regret"].append(regret)
            if check_pull_bound and t >= num_items:
                checks.pull_bound_violations += pull_bound_violations(
                    learner.state.ledger.pulls, config.target, t, config.delta0)
            next_log += 1

    checks.conservative_checked_rounds = attacker.state.conservative_checks
    checks.conservative_violations = attacker.state.conservative_violations
    if checks.conservative_violations:
        logger.warning(f"Replication {replication}: {checks.conservative_violations} attacked rounds "
                       f"broke the conservative inequality")
    if check_pull_bound and checks.event_e and checks.pull_bound_violations:
        logger.warning(f"Replication {replication}: pull bound violated {checks.pull_bound_violations} times")

    metrics = Metrics(
        replication=replication,
        grid=grid,
        per_arm_pulls=learner.state.ledger.pulls.tolist(),
        per_arm_recommendations=learner.state.ledger.recommended.tolist(),
        per_target_chosen=per_target.tolist(),
        checks=checks,
        instance=instance_info(env, config),
        **series,
    )
    logger.info(f"Replication {replication} finished: chosen ratio {metrics.final_ratio:.4f}, "
                f"cost {metrics.final_cost}")
    return ReplicationResult(metrics=metrics, trace=trace)


def _run_one(args: Tuple[ExperimentSpec, int]) -> ReplicationResult:
    spec, replication = args
    return run_replication(spec, replication)


@dataclass
class ExperimentResult:
    spec: ExperimentSpec
    summary: Summary
    runs: List[Metrics]
    traces: List[Optional[List[RoundRecord]]] = field(default_factory=list)


def run_experiment(spec: ExperimentSpec, jobs: Optional[int] = None) -> ExperimentResult:
    """All replications of a spec, aggregated in replication order."""
    jobs = jobs or settings.DEFAULT_JOBS
    tasks = [(spec, r) for r in range(spec.replications)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as pool:
            results = list(pool.map(_run_one, tasks))
    else:
        results = [_run_one(task) for task in tasks]

    runs = [r.metrics for r in results]
    env, config = build_instance(spec, 0)
    bounds = theoretical_bounds(env, spec.attack.strategy, config.target, spec.horizon,
                                spec.attack.delta0, spec.attack.delta, spec.epsilon)
    summary = aggregate(runs, label=spec.attack.strategy.value, instance=runs[0].instance, bounds=bounds)
    summary.means_digest = means_digest([m for run in runs for m in run.instance.means])
    logger.info(f"'{spec.name}' ({summary.label}): final chosen ratio {summary.final_ratio_mean:.4f} "
                f"± {summary.final_ratio_std:.4f}, final cost {summary.final_cost_mean:.1f} "
                f"± {summary.final_cost_std:.1f} over {summary.replications} replications")
    return ExperimentResult(spec=spec, summary=summary, runs=runs, traces=[r.trace for r in results])


def revalidate(spec: ExperimentSpec, **changes) -> ExperimentSpec:
    """Copy of ``spec`` with nested changes applied, validated again as a whole."""
    data = spec.model_dump(mode="json")
    for dotted, value in changes.items():
        node = data
        *parents, leaf = dotted.split("__")
        for key in parents:
            node = node[key]
        node[leaf] = value
    try:
        return ExperimentSpec.model_validate(data)
    except ValidationError as exc:
        raise ConfigError("invalid experiment", name=spec.name, reason=str(exc)) from exc


def with_strategy(spec: ExperimentSpec, strategy: AttackStrategy) -> ExperimentSpec:
    return revalidate(spec, attack__strategy=AttackStrategy(strategy).value)


def strategy_specs(spec: ExperimentSpec, strategies: Sequence[AttackStrategy]) -> Dict[str, ExperimentSpec]:
    """One spec per strategy; every incompatible strategy is reported at once."""
    strategies = [AttackStrategy(s) for s in strategies]
    if len(set(strategies)) != len(strategies):
        raise ConfigError("strategies must be distinct", strategies=[s.value for s in strategies])
    specs, offenders = {}, []
    for strategy in strategies:
        try:
            specs[strategy.value] = with_strategy(spec, strategy)
        except ConfigError:
            offenders.append(strategy.value)
    if offenders:
        raise ConfigError("strategies incompatible with the click model",
                          model=spec.env.click_model.value, offenders=offenders)
    return specs


@dataclass
class ComparisonResult:
    results: Dict[str, ExperimentResult]
    relative: List[Dict[str, object]]

    @property
    def summaries(self) -> Dict[str, Summary]:
        return {label: r.summary for label, r in self.results.items()}


def run_comparison(spec: ExperimentSpec, strategies: Sequence[AttackStrategy],
                   jobs: Optional[int] = None) -> ComparisonResult:
    """Paired runs of several strategies on identical seeds."""
    if len(strategies) < 2:
        raise ConfigError("compare needs at least two strategies", strategies=[str(s) for s in strategies])
    specs = strategy_specs(spec, strategies)
    results = {label: run_experiment(s, jobs) for label, s in specs.items()}
    relative = relative_figures({label: r.summary for label, r in results.items()})
    return ComparisonResult(results=results, relative=relative)


def apply_sweep_value(spec: ExperimentSpec, param: SweepParam, value: float) -> ExperimentSpec:
    """Spec with one grid coordinate set."""
    param = SweepParam(param)
    if param == SweepParam.MU_TARGET:
        if not isinstance(spec.env.means, InlineMeans):
            raise ConfigError("mu_target sweeps need inline means")
        means = list(spec.env.means.means)
        means[spec.targets[0]] = value
        return revalidate(spec, env__means__means=means)
    if param == SweepParam.DELTA0:
        return revalidate(spec, attack__delta0=value)
    if param == SweepParam.MEAN_RANGE:
        if not isinstance(spec.env.means, UniformMeans):
            raise ConfigError("x sweeps need uniform means")
        return revalidate(spec, env__means__high=value)
    return revalidate(spec, epsilon=value)


@dataclass
class SweepResult:
    param: SweepParam
    values: List[float]
    rows: List[Dict[str, object]]
    relative: List[Dict[str, object]]
    summaries: Dict[str, List[Summary]]


def run_sweep(spec: ExperimentSpec, sweep: SweepSpec, strategies: Optional[Sequence[AttackStrategy]] = None,
              jobs: Optional[int] = None) -> SweepResult:
    """One aggregated run per grid point and strategy."""
    strategies = list(strategies) if strategies else [spec.attack.strategy]
    base_specs = strategy_specs(spec, strategies)
    rows, relative = [], []
    summaries: Dict[str, List[Summary]] = {label: [] for label in base_specs}
    for value in sweep.values:
        point: Dict[str, Summary] = {}
        for label, base in base_specs.items():
            result = run_experiment(apply_sweep_value(base, sweep.param, value), jobs)
            summary = result.summary
            point[label] = summary
            summaries[label].append(summary)
            rows.append({
                "param_value": value,
                "strategy": label,
                "final_cost_mean": summary.final_cost_mean,
                "final_cost_std": summary.final_cost_std,
                "final_ratio_mean": summary.final_ratio_mean,
                "final_ratio_std": summary.final_ratio_std,
                "final_chosen_mean": summary.final_chosen_mean,
                "final_chosen_std": summary.final_chosen_std,
            })
        if len(point) > 1:
            relative.extend({"param_value": value, **row} for row in relative_figures(point))
    return SweepResult(param=SweepParam(sweep.param), values=list(sweep.values), rows=rows,
                       relative=relative, summaries=summaries)
