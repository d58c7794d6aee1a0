"""
Experiment harness: replications, aggregation, guarantee checks, MovieLens ingestion and
result files.
"""

from .aggregate import aggregate, relative_figures, run_final
from .checks import (
    audit_holds,
    confidence_event_broken,
    pull_bound_violations,
    replay_conservative,
    replay_cost,
)
from .movielens import ingest_movielens, means_digest, movie_means, read_ratings
from .outputs import emit_outputs, emit_sweep
from .runner import (
    ComparisonResult,
    ExperimentResult,
    ReplicationResult,
    SweepResult,
    apply_sweep_value,
    build_instance,
    logging_grid,
    resolve_means,
    revalidate,
    run_comparison,
    run_experiment,
    run_replication,
    run_sweep,
    select_protected,
    with_strategy,
)
from .theory import theoretical_bounds

__all__ = [
    # Runs
    "ComparisonResult",
    "ExperimentResult",
    "ReplicationResult",
    "SweepResult",
    "apply_sweep_value",
    "build_instance",
    "logging_grid",
    "resolve_means",
    "revalidate",
    "run_comparison",
    "run_experiment",
    "run_replication",
    "run_sweep",
    "select_protected",
    "with_strategy",

    # Aggregation and checks
    "aggregate",
    "audit_holds",
    "confidence_event_broken",
    "pull_bound_violations",
    "relative_figures",
    "replay_conservative",
    "replay_cost",
    "run_final",
    "theoretical_bounds",

    # Data and files
    "emit_outputs",
    "emit_sweep",
    "ingest_movielens",
    "means_digest",
    "movie_means",
    "read_ratings",
]
