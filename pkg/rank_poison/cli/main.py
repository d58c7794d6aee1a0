"""
Command-line entry point.

    rank-poison run      --preset fig1-synthetic-pbm --T 20000 --seed 7
    rank-poison compare  --config configs/pbm_compare.json --strategies pbm_attack,trivialK
    rank-poison sweep    --preset fig4-two-armed --grid mu_target=0.03,0.09,0.15
    rank-poison ingest   --ratings ml-20m/ratings.csv --L 100
    rank-poison presets  [NAME]

The resolved configuration is printed to stdout as JSON before anything runs. Exit status is 0
on success, 2 for configuration errors, 3 for IO errors and 4 when a simulation invariant breaks.
"""
import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from ..core.config import settings
from ..core.errors import EXIT_CONFIG, EXIT_OK, ConfigError, RankPoisonError
from ..core.logger import get_logger, setup_logging
from ..harness import emit_outputs, emit_sweep, run_comparison, run_experiment, run_sweep
from ..harness.movielens import means_digest, movie_means, read_ratings
from ..harness.outputs import write_csv
from ..schemas.enums import AttackStrategy, OutputFormat, SweepParam
from ..schemas.experiment import SweepSpec
from .presets import PRESET_DOCUMENTS, ExperimentConfig, get_preset, load_config, parse_config, preset_names

logger = get_logger(__name__)


def _csv_list(text: str) -> List[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def parse_grid(grids: Optional[Sequence[str]]) -> Optional[SweepSpec]:
    """``name=v1,v2,...``; exactly one parameter."""
    if not grids:
        return None
    if len(grids) > 1 or ";" in grids[0] or grids[0].count("=") != 1:
        raise ConfigError("multi-dimensional grids are not supported", grid=list(grids))
    name, _, values = grids[0].partition("=")
    try:
        param = SweepParam(name.strip())
    except ValueError as exc:
        raise ConfigError(f"unknown sweep parameter '{name}'",
                          allowed=", ".join(p.value for p in SweepParam)) from exc
    try:
        numbers = [float(v) for v in _csv_list(values)]
    except ValueError as exc:
        raise ConfigError("grid values must be numbers", grid=grids[0]) from exc
    if not numbers:
        raise ConfigError("empty grid", grid=grids[0])
    return SweepSpec(param=param, values=numbers)


def parse_strategies(text: Optional[str]) -> List[AttackStrategy]:
    if not text:
        return []
    strategies = []
    for name in _csv_list(text):
        try:
            strategies.append(AttackStrategy(name))
        except ValueError as exc:
            raise ConfigError(f"unknown strategy '{name}'",
                              allowed=", ".join(s.value for s in AttackStrategy)) from exc
    return strategies


def _override_spec(spec: Dict[str, Any], args: argparse.Namespace) -> Dict[str, Any]:
    """Apply flag overrides to a dumped spec."""
    if args.T is not None:
        spec["horizon"] = args.T
    if args.L is not None:
        means = spec["env"]["means"]
        if means["source"] == "inline":
            if len(means["means"]) != args.L:
                raise ConfigError("--L cannot resize inline means", inline=len(means["means"]), L=args.L)
        else:
            means["num_items"] = args.L
    if args.K is not None:
        spec["env"]["list_len"] = args.K
    if args.seed is not None:
        spec["base_seed"] = args.seed
    if args.delta0 is not None:
        spec["attack"]["delta0"] = args.delta0
    if args.delta is not None:
        spec["attack"]["delta"] = args.delta
    if args.epsilon is not None:
        spec["epsilon"] = args.epsilon
    if args.strategy is not None:
        spec["attack"]["strategy"] = args.strategy
    if args.replications is not None:
        spec["replications"] = args.replications
    if args.log_every is not None:
        spec["log_every"] = args.log_every
    if args.name is not None:
        spec["name"] = args.name
    return spec


def resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    """Config file or preset with every flag override applied, validated as a whole."""
    if args.config and args.preset:
        raise ConfigError("use either --config or --preset")
    base = load_config(args.config) if args.config else get_preset(args.preset)
    document = base.model_dump(mode="json")
    document["spec"] = _override_spec(document["spec"], args)
    strategies = parse_strategies(getattr(args, "strategies", None))
    if strategies:
        document["strategies"] = [s.value for s in strategies]
    grid = parse_grid(getattr(args, "grid", None))
    if grid is not None:
        document["sweeps"] = [grid.model_dump(mode="json")]
    return parse_config(document)


def _print_json(document: Any) -> None:
    print(json.dumps(document, indent=2))
    sys.stdout.flush()


def _out_dir(args: argparse.Namespace, config: ExperimentConfig) -> Path:
    return Path(args.out) if args.out else Path(settings.OUTPUT_DIR) / config.spec.name


def cmd_run(args: argparse.Namespace) -> int:
    config = resolve_config(args)
    _print_json(config.spec.model_dump(mode="json"))
    result = run_experiment(config.spec, jobs=args.jobs)
    emit_outputs({result.summary.label: result}, _out_dir(args, config), args.formats)
    summary = result.summary
    logger.info(f"T - N_L(T) = {config.spec.horizon - summary.final_chosen_mean:.1f}, "
                f"C(T) = {summary.final_cost_mean:.1f}")
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    config = resolve_config(args)
    strategies = config.strategies
    if len(strategies) < 2:
        raise ConfigError("compare needs at least two strategies (--strategies a,b)",
                          strategies=[s.value for s in strategies])
    _print_json(config.model_dump(mode="json"))
    comparison = run_comparison(config.spec, strategies, jobs=args.jobs)
    emit_outputs(comparison.results, _out_dir(args, config), args.formats, relative=comparison.relative)
    for row in comparison.relative:
        logger.info(f"{row['numerator']} / {row['denominator']}: relative cost {row['relative_cost']}, "
                    f"relative chosen {row['relative_chosen']}")
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    config = resolve_config(args)
    if not config.sweeps:
        raise ConfigError("sweep needs a grid (--grid name=v1,v2,...)")
    _print_json(config.model_dump(mode="json"))
    out = _out_dir(args, config)
    strategies = config.strategies or [config.spec.attack.strategy]
    for sweep in config.sweeps:
        result = run_sweep(config.spec, sweep, strategies, jobs=args.jobs)
        target = out if len(config.sweeps) == 1 else out / sweep.param.value
        emit_sweep(result, target, args.formats, name=config.spec.name)
    return EXIT_OK


def cmd_ingest(args: argparse.Namespace) -> int:
    ratings = args.ratings or settings.MOVIELENS_RATINGS
    if not ratings:
        raise ConfigError("ingest needs --ratings or MOVIELENS_RATINGS")
    frame = read_ratings(ratings)
    table = movie_means(frame, args.L, args.threshold)
    means = table["mean"].tolist()
    _print_json({
        "ratings": str(ratings),
        "num_items": args.L,
        "threshold": args.threshold,
        "movie_ids": table["movieId"].tolist(),
        "means": means,
        "digest": means_digest(means),
    })
    if args.out:
        write_csv(table, Path(args.out))
    return EXIT_OK


def cmd_presets(args: argparse.Namespace) -> int:
    if args.name:
        _print_json(get_preset(args.name).model_dump(mode="json"))
        return EXIT_OK
    for name in preset_names():
        print(f"{name}: {PRESET_DOCUMENTS[name]['description']}")
    return EXIT_OK


def _add_experiment_flags(parser: argparse.ArgumentParser) -> None:
    source = parser.add_argument_group("configuration")
    source.add_argument("--config", help="JSON experiment config")
    source.add_argument("--preset", help=f"Shipped preset ({', '.join(preset_names())})")
    source.add_argument("--name", help="Experiment name (also the default output subdirectory)")

    overrides = parser.add_argument_group("overrides")
    overrides.add_argument("--T", type=int, help="Horizon")
    overrides.add_argument("--L", type=int, help="Number of items")
    overrides.add_argument("--K", type=int, help="List length")
    overrides.add_argument("--seed", type=int, help="Base seed")
    overrides.add_argument("--delta0", type=float, help="Attack margin")
    overrides.add_argument("--delta", type=float, help="Confidence parameter")
    overrides.add_argument("--epsilon", type=float, help="PBM-UCB exploration parameter")
    overrides.add_argument("--strategy", help="Attack strategy of the spec")
    overrides.add_argument("--replications", type=int, help="Number of replications")
    overrides.add_argument("--log-every", type=int, help="Metrics logging stride")

    outputs = parser.add_argument_group("outputs")
    outputs.add_argument("--out", help=f"Output directory (default {settings.OUTPUT_DIR}/<name>)")
    outputs.add_argument("--formats", type=_csv_list, default=[f.value for f in OutputFormat],
                         help="Comma-separated subset of csv,json,plot")
    outputs.add_argument("--jobs", type=int, default=settings.DEFAULT_JOBS,
                         help="Parallel replications")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=settings.APP_NAME,
        description="Reward-poisoning attacks on online learning to rank",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.APP_VERSION}")
    parser.add_argument("--log-level", default=None, help="Overrides LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Run one experiment")
    _add_experiment_flags(run)
    run.set_defaults(handler=cmd_run)

    compare = sub.add_parser("compare", help="Paired runs of several strategies")
    _add_experiment_flags(compare)
    compare.add_argument("--strategies", help="Comma-separated strategies")
    compare.set_defaults(handler=cmd_compare)

    sweep = sub.add_parser("sweep", help="One-dimensional parameter sweep")
    _add_experiment_flags(sweep)
    sweep.add_argument("--strategies", help="Comma-separated strategies run at every grid point")
    sweep.add_argument("--grid", action="append", help="name=v1,v2,... over mu_target, delta0, x or epsilon")
    sweep.set_defaults(handler=cmd_sweep)

    ingest = sub.add_parser("ingest", help="Derive click probabilities from MovieLens ratings")
    ingest.add_argument("--ratings", help="ratings.csv (default MOVIELENS_RATINGS)")
    ingest.add_argument("--L", type=int, required=True, help="Number of movies")
    ingest.add_argument("--threshold", type=float, default=4.0, help="Ratings at or above count as clicks")
    ingest.add_argument("--out", help="Write the per-movie table to this CSV")
    ingest.set_defaults(handler=cmd_ingest)

    presets = sub.add_parser("presets", help="List presets or print one")
    presets.add_argument("name", nargs="?", help="Preset to print")
    presets.set_defaults(handler=cmd_presets)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(level=args.log_level)

    if args.command in ("run", "compare", "sweep"):
        if not args.config and not args.preset:
            sub_usage = f"{parser.prog} {args.command}: error: one of --config or --preset is required"
            parser.print_usage(sys.stderr)
            print(sub_usage, file=sys.stderr)
            return EXIT_CONFIG
        try:
            args.formats = [OutputFormat(f) for f in args.formats]
        except ValueError:
            print(f"error: unknown output format in {args.formats}", file=sys.stderr)
            return EXIT_CONFIG

    try:
        return args.handler(args)
    except RankPoisonError as exc:
        print(f"error: {exc.describe()}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
