"""
Result files: per-strategy CSV curves, JSON summaries and line charts.
"""
import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402

from ..core.errors import OutputError  # noqa: E402
from ..core.logger import get_logger  # noqa: E402
from ..schemas.enums import OutputFormat  # noqa: E402
from ..schemas.results import Summary  # noqa: E402
from .runner import ExperimentResult, SweepResult  # noqa: E402

logger = get_logger(__name__)

FLOAT_FORMAT = "%.12g"


def curves_frame(summary: Summary) -> pd.DataFrame:
    """Logged curves of one strategy; std columns only when there are several replications."""
    frame = pd.DataFrame({
        "round": summary.grid,
        "chosen_count": summary.chosen_count_mean,
        "chosen_ratio": summary.chosen_ratio_mean,
        "cumulative_cost": summary.cost_mean,
        "regret": summary.regret_mean,
    })
    if summary.replications > 1:
        frame["chosen_count_std"] = summary.chosen_count_std
        frame["chosen_ratio_std"] = summary.chosen_ratio_std
        frame["cumulative_cost_std"] = summary.cost_std
        frame["regret_std"] = summary.regret_std
    return frame


def bound_check_totals(result: ExperimentResult) -> Dict[str, int]:
    runs = result.runs
    return {
        "event_e_runs": sum(m.checks.event_e for m in runs),
        "pull_bound_checked": int(any(m.checks.pull_bound_checked for m in runs)),
        "pull_bound_violations_under_e": sum(m.checks.pull_bound_violations for m in runs if m.checks.event_e),
        "pull_bound_violations": sum(m.checks.pull_bound_violations for m in runs),
        "conservative_checked_rounds": sum(m.checks.conservative_checked_rounds for m in runs),
        "conservative_violations": sum(m.checks.conservative_violations for m in runs),
    }


def summary_document(result: ExperimentResult) -> Dict[str, Any]:
    summary = result.summary
    return {
        "spec": result.spec.model_dump(mode="json"),
        "label": summary.label,
        "replications": summary.replications,
        "final": {
            "chosen_ratio_mean": summary.final_ratio_mean,
            "chosen_ratio_std": summary.final_ratio_std,
            "cost_mean": summary.final_cost_mean,
            "cost_std": summary.final_cost_std,
            "chosen_count_mean": summary.final_chosen_mean,
            "chosen_count_std": summary.final_chosen_std,
            "target_misses_mean": result.spec.horizon - summary.final_chosen_mean,
        },
        "per_arm_pulls_mean": summary.per_arm_pulls_mean,
        "bound_checks": bound_check_totals(result),
        "bounds": summary.bounds,
        "instance": summary.instance.model_dump(mode="json"),
        "means_digest": summary.means_digest,
        "runs": [run.model_dump(mode="json") for run in summary.runs],
    }


def _write_text(path: Path, text: str) -> Path:
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise OutputError(path=str(path), reason=str(exc)) from exc
    return path


def write_csv(frame: pd.DataFrame, path: Path) -> Path:
    return _write_text(path, frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n"))


def _write_json(document: Any, path: Path) -> Path:
    return _write_text(path, json.dumps(document, indent=2) + "\n")


def _prepare_dir(out_dir: Union[str, Path]) -> Path:
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OutputError(path=str(out), reason=str(exc)) from exc
    return out


def _line_chart(series: Mapping[str, Summary], values: str, ylabel: str, title: str, path: Path) -> Path:
    fig = plt.figure(figsize=(7, 4.5))
    try:
        ax = fig.add_subplot(1, 1, 1)
        for label, summary in series.items():
            mean = getattr(summary, f"{values}_mean")
            std = getattr(summary, f"{values}_std")
            ax.plot(summary.grid, mean, label=label)
            if summary.replications > 1:
                lower = [m - s for m, s in zip(mean, std)]
                upper = [m + s for m, s in zip(mean, std)]
                ax.fill_between(summary.grid, lower, upper, alpha=0.2)
        ax.set_xlabel("round")
        ax.set_ylabel(ylabel)
        ax.set_title(title)
        ax.legend()
        fig.tight_layout()
        fig.savefig(path, dpi=120)
    except OSError as exc:
        raise OutputError(path=str(path), reason=str(exc)) from exc
    finally:
        plt.close(fig)
    return path


def _formats(formats: Iterable[Union[OutputFormat, str]]) -> List[OutputFormat]:
    return [OutputFormat(f) for f in formats]


def emit_outputs(
    results: Mapping[str, ExperimentResult],
    out_dir: Union[str, Path],
    formats: Sequence[Union[OutputFormat, str]] = (OutputFormat.CSV, OutputFormat.JSON, OutputFormat.PLOT),
    relative: Optional[List[Dict[str, object]]] = None,
) -> List[Path]:
    """Write the files of a run (one strategy) or a comparison (several strategies)."""
    out = _prepare_dir(out_dir)
    formats = _formats(formats)
    summaries = {label: r.summary for label, r in results.items()}
    comparison = len(results) > 1
    written: List[Path] = []

    if OutputFormat.CSV in formats:
        for label, summary in summaries.items():
            written.append(write_csv(curves_frame(summary), out / f"{label}.csv"))
        if comparison:
            combined = pd.concat(
                [curves_frame(s).assign(strategy=label) for label, s in summaries.items()],
                ignore_index=True,
            )
            written.append(write_csv(combined, out / "comparison.csv"))

    if OutputFormat.JSON in formats:
        for label, result in results.items():
            written.append(_write_json(summary_document(result), out / f"{label}.json"))
        if comparison:
            written.append(_write_json({"strategies": list(summaries), "relative": relative or []},
                                       out / "comparison.json"))

    if OutputFormat.PLOT in formats:
        name = next(iter(results.values())).spec.name
        written.append(_line_chart(summaries, "chosen_ratio", "chosen ratio",
                                   f"{name}: target chosen ratio", out / "chosen_ratio.png"))
        written.append(_line_chart(summaries, "cost", "cumulative cost",
                                   f"{name}: cumulative attack cost", out / "cumulative_cost.png"))

    logger.info(f"Wrote {len(written)} files to {out}")
    return written


def emit_sweep(
    sweep: SweepResult,
    out_dir: Union[str, Path],
    formats: Sequence[Union[OutputFormat, str]] = (OutputFormat.CSV, OutputFormat.JSON, OutputFormat.PLOT),
    name: str = "sweep",
) -> List[Path]:
    """Grid CSV, grid JSON and a cost-vs-parameter chart."""
    out = _prepare_dir(out_dir)
    formats = _formats(formats)
    written: List[Path] = []
    param = sweep.param.value

    if OutputFormat.CSV in formats:
        written.append(write_csv(pd.DataFrame(sweep.rows), out / "sweep.csv"))
    if OutputFormat.JSON in formats:
        written.append(_write_json({"param": param, "values": sweep.values, "rows": sweep.rows,
                                    "relative": sweep.relative}, out / "sweep.json"))
    if OutputFormat.PLOT in formats:
        path = out / "sweep_cost.png"
        frame = pd.DataFrame(sweep.rows)
        fig = plt.figure(figsize=(7, 4.5))
        try:
            ax = fig.add_subplot(1, 1, 1)
            for label, group in frame.groupby("strategy", sort=False):
                ax.errorbar(group["param_value"], group["final_cost_mean"], yerr=group["final_cost_std"],
                            marker="o", capsize=3, label=label)
            ax.set_xlabel(param)
            ax.set_ylabel("final cumulative cost")
            ax.set_title(f"{name}: cost vs {param}")
            ax.legend()
            fig.tight_layout()
            fig.savefig(path, dpi=120)
        except OSError as exc:
            raise OutputError(path=str(path), reason=str(exc)) from exc
        finally:
            plt.close(fig)
        written.append(path)

    logger.info(f"Wrote {len(written)} sweep files to {out}")
    return written
