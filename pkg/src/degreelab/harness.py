"""Reproducible Monte Carlo experiment harness.

An experiment is a declarative config (what to sample, how often, with which
seed) that expands into independent trials.  Trial i draws its own random
generator from the campaign seed via a 64-bit mixing function, so results are
byte-identical for a fixed config and seed regardless of the degree of
parallelism, and trials can run in a process pool.

Each trial yields a TrialRecord with the observed statistic, the predicted
window (when the experiment has one), and auxiliary data.  Records can be
emitted as CSV (columns: trial,observed,lo,hi,in_interval,aux_json) or JSON
(records plus a summary object).
"""

from __future__ import annotations

import csv
import json
import math
import os
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Sequence

from degreelab import concentration as conc
from degreelab import dense_ops
from degreelab.balls_bins import loads as bin_loads
from degreelab.balls_bins import max_load, sample_locations
from degreelab.graphs import (
    SimpleGraph,
    components,
    decompose,
    max_degree,
    peeled_core,
)
from degreelab.pruefer import sample_forest_degrees, sample_uniform_forest
from degreelab.rng import derive_rng
from degreelab.samplers import (
    RejectionLimitError,
    complex_part_from_forest,
    sample_gnm_arrays,
    validate_core,
)

JOBS_ENV_VAR = "DEGREELAB_JOBS"

EXPERIMENTS = (
    "bins_concentration",
    "gnm_maxdegree",
    "noncomplex_maxdegree",
    "forest_maxdegree",
    "complexpart_maxdegree",
    "root_gap",
    "decomposition_stats",
    "dense_ratio",
)


@dataclass(frozen=True)
class ExperimentConfig:
    """Declarative description of one Monte Carlo campaign.

    ``n`` may be a single size or a grid of sizes (trials are repeated per
    grid point).  ``m`` defaults to n // 2 where an edge count is needed,
    ``balls`` defaults to n, ``t`` defaults to 1 for forest_maxdegree and to
    ceil(n^0.7) for root_gap.  ``core`` is an edge list on [v] for
    complexpart_maxdegree, which uses ``q`` instead of ``n``.
    """

    experiment: str
    n: int | tuple[int, ...] | None = None
    trials: int = 1
    eps: float = 0.25
    seed: int = 0
    m: int | None = None
    balls: int | None = None
    t: int | None = None
    q: int | None = None
    core: tuple[tuple[int, int], ...] | None = None
    max_attempts: int = 10_000
    min_hit_rate: float | None = None
    planar_only: bool = True

    def __post_init__(self) -> None:
        if self.experiment not in EXPERIMENTS:
            raise ValueError(
                f"unknown experiment {self.experiment!r}; expected one of {EXPERIMENTS}"
            )
        if self.trials < 1:
            raise ValueError(f"trials must be a positive integer, got {self.trials}")
        if self.eps <= 0:
            raise ValueError(f"eps must be positive, got {self.eps}")
        if isinstance(self.n, (list, tuple)):
            object.__setattr__(self, "n", tuple(int(v) for v in self.n))
        if self.core is not None:
            object.__setattr__(
                self, "core", tuple((int(u), int(v)) for u, v in self.core)
            )

    @property
    def n_grid(self) -> tuple[int | None, ...]:
        if self.n is None:
            return (None,)
        if isinstance(self.n, tuple):
            return self.n
        return (self.n,)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ExperimentConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config fields: {sorted(unknown)}")
        return cls(**data)

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        if isinstance(data["n"], tuple):
            data["n"] = list(data["n"])
        if data["core"] is not None:
            data["core"] = [list(e) for e in data["core"]]
        return data


@dataclass(frozen=True)
class TrialRecord:
    """One trial outcome: observed statistic, predicted window, extras.

    ``observed`` is None when the trial's sampler exhausted its attempt
    budget; such trials never count as in-window.  ``lo``/``hi`` are None for
    experiments without a prediction, in which case any observed value is
    in-window.
    """

    trial_index: int
    observed: int | float | None
    lo: int | None
    hi: int | None
    in_interval: bool
    auxiliary: dict[str, Any] = field(default_factory=dict)


def _record(
    trial_index: int,
    observed: int | float | None,
    lo: int | None,
    hi: int | None,
    auxiliary: dict[str, Any],
) -> TrialRecord:
    in_interval = observed is not None
    if in_interval and lo is not None and observed < lo:
        in_interval = False
    if in_interval and hi is not None and observed > hi:
        in_interval = False
    return TrialRecord(
        trial_index=trial_index,
        observed=observed,
        lo=lo,
        hi=hi,
        in_interval=in_interval,
        auxiliary=auxiliary,
    )


@dataclass(frozen=True)
class ExperimentResult:
    records: tuple[TrialRecord, ...]
    summary: dict[str, Any]


# ---------------------------------------------------------------------------
# Per-experiment planning (windows precomputed once per grid point)
# ---------------------------------------------------------------------------


def _edge_count(cfg: ExperimentConfig, n: int) -> int:
    return cfg.m if cfg.m is not None else n // 2


def _plan_for(cfg: ExperimentConfig, n: int | None) -> dict[str, Any]:
    kind = cfg.experiment
    if n is None and kind != "complexpart_maxdegree":
        raise ValueError(f"experiment {kind!r} needs n")
    if kind == "bins_concentration":
        balls = cfg.balls if cfg.balls is not None else n
        c = conc.concentration_point(n, balls)
        return {
            "n": n,
            "balls": balls,
            "lo": math.floor(c - cfg.eps),
            "hi": math.floor(c + cfg.eps),
        }
    if kind == "gnm_maxdegree":
        m = _edge_count(cfg, n)
        c = conc.concentration_point(n, 2 * m)
        return {
            "n": n,
            "m": m,
            "lo": math.floor(c - cfg.eps),
            "hi": math.floor(c + cfg.eps),
        }
    if kind == "noncomplex_maxdegree":
        m = _edge_count(cfg, n)
        interval = conc.predicted_interval_sparse(n, m, cfg.eps)
        return {
            "n": n,
            "m": m,
            "lo": interval.delta_star,
            "hi": interval.delta_star + 1,
        }
    if kind == "forest_maxdegree":
        t = cfg.t if cfg.t is not None else 1
        if not 1 <= t < n:
            raise ValueError(f"forest_maxdegree needs 1 <= t < n, got t={t}, n={n}")
        c = conc.balanced_concentration(n)
        return {
            "n": n,
            "t": t,
            "lo": math.floor(c - cfg.eps) + 1,
            "hi": math.floor(c + cfg.eps) + 1,
        }
    if kind == "complexpart_maxdegree":
        if cfg.q is None or cfg.core is None:
            raise ValueError("complexpart_maxdegree needs both q and core")
        core_n = max(v for e in cfg.core for v in e)
        core = SimpleGraph.from_edges(core_n, cfg.core)
        validate_core(core)
        c = conc.balanced_concentration(cfg.q)
        return {
            "q": cfg.q,
            "core": core,
            "lo": math.floor(c - cfg.eps) + 1,
            "hi": math.floor(c + cfg.eps) + 1,
        }
    if kind == "root_gap":
        t = cfg.t if cfg.t is not None else math.ceil(n**0.7)
        if not 1 <= t < n:
            raise ValueError(f"root_gap needs 1 <= t < n, got t={t}, n={n}")
        return {"n": n, "t": t, "lo": None, "hi": None}
    if kind == "decomposition_stats":
        return {"n": n, "m": _edge_count(cfg, n), "lo": None, "hi": None}
    if kind == "dense_ratio":
        return {"n": n, "lo": None, "hi": None}
    raise ValueError(f"unknown experiment {kind!r}")


# ---------------------------------------------------------------------------
# Trial workers
# ---------------------------------------------------------------------------


def _run_trial(
    cfg: ExperimentConfig, plan: dict[str, Any], index: int
) -> TrialRecord:
    rng = derive_rng(cfg.seed, index)
    kind = cfg.experiment
    aux: dict[str, Any] = {}
    if plan.get("n") is not None and isinstance(cfg.n, tuple):
        aux["n"] = plan["n"]

    if kind == "bins_concentration":
        location = sample_locations(plan["n"], plan["balls"], rng)
        observed: int | float | None = max_load(bin_loads(location))
        return _record(index, observed, plan["lo"], plan["hi"], aux)

    if kind in ("gnm_maxdegree", "noncomplex_maxdegree"):
        try:
            _, _, load_counts, report = sample_gnm_arrays(
                plan["n"],
                plan["m"],
                rng,
                cfg.max_attempts,
                require_noncomplex=(kind == "noncomplex_maxdegree"),
            )
        except RejectionLimitError as err:
            aux.update(error="rejection_limit", attempts=err.report.attempts)
            return _record(index, None, plan["lo"], plan["hi"], aux)
        aux["attempts"] = report.attempts
        observed = int(load_counts.max()) if load_counts.size else 0
        return _record(index, observed, plan["lo"], plan["hi"], aux)

    if kind == "forest_maxdegree":
        degrees = sample_forest_degrees(plan["n"], plan["t"], rng)
        aux["max_root_degree"] = int(degrees[: plan["t"]].max())
        return _record(index, int(degrees.max()), plan["lo"], plan["hi"], aux)

    if kind == "root_gap":
        degrees = sample_forest_degrees(plan["n"], plan["t"], rng)
        gap = int(degrees.max()) - int(degrees[: plan["t"]].max())
        aux["max_degree"] = int(degrees.max())
        aux["max_root_degree"] = int(degrees[: plan["t"]].max())
        return _record(index, gap, None, None, aux)

    if kind == "complexpart_maxdegree":
        core: SimpleGraph = plan["core"]
        forest = sample_uniform_forest(plan["q"], core.order, rng)
        graph = complex_part_from_forest(core, forest)
        observed = max_degree(graph)
        aux["max_root_degree"] = max(
            len(graph.adjacency[v]) for v in core.vertices
        )
        aux["core_recovered"] = peeled_core(graph) == core
        return _record(index, observed, plan["lo"], plan["hi"], aux)

    if kind == "decomposition_stats":
        try:
            us, vs, load_counts, report = sample_gnm_arrays(
                plan["n"], plan["m"], rng, cfg.max_attempts
            )
        except RejectionLimitError as err:
            aux.update(error="rejection_limit", attempts=err.report.attempts)
            return _record(index, None, None, None, aux)
        graph = SimpleGraph.from_arrays(plan["n"], us, vs)
        parts = decompose(graph)
        core_comp_sizes = (
            [len(c) for c in components(parts.core)] if parts.core.vertices else []
        )
        aux.update(
            attempts=report.attempts,
            core_vertices=parts.core.order,
            core_edges=parts.core.size,
            core_max_degree=max_degree(parts.core),
            largest_core_component=max(core_comp_sizes, default=0),
            qL_vertices=parts.big_complex.order,
            qS_vertices=parts.small_complex.order,
            u_vertices=parts.non_complex.order,
            u_edges=parts.non_complex.size,
        )
        return _record(index, max_degree(parts.core), None, None, aux)

    raise ValueError(f"unknown experiment {kind!r}")


def _run_indexed(args: tuple[ExperimentConfig, dict[str, Any], int]) -> TrialRecord:
    cfg, plan, index = args
    return _run_trial(cfg, plan, index)


# ---------------------------------------------------------------------------
# Campaign driver
# ---------------------------------------------------------------------------


def default_jobs() -> int:
    value = os.environ.get(JOBS_ENV_VAR)
    if value is None:
        return 1
    jobs = int(value)
    if jobs < 1:
        raise ValueError(f"{JOBS_ENV_VAR} must be a positive integer, got {value}")
    return jobs


def _dense_ratio_records(cfg: ExperimentConfig) -> list[TrialRecord]:
    n = cfg.n if isinstance(cfg.n, int) else None
    if n is None:
        raise ValueError("dense_ratio needs a single integer n")
    records = []
    for i, check in enumerate(dense_ops.sweep_ratio_bounds(n, cfg.planar_only)):
        ratio = (
            check.count_dst / check.count_src if check.count_src else None
        )
        sig = check.signature
        records.append(
            TrialRecord(
                trial_index=i,
                observed=ratio,
                lo=None,
                hi=None,
                in_interval=check.holds,
                auxiliary={
                    "m": sig.m,
                    "k": sig.k,
                    "l": sig.l,
                    "d": sig.d,
                    "count_src": check.count_src,
                    "count_dst": check.count_dst,
                    "bound": check.bound,
                    "vacuous": check.vacuous,
                },
            )
        )
    return records


def run_experiment(
    cfg: ExperimentConfig, jobs: int | None = None
) -> ExperimentResult:
    """Run all trials of a campaign and summarise them.

    Per-trial generators depend only on (seed, trial index), and records are
    ordered by trial index, so the output is identical for any ``jobs``.
    """
    if jobs is None:
        jobs = default_jobs()
    if jobs < 1:
        raise ValueError(f"jobs must be a positive integer, got {jobs}")

    if cfg.experiment == "dense_ratio":
        records = _dense_ratio_records(cfg)
        return ExperimentResult(
            records=tuple(records), summary=_summarise(cfg, records)
        )

    tasks: list[tuple[ExperimentConfig, dict[str, Any], int]] = []
    index = 0
    for n in cfg.n_grid:
        plan = _plan_for(cfg, n)
        for _ in range(cfg.trials):
            tasks.append((cfg, plan, index))
            index += 1

    if jobs == 1:
        records = [_run_indexed(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_run_indexed, tasks, chunksize=8))
    records.sort(key=lambda r: r.trial_index)
    return ExperimentResult(records=tuple(records), summary=_summarise(cfg, records))


def _summarise(cfg: ExperimentConfig, records: Sequence[TrialRecord]) -> dict[str, Any]:
    hits = sum(1 for r in records if r.in_interval)
    failures = sum(1 for r in records if r.observed is None)
    histogram: dict[str, int] = {}
    for r in records:
        key = "failed" if r.observed is None else str(r.observed)
        histogram[key] = histogram.get(key, 0) + 1
    summary: dict[str, Any] = {
        "experiment": cfg.experiment,
        "config": cfg.to_dict(),
        "trials": len(records),
        "hits": hits,
        "hit_rate": hits / len(records) if records else None,
        "failures": failures,
        "histogram": dict(sorted(histogram.items())),
    }

    if isinstance(cfg.n, tuple) and cfg.experiment != "dense_ratio":
        by_n: dict[str, Any] = {}
        per = cfg.trials
        for g, n in enumerate(cfg.n_grid):
            chunk = records[g * per : (g + 1) * per]
            observed = [r.observed for r in chunk if r.observed is not None]
            entry: dict[str, Any] = {
                "trials": len(chunk),
                "hit_rate": sum(r.in_interval for r in chunk) / len(chunk),
                "median_observed": statistics.median(observed) if observed else None,
            }
            if entry["median_observed"] is not None and n and n > math.e:
                entry["median_log_ratio"] = (
                    entry["median_observed"] * math.log(math.log(n)) / math.log(n)
                )
            by_n[str(n)] = entry
        summary["by_n"] = by_n
        medians = [
            by_n[str(n)]["median_observed"]
            for n in cfg.n_grid
            if by_n[str(n)]["median_observed"] is not None
        ]
        summary["medians_strictly_increasing"] = all(
            a < b for a, b in zip(medians, medians[1:])
        )

    if cfg.experiment == "dense_ratio":
        summary["violations"] = sum(1 for r in records if not r.in_interval)
        summary["vacuous"] = sum(1 for r in records if r.auxiliary.get("vacuous"))

    if cfg.experiment == "decomposition_stats":
        stats: dict[str, Any] = {}
        numeric_keys = (
            "core_vertices",
            "core_max_degree",
            "largest_core_component",
            "qL_vertices",
            "qS_vertices",
            "u_vertices",
            "u_edges",
        )
        ok = [r for r in records if r.observed is not None]
        for key in numeric_keys:
            values = [r.auxiliary[key] for r in ok]
            if values:
                stats[key] = {
                    "min": min(values),
                    "median": statistics.median(values),
                    "mean": sum(values) / len(values),
                    "max": max(values),
                }
        excess = [
            r.auxiliary["u_edges"] - r.auxiliary["u_vertices"] / 2 for r in ok
        ]
        if excess:
            stats["u_edge_excess"] = {
                "min": min(excess),
                "median": statistics.median(excess),
                "max": max(excess),
            }
        summary["decomposition"] = stats

    if cfg.min_hit_rate is not None and summary["hit_rate"] is not None:
        summary["min_hit_rate"] = cfg.min_hit_rate
        summary["thresholds_met"] = summary["hit_rate"] >= cfg.min_hit_rate
    else:
        summary["thresholds_met"] = None
    return summary


def decomposition_stats(
    n: int, m: int, trials: int, seed: int, max_attempts: int = 10_000
) -> ExperimentResult:
    """Decomposition statistics of uniform simple graphs with n vertices, m edges."""
    cfg = ExperimentConfig(
        experiment="decomposition_stats",
        n=n,
        m=m,
        trials=trials,
        seed=seed,
        max_attempts=max_attempts,
    )
    return run_experiment(cfg)


# ---------------------------------------------------------------------------
# Emission
# ---------------------------------------------------------------------------

CSV_COLUMNS = ("trial", "observed", "lo", "hi", "in_interval", "aux_json")


def _cell(value: int | float | None) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit(
    records: Sequence[TrialRecord],
    format: str,
    path: str,
    summary: dict[str, Any] | None = None,
) -> None:
    """Write records to ``path`` as CSV or JSON.

    CSV columns are exactly trial,observed,lo,hi,in_interval,aux_json; JSON
    output is an object with a records array and a summary object.
    """
    if format == "csv":
        with open(path, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for r in records:
                writer.writerow(
                    [
                        r.trial_index,
                        _cell(r.observed),
                        _cell(r.lo),
                        _cell(r.hi),
                        "true" if r.in_interval else "false",
                        json.dumps(r.auxiliary, sort_keys=True, separators=(",", ":")),
                    ]
                )
    elif format == "json":
        payload = {
            "records": [
                {
                    "trial": r.trial_index,
                    "observed": r.observed,
                    "lo": r.lo,
                    "hi": r.hi,
                    "in_interval": r.in_interval,
                    "auxiliary": r.auxiliary,
                }
                for r in records
            ],
            "summary": summary or {},
        }
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(payload, handle, indent=2, sort_keys=True)
            handle.write("\n")
    else:
        raise ValueError(f"format must be 'csv' or 'json', got {format!r}")


def load_records_json(path: str) -> tuple[list[TrialRecord], dict[str, Any]]:
    """Parse a JSON emission back into records and summary."""
    with open(path, "r", encoding="utf-8") as handle:
        payload = json.load(handle)
    records = [
        TrialRecord(
            trial_index=item["trial"],
            observed=item["observed"],
            lo=item["lo"],
            hi=item["hi"],
            in_interval=item["in_interval"],
            auxiliary=item["auxiliary"],
        )
        for item in payload["records"]
    ]
    return records, payload["summary"]
