"""Replicated experiment sweeps over search configurations and error levels."""
from __future__ import annotations

import argparse
import csv
import io
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .adaptation import AdaptationPolicy
from .errors import ConfigurationError, OverlayError
from .metrics import MetricsReport, MetricsRow
from .overlay import OverlayNetwork, generate_random_topology
from .search import SearchConfig, SearchRequest, bfs_search, guided_search
from .semantic import MAX_DISTANCE, ResourceDescription, random_description

ALL_CONFIGS = tuple(c.value for c in SearchConfig)

CSV_HEADER = (
    "config", "allowable_error", "mean_average_error", "avg_success_hops",
    "failure_ratio", "swaps", "successes", "total",
)
NA = "NA"


@dataclass(frozen=True)
class ExperimentConfig:
    num_nodes: int = 300
    max_connections: int = 15
    requests_per_node: int = 50
    hop_limit: int = 10
    error_levels: tuple[float, ...] = (0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0)
    configs: tuple[str, ...] = ALL_CONFIGS
    replications: int = 1
    seed: int = 0
    snapshot_nodes: Optional[int] = 50
    out_csv: Optional[str] = None
    out_dot_prefix: Optional[str] = None

    def __post_init__(self):
        _validate(self)


def _validate(cfg: ExperimentConfig) -> None:
    def bad(key, msg):
        raise ConfigurationError(f"{key.replace('_', '-')}: {msg}")

    if cfg.num_nodes < 2:
        bad("num_nodes", f"must be >= 2, got {cfg.num_nodes}")
    if cfg.max_connections < 1:
        bad("max_connections", f"must be >= 1, got {cfg.max_connections}")
    if cfg.max_connections < 2 and max(cfg.num_nodes, cfg.snapshot_nodes or 0) > 2:
        bad("max_connections", "must be >= 2 for networks of more than two nodes")
    for key in ("requests_per_node", "hop_limit", "replications"):
        if getattr(cfg, key) < 1:
            bad(key, f"must be >= 1, got {getattr(cfg, key)}")
    levels = cfg.error_levels
    if not levels:
        bad("error_levels", "at least one level is required")
    if any(not 0.0 <= e <= MAX_DISTANCE for e in levels):
        bad("error_levels", f"every level must lie in [0, {MAX_DISTANCE}]")
    if any(b <= a for a, b in zip(levels, levels[1:])):
        bad("error_levels", "levels must be strictly ascending")
    if not cfg.configs:
        bad("configs", "at least one configuration is required")
    for c in cfg.configs:
        if c not in ALL_CONFIGS:
            bad("configs", f"unknown configuration {c!r}")
    if not 0 <= cfg.seed < 2**64:
        bad("seed", "must be a 64-bit unsigned integer")
    if cfg.snapshot_nodes is not None and cfg.snapshot_nodes < 2:
        bad("snapshot_nodes", f"must be >= 2, got {cfg.snapshot_nodes}")


# ---------------------------------------------------------------- config parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigurationError(message)


def _int(text: str) -> int:
    return int(text.strip())


def _levels(text: str) -> tuple[float, ...]:
    return tuple(float(t) for t in text.split(",") if t.strip())


def _configs(text: str) -> tuple[str, ...]:
    picked = {t.strip() for t in text.split(",") if t.strip()}
    unknown = picked.difference(ALL_CONFIGS)
    if unknown:
        raise ValueError(f"unknown configuration(s) {sorted(unknown)}")
    return tuple(c for c in ALL_CONFIGS if c in picked)


def _optional_nodes(text: str) -> Optional[int]:
    text = text.strip().lower()
    return None if text in ("", "0", "none", "off") else int(text)


_CONVERTERS = {
    "num_nodes": _int,
    "max_connections": _int,
    "requests_per_node": _int,
    "hop_limit": _int,
    "error_levels": _levels,
    "configs": _configs,
    "replications": _int,
    "seed": _int,
    "snapshot_nodes": _optional_nodes,
    "out_csv": str.strip,
    "out_dot_prefix": str.strip,
}
assert set(_CONVERTERS) == {f.name for f in fields(ExperimentConfig)}


def build_arg_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="overlaysim",
        description="Compare flooding, guided and adaptive guided search on a random overlay.",
        argument_default=argparse.SUPPRESS,
    )
    for key in _CONVERTERS:
        parser.add_argument("--" + key.replace("_", "-"), dest=key, metavar="VALUE")
    parser.add_argument("--config", dest="config_file", metavar="FILE",
                        help="file of 'key = value' lines using the flag names")
    return parser


def _convert(key: str, raw: str):
    try:
        return _CONVERTERS[key](raw)
    except ValueError as exc:
        raise ConfigurationError(f"{key.replace('_', '-')}: bad value {raw!r} ({exc})") from None


def parse_config_text(text: str) -> dict:
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"config line {lineno}: expected 'key = value'")
        key, raw = (part.strip() for part in line.split("=", 1))
        key = key.lstrip("-").replace("-", "_")
        if key not in _CONVERTERS:
            raise ConfigurationError(f"{key.replace('_', '-')}: unknown key")
        values[key] = _convert(key, raw)
    return values


def parse_config(args: Sequence[str] = (), config_text: Optional[str] = None) -> ExperimentConfig:
    """Build a config from defaults, then file values, then command-line flags."""
    ns = vars(build_arg_parser().parse_args(list(args)))
    config_file = ns.pop("config_file", None)
    if config_text is None and config_file is not None:
        try:
            config_text = Path(config_file).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigurationError(f"config: cannot read {config_file}: {exc.strerror}") from None
    values = parse_config_text(config_text) if config_text else {}
    values.update((key, _convert(key, raw)) for key, raw in ns.items())
    return ExperimentConfig(**values)


# ---------------------------------------------------------------- running


@dataclass
class ExperimentResult:
    report: MetricsReport
    initial_snapshot: Optional[OverlayNetwork] = None
    adapted_snapshot: Optional[OverlayNetwork] = None
    swaps: list = field(default_factory=list)


def replication_seeds(seed: int, replication: int) -> tuple[int, int, int]:
    """Independent (topology, requests, snapshot) seeds for one replication."""
    children = np.random.SeedSequence(seed, spawn_key=(replication,)).spawn(3)
    return tuple(int(c.generate_state(1, np.uint64)[0]) for c in children)


def request_schedule(n: int, requests_per_node: int, rng: random.Random) -> list[tuple[int, ResourceDescription]]:
    """Round-robin schedule: every node issues its k-th request before any issues its (k+1)-th."""
    return [(node, random_description(rng)) for _ in range(requests_per_node) for node in range(n)]


def run_searches(net: OverlayNetwork, schedule, mode: SearchConfig, allowable_error: float,
                 hop_limit: int, report: Optional[MetricsReport] = None,
                 policy: Optional[AdaptationPolicy] = None) -> MetricsReport:
    """Execute ``schedule`` against ``net`` in order, recording into ``report``."""
    mode = SearchConfig(mode)
    if report is None:
        report = MetricsReport()
    if mode is SearchConfig.ADAPTIVE and policy is None:
        policy = AdaptationPolicy()
    key = (mode, allowable_error)
    for origin, target in schedule:
        req = SearchRequest(origin, target, allowable_error, hop_limit)
        if mode is SearchConfig.BFS:
            report.record_outcome(key, bfs_search(net, req))
        elif mode is SearchConfig.GUIDED:
            report.record_outcome(key, guided_search(net, req))
        else:
            before = len(policy)
            outcome = guided_search(net, req, policy)
            report.record_outcome(key, outcome, swaps=len(policy) - before)
    return report


def run_replication(cfg: ExperimentConfig, replication: int) -> MetricsReport:
    topo_seed, req_seed, _ = replication_seeds(cfg.seed, replication)
    schedule = request_schedule(cfg.num_nodes, cfg.requests_per_node, random.Random(req_seed))
    report = MetricsReport()
    for mode in cfg.configs:
        for level in cfg.error_levels:
            try:
                # same starting topology for every (mode, level) cell
                net = generate_random_topology(cfg.num_nodes, cfg.max_connections, random.Random(topo_seed))
                run_searches(net, schedule, mode, level, cfg.hop_limit, report)
            except OverlayError as exc:
                raise OverlayError(
                    f"replication {replication}, {mode}, error level {level}: {exc}") from exc
    return report


def run_snapshot(cfg: ExperimentConfig) -> tuple[OverlayNetwork, OverlayNetwork, AdaptationPolicy]:
    """Small adaptive run whose before/after topologies illustrate the rewiring."""
    topo_seed, req_seed, snap_seed = replication_seeds(cfg.seed, 0)
    rng = random.Random(snap_seed)
    net = generate_random_topology(cfg.snapshot_nodes, cfg.max_connections, rng)
    initial = net.copy()
    schedule = request_schedule(cfg.snapshot_nodes, cfg.requests_per_node, rng)
    policy = AdaptationPolicy()
    run_searches(net, schedule, SearchConfig.ADAPTIVE, cfg.error_levels[0], cfg.hop_limit, policy=policy)
    return initial, net, policy


def run_experiment(cfg: ExperimentConfig, workers: int = 1) -> ExperimentResult:
    """Run every replication and merge the per-replication reports.

    ``workers > 1`` spreads replications over processes; results are identical
    either way.
    """
    reps = range(cfg.replications)
    if workers > 1 and cfg.replications > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(run_replication, [cfg] * len(reps), reps))
    else:
        reports = [run_replication(cfg, r) for r in reps]
    result = ExperimentResult(MetricsReport.combine(reports))
    if cfg.snapshot_nodes is not None:
        initial, adapted, policy = run_snapshot(cfg)
        result.initial_snapshot, result.adapted_snapshot = initial, adapted
        result.swaps = policy.actions
    return result


# ---------------------------------------------------------------- output


def _fmt(x) -> str:
    if x is None:
        return NA
    if isinstance(x, float):
        return f"{x:.6g}"
    return str(x)


def format_csv(rows: Sequence[MetricsRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def emit_csv(report: MetricsReport, path) -> None:
    Path(path).write_text(format_csv(report.finalize()), encoding="utf-8")


def read_csv(text: str) -> list[MetricsRow]:
    """Parse text written by :func:`format_csv` back into rows."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != CSV_HEADER:
        raise ValueError(f"unexpected header {header}")

    def opt(v):
        return None if v == NA else float(v)

    return [
        MetricsRow(c, float(e), opt(mae), opt(hops), float(fr), int(sw), int(s), int(t))
        for c, e, mae, hops, fr, sw, s, t in reader
    ]


def write_snapshots(result: ExperimentResult, prefix) -> tuple[Path, Path]:
    initial = Path(f"{prefix}-initial.dot")
    adapted = Path(f"{prefix}-adapted.dot")
    initial.write_text(result.initial_snapshot.export_dot("initial"), encoding="utf-8")
    adapted.write_text(result.adapted_snapshot.export_dot("adapted"), encoding="utf-8")
    return initial, adapted
