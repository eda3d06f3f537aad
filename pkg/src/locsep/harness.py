"""Run detection methods on datasets and assemble comparison tables."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from .baselines import DEFAULT_MAX_ROUNDS, propagate_labels
from .datasets import DATASETS, data_dir, locate
from .generators import road_like_graph
from .graph import Graph, ParseError, load_edge_list, preprocess_reduce
from .metrics import (
    METRIC_COLUMNS,
    Cover,
    MetricsReport,
    evaluate_cover,
    format_value,
    load_cover,
    save_cover,
)
from .separators import (
    decompose,
    find_local_1_separators,
    find_local_2_separators,
    format_separators,
    refine_hierarchical,
    to_cover,
)

__all__ = [
    "ComparisonTable",
    "ConfigError",
    "InvariantError",
    "METHODS",
    "RunConfig",
    "TABLE_COLUMNS",
    "compare",
    "load_graph",
    "parse_config_text",
    "run",
]

METHODS = ("local1", "local2", "local1+refine", "lp", "external")
SYNTHETIC_ROAD = "synthetic:road"

TABLE_COLUMNS = ("dataset", "n_raw", "m_raw", "n", "m") + METRIC_COLUMNS + ("error",)


class ConfigError(ValueError):
    """Invalid run configuration; detected before any work is done."""


class InvariantError(RuntimeError):
    """An internal consistency check failed (e.g. a malformed decomposition)."""


@dataclass
class RunConfig:
    input: str
    method: str
    radius: int | None = None
    refine_radius: int | None = None
    min_size: int | None = None
    delta: float = 1.0
    seed: int | None = None
    preprocess: bool = False
    cover: str | None = None
    out: str | None = None
    name: str | None = None
    max_rounds: int = DEFAULT_MAX_ROUNDS
    workers: int = 1
    data_dir: str | None = None

    def validate(self) -> None:
        if self.method not in METHODS:
            raise ConfigError(f"unknown method {self.method!r}; choose from {', '.join(METHODS)}")
        uses_radius = self.method in ("local1", "local2", "local1+refine")
        uses_refine = self.method == "local1+refine"
        if uses_radius and self.radius is None:
            raise ConfigError(f"method {self.method} needs --radius")
        if not uses_radius and self.radius is not None:
            raise ConfigError(f"method {self.method} takes no --radius")
        if uses_refine and (self.refine_radius is None or self.min_size is None):
            raise ConfigError("method local1+refine needs --refine-radius and --min-size")
        if not uses_refine and (self.refine_radius is not None or self.min_size is not None):
            raise ConfigError(f"method {self.method} takes no --refine-radius/--min-size")
        if self.radius is not None and self.radius < 1:
            raise ConfigError("--radius must be at least 1")
        if self.refine_radius is not None and self.refine_radius < 1:
            raise ConfigError("--refine-radius must be at least 1")
        if self.min_size is not None and self.min_size < 1:
            raise ConfigError("--min-size must be at least 1")
        if self.method == "external" and not self.cover:
            raise ConfigError("method external needs --cover")
        if self.method != "external" and self.cover:
            raise ConfigError(f"method {self.method} does not read --cover")
        if self.seed is not None and self.method != "lp":
            raise ConfigError(f"method {self.method} takes no --seed")
        if not self.delta >= 0:
            raise ConfigError("--delta must be non-negative")
        if self.max_rounds < 1:
            raise ConfigError("max_rounds must be at least 1")

    @property
    def dataset_name(self) -> str:
        if self.name:
            return self.name
        if self.input.lower() in DATASETS:
            return self.input.lower()
        if self.input.startswith(SYNTHETIC_ROAD):
            return self.input
        return Path(self.input).stem

    @property
    def method_tag(self) -> str:
        if self.method == "local1+refine":
            return f"local1+refine(d2={self.refine_radius},min={self.min_size})"
        if self.method == "lp":
            return f"lp(seed={self.effective_seed})"
        return self.method

    @property
    def effective_seed(self) -> int:
        return 1 if self.seed is None else self.seed


# -- configuration files ----------------------------------------------------

_INT_KEYS = {"radius", "refine_radius", "min_size", "seed", "max_rounds", "workers"}
_FLOAT_KEYS = {"delta"}
_BOOL_KEYS = {"preprocess"}
_KNOWN_KEYS = {f.name for f in fields(RunConfig)}


def parse_config_text(text: str) -> dict[str, object]:
    """Parse flat ``key = value`` lines (``#`` comments) into RunConfig fields."""
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        sep = "=" if "=" in line else (":" if ":" in line else None)
        if sep is None:
            raise ConfigError(f"config line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split(sep, 1))
        key = key.lstrip("-").replace("-", "_")
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"config line {lineno}: unknown key {key!r}")
        try:
            if key in _INT_KEYS:
                values[key] = int(value)
            elif key in _FLOAT_KEYS:
                values[key] = float(value)
            elif key in _BOOL_KEYS:
                values[key] = value.lower() in ("1", "true", "yes", "on")
            else:
                values[key] = value
        except ValueError:
            raise ConfigError(f"config line {lineno}: bad value for {key}: {value!r}") from None
    return values


# -- running ----------------------------------------------------------------


def load_graph(spec: str, directory: str | None = None) -> tuple[Graph, str]:
    """Load a graph from a path, a registry name, or ``synthetic:road[:seed]``."""
    if spec.startswith(SYNTHETIC_ROAD):
        rest = spec[len(SYNTHETIC_ROAD):].lstrip(":")
        try:
            seed = int(rest) if rest else 0
        except ValueError:
            raise ConfigError(f"bad synthetic seed in {spec!r}") from None
        return road_like_graph(seed=seed), spec
    path = Path(spec)
    if not path.is_file() and spec.lower() in DATASETS:
        found = locate(spec, directory)
        if found is None:
            ds = DATASETS[spec.lower()]
            raise FileNotFoundError(
                f"dataset {ds.name!r} not found in {data_dir(directory)}/ "
                f"(expected one of {', '.join(ds.filenames)}; source: {ds.source})"
            )
        path = found
    text = path.read_text(encoding="utf-8")
    graph, _ = load_edge_list(text)
    return graph, str(path)


@dataclass
class RunResult:
    dataset: str
    config: RunConfig
    report: MetricsReport | None = None
    sizes: tuple[int, int, int, int] | None = None
    cover: Cover | None = field(default=None, repr=False)
    separators_text: str | None = field(default=None, repr=False)
    error: str | None = None


def _execute(config: RunConfig) -> RunResult:
    config.validate()
    raw, _ = load_graph(config.input, config.data_dir)
    graph = raw
    if config.preprocess:
        graph, _ = preprocess_reduce(raw)
    if graph.vertex_count == 0 or graph.edge_count == 0:
        raise ConfigError("empty graph" if graph.vertex_count == 0 else "graph has no edges")
    notes = []
    seps_text = None
    if config.method == "external":
        cover = load_cover(Path(config.cover).read_text(encoding="utf-8"), graph)
    elif config.method == "lp":
        state = propagate_labels(graph, config.effective_seed, config.max_rounds)
        if not state.converged:
            notes.append(f"label propagation did not converge in {config.max_rounds} rounds")
        groups: dict[int, set[int]] = {}
        for v, lab in enumerate(state.labels):
            groups.setdefault(lab, set()).add(v)
        cover = Cover.from_sets(graph, groups.values())
    else:
        d = config.radius
        s1 = find_local_1_separators(graph, d, config.workers)
        if config.method == "local2":
            seps = find_local_2_separators(graph, d, config.workers, one_separators=s1)
        else:
            seps = s1
        deco = decompose(graph, seps)
        if config.method == "local1+refine":
            deco = refine_hierarchical(
                graph, deco, config.refine_radius, config.min_size, config.workers
            )
        problems = deco.violations()
        if problems:
            raise InvariantError("decomposition invariant violated: " + "; ".join(problems[:3]))
        if len(deco.separator_vertices) == graph.vertex_count:
            notes.append("every vertex is a separator; all bags are singletons")
        seps_text = format_separators(seps, graph)
        if deco.refinement is not None:
            seps_text += format_separators(deco.refinement, graph)
        cover = to_cover(deco)
    report = evaluate_cover(graph, cover, config.method_tag, config.radius, config.delta)
    report.notes = notes or None
    sizes = (raw.vertex_count, raw.edge_count, graph.vertex_count, graph.edge_count)
    return RunResult(config.dataset_name, config, report, sizes, cover, seps_text)


def report_document(result: RunResult, with_densities: bool = True) -> dict[str, object]:
    rep = result.report
    doc = {"dataset": result.dataset}
    doc.update(zip(("n_raw", "m_raw", "n", "m"), result.sizes))
    doc.update(rep.row())
    if with_densities:
        doc["densities"] = rep.densities
    doc["preprocess"] = result.config.preprocess
    if rep.notes:
        doc["notes"] = rep.notes
    return doc


def _write_outputs(result: RunResult) -> None:
    prefix = result.config.out
    if not prefix:
        return
    base = Path(prefix)
    base.parent.mkdir(parents=True, exist_ok=True)
    Path(f"{prefix}.cover").write_text(save_cover(result.cover), encoding="utf-8")
    if result.separators_text is not None:
        Path(f"{prefix}.seps").write_text(result.separators_text, encoding="utf-8")
    Path(f"{prefix}.report.json").write_text(
        json.dumps(report_document(result), indent=1, sort_keys=True) + "\n",
        encoding="utf-8",
    )


def run_full(config: RunConfig) -> RunResult:
    result = _execute(config)
    _write_outputs(result)
    return result


def run(config: RunConfig) -> MetricsReport:
    """Load, optionally preprocess, detect, evaluate and write outputs for one config."""
    return run_full(config).report


# -- comparison ---------------------------------------------------------------


def _safe_run(config: RunConfig) -> RunResult:
    try:
        return run_full(config)
    except (ConfigError, OSError, ParseError, InvariantError, ValueError) as exc:
        return RunResult(config.dataset_name, config, error=f"{type(exc).__name__}: {exc}")


@dataclass
class ComparisonTable:
    results: list[RunResult]

    def rows(self) -> list[dict[str, object]]:
        out = []
        for res in self.results:
            row: dict[str, object] = dict.fromkeys(TABLE_COLUMNS)
            row["dataset"] = res.dataset
            row["method"] = res.config.method_tag
            row["d"] = res.config.radius
            row["delta"] = res.config.delta
            if res.sizes:
                row.update(zip(("n_raw", "m_raw", "n", "m"), res.sizes))
            if res.report:
                row.update(res.report.row())
            row["error"] = res.error
            out.append(row)
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(TABLE_COLUMNS)
        for row in self.rows():
            writer.writerow([format_value(row[c]) for c in TABLE_COLUMNS])
        return buf.getvalue()

    def to_markdown(self) -> str:
        headers = ("Name", "n", "m", "Method", "d", "|B|", "Ov Mod", "Mod",
                   "beta min", "beta mean", "beta max", "#beta>=delta", "delta", "error")
        keys = ("dataset", "n", "m", "method", "d", "bags", "q_ov", "q_standard",
                "beta_min", "beta_mean", "beta_max", "count_at_delta", "delta", "error")
        lines = ["| " + " | ".join(headers) + " |", "|" + "---|" * len(headers)]
        for row in self.rows():
            cells = [format_value(row[k], 4) for k in keys]
            lines.append("| " + " | ".join(c.replace("|", "\\|") for c in cells) + " |")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        rows = []
        for row in self.rows():
            rows.append({k: (None if isinstance(v, float) and math.isnan(v) else v)
                         for k, v in row.items()})
        return json.dumps(rows, indent=1, sort_keys=True) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "md":
            return self.to_markdown()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"unknown table format {fmt!r}")


def compare(configs: list[RunConfig], workers: int = 1) -> ComparisonTable:
    """Run every config; failed runs become error rows. Rows sorted by (dataset, method)."""
    if not configs:
        raise ConfigError("compare needs at least one configuration")
    if workers > 1 and len(configs) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(configs))) as pool:
            results = list(pool.map(_safe_run, configs))
    else:
        results = [_safe_run(c) for c in configs]
    order = sorted(
        range(len(results)),
        key=lambda i: (results[i].dataset, results[i].config.method_tag, i),
    )
    return ComparisonTable([results[i] for i in order])


def expand_configs(base: RunConfig, inputs: list[str], methods: list[str]) -> list[RunConfig]:
    """Cross product of inputs and methods, dropping parameters a method does not use."""
    out = []
    for inp in inputs:
        for method in methods:
            cfg = replace(base, input=inp, method=method)
            if method not in ("local1", "local2", "local1+refine"):
                cfg.radius = None
            if method != "local1+refine":
                cfg.refine_radius = cfg.min_size = None
            if method != "external":
                cfg.cover = None
            if method != "lp":
                cfg.seed = None
            out.append(cfg)
    return out

