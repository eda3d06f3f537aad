"""Command-line entry point: ``locsep {preprocess,detect,metrics,compare,export}``.

Exit codes: 0 success, 1 configuration error, 2 I/O or parse error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import fields
from pathlib import Path

from .graph import ParseError, export_graph, format_edge_list, preprocess_reduce
from .harness import (
    METHODS,
    ComparisonTable,
    ConfigError,
    InvariantError,
    RunConfig,
    compare,
    expand_configs,
    load_graph,
    parse_config_text,
    report_document,
    run_full,
)
from .metrics import PartitionError, UndefinedMetricError, load_cover
from .separators import decompose, find_local_1_separators, find_local_2_separators

EXIT_OK, EXIT_CONFIG, EXIT_IO, EXIT_INVARIANT = 0, 1, 2, 3

_RUN_FIELDS = {f.name for f in fields(RunConfig)}


def _add_run_flags(p: argparse.ArgumentParser, multi: bool = False) -> None:
    if multi:
        p.add_argument("--input", action="append", help="edge list, registry name or synthetic:road[:seed]; repeatable")
        p.add_argument("--method", action="append", choices=METHODS, help="repeatable")
    else:
        p.add_argument("--input", help="edge list, registry name or synthetic:road[:seed]")
        p.add_argument("--method", choices=METHODS)
    p.add_argument("--radius", type=int)
    p.add_argument("--refine-radius", dest="refine_radius", type=int)
    p.add_argument("--min-size", dest="min_size", type=int)
    p.add_argument("--delta", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--preprocess", action="store_true", default=None)
    p.add_argument("--cover", help="community file (one community per line)")
    p.add_argument("--workers", type=int)
    p.add_argument("--data-dir", dest="data_dir")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="locsep", description="Local separator community detection and cover evaluation."
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preprocess", help="remove degree-1 and suppress degree-2 vertices")
    p.add_argument("--input", required=True)
    p.add_argument("--data-dir", dest="data_dir")
    p.add_argument("--out", help="write the reduced edge list here (default: stdout)")

    p = sub.add_parser("detect", help="run one method and report its metrics")
    p.add_argument("--config", help="flat key = value file; flags override it")
    _add_run_flags(p)
    p.add_argument("--out", help="output prefix for .cover/.seps/.report.json")
    p.add_argument("--format", choices=("csv", "md", "json"), default="json")

    p = sub.add_parser("metrics", help="evaluate an existing cover file")
    p.add_argument("--config")
    _add_run_flags(p)
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "md", "json"), default="json")

    p = sub.add_parser("compare", help="run several configurations into one table")
    p.add_argument("--config", action="append", default=[], help="one run per file; repeatable")
    _add_run_flags(p, multi=True)
    p.add_argument("--jobs", type=int, default=1, help="runs executed in parallel")
    p.add_argument("--out", help="write the table here (default: stdout)")
    p.add_argument("--format", choices=("csv", "md", "json"), default="csv")

    p = sub.add_parser("export", help="write graph plus bag tags for plotting")
    p.add_argument("--input", required=True)
    p.add_argument("--data-dir", dest="data_dir")
    p.add_argument("--preprocess", action="store_true")
    p.add_argument("--cover", help="tag nodes with the communities of this file")
    p.add_argument("--method", choices=("local1", "local2"))
    p.add_argument("--radius", type=int)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "dot", "edges"), default="json")
    return parser


def _flag_values(args: argparse.Namespace) -> dict[str, object]:
    return {
        k: v for k, v in vars(args).items()
        if k in _RUN_FIELDS and k not in ("out",) and v is not None
    }


def _config_from(args: argparse.Namespace, config_path: str | None, **forced) -> RunConfig:
    values: dict[str, object] = {}
    if config_path:
        values.update(parse_config_text(Path(config_path).read_text(encoding="utf-8")))
    values.update(_flag_values(args))
    values.update(forced)
    if "input" not in values:
        raise ConfigError("missing --input")
    if "method" not in values:
        raise ConfigError("missing --method")
    cfg = RunConfig(**values)
    cfg.validate()
    return cfg


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _render_single(result, fmt: str) -> str:
    if fmt == "json":
        doc = report_document(result, with_densities=False)
        return json.dumps(doc, indent=1, sort_keys=True) + "\n"
    return ComparisonTable([result]).render(fmt)


def cmd_preprocess(args) -> int:
    graph, _ = load_graph(args.input, args.data_dir)
    reduced, report = preprocess_reduce(graph)
    _emit(format_edge_list(reduced), args.out)
    summary = {
        "n_raw": graph.vertex_count, "m_raw": graph.edge_count,
        "n": reduced.vertex_count, "m": reduced.edge_count,
        "removed_degree1": report.removed_degree1,
        "suppressed_degree2": report.suppressed_degree2,
        "rounds": report.rounds,
    }
    print(json.dumps(summary, sort_keys=True), file=sys.stderr)
    return EXIT_OK


def cmd_detect(args) -> int:
    cfg = _config_from(args, args.config)
    if args.out:
        cfg.out = args.out
    result = run_full(cfg)
    sys.stdout.write(_render_single(result, args.format))
    return EXIT_OK


def cmd_metrics(args) -> int:
    cfg = _config_from(args, args.config, method="external")
    if args.out:
        cfg.out = args.out
    result = run_full(cfg)
    sys.stdout.write(_render_single(result, args.format))
    return EXIT_OK


def cmd_compare(args) -> int:
    configs: list[RunConfig] = []
    for path in args.config:
        values = parse_config_text(Path(path).read_text(encoding="utf-8"))
        flags = _flag_values(args)
        flags.pop("input", None)
        flags.pop("method", None)
        values.update(flags)
        values.pop("out", None)
        if "input" not in values or "method" not in values:
            raise ConfigError(f"{path}: config needs input and method")
        configs.append(RunConfig(**values))
    if args.input or args.method:
        if not (args.input and args.method):
            raise ConfigError("compare needs both --input and --method (or --config files)")
        base_values = _flag_values(args)
        base_values.update(input="", method=args.method[0])
        configs.extend(expand_configs(RunConfig(**base_values), args.input, args.method))
    if not configs:
        raise ConfigError("compare needs --config files or --input/--method flags")
    table = compare(configs, workers=args.jobs)
    _emit(table.render(args.format), args.out)
    return EXIT_OK


def cmd_export(args) -> int:
    graph, _ = load_graph(args.input, args.data_dir)
    if args.preprocess:
        graph, _ = preprocess_reduce(graph)
    deco = None
    if args.cover:
        deco = load_cover(Path(args.cover).read_text(encoding="utf-8"), graph)
    elif args.method:
        if args.radius is None:
            raise ConfigError("--method needs --radius")
        finder = find_local_1_separators if args.method == "local1" else find_local_2_separators
        deco = decompose(graph, finder(graph, args.radius))
    elif args.radius is not None:
        raise ConfigError("--radius needs --method")
    _emit(export_graph(graph, deco, args.format), args.out)
    return EXIT_OK


COMMANDS = {
    "preprocess": cmd_preprocess,
    "detect": cmd_detect,
    "metrics": cmd_metrics,
    "compare": cmd_compare,
    "export": cmd_export,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (OSError, ParseError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_IO
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (PartitionError, UndefinedMetricError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
