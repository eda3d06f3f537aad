"""Rebuild the local-separator reference comparison as a Markdown delta table.

Usage: ``python -m locsep.reproduce [--data-dir DIR] [--out FILE] [--extra PATH:d ...]``

Every local1/local2 reference row of the registry is rerun when its network
is present in the data directory. A missing road network for ``nrw`` is
replaced by the synthetic road graph and flagged as a substitute; other
missing networks are listed as not run.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

from .datasets import DATASETS, data_dir, locate
from .harness import SYNTHETIC_ROAD, RunConfig, run_full
from .metrics import format_value

log = logging.getLogger(__name__)

HEADER = (
    "| Dataset | Method | d | bags ref | bags ours | delta bags | Ov Mod ref | Ov Mod ours "
    "| delta Ov Mod | n, m used | status |"
)


def _cell(value, digits=4) -> str:
    return format_value(value, digits) if value is not None else "-"


def reference_rows(directory: str | None = None, methods=("local1", "local2")) -> list[str]:
    lines = [HEADER, "|" + "---|" * 11]
    for ds in DATASETS.values():
        path = locate(ds.name, directory)
        for method in methods:
            ref = ds.reference_for(method)
            status = "ok"
            if path is not None:
                source = str(path)
            elif ds.name == "nrw":
                source, status = SYNTHETIC_ROAD, "substitute: synthetic road graph"
            else:
                lines.append(
                    f"| {ds.name} | {method} | {ref.d} | {ref.bags} | - | - "
                    f"| {ref.score:.4f} | - | - | - | not run: dataset unavailable |"
                )
                continue
            cfg = RunConfig(source, method, radius=ref.d, preprocess=ds.name == "nrw",
                            data_dir=directory)
            start = time.perf_counter()
            result = run_full(cfg)
            log.info("%s %s d=%s took %.1fs", ds.name, method, ref.d, time.perf_counter() - start)
            rep = result.report
            n, m = result.sizes[2:]
            lines.append(
                f"| {ds.name} | {method} | {ref.d} | {ref.bags} | {rep.bag_count} "
                f"| {rep.bag_count - ref.bags:+d} | {ref.score:.4f} | {rep.q_ov:.4f} "
                f"| {rep.q_ov - ref.score:+.4f} | {n}, {m} | {status} |"
            )
    return lines


def extra_rows(specs: list[str], directory: str | None = None) -> list[str]:
    """Rows for additional networks given as ``path:d`` (no reference numbers)."""
    lines = ["| Network | Method | d | bags | Ov Mod | n, m |", "|---|---|---|---|---|---|"]
    for spec in specs:
        path, _, d = spec.rpartition(":")
        for method in ("local1", "local2"):
            result = run_full(RunConfig(path, method, radius=int(d), data_dir=directory))
            rep = result.report
            n, m = result.sizes[2:]
            lines.append(
                f"| {result.dataset} | {method} | {d} | {rep.bag_count} "
                f"| {_cell(rep.q_ov)} | {n}, {m} |"
            )
    return lines


def build_document(directory: str | None = None, extra: list[str] | None = None) -> str:
    parts = [
        "## Delta table",
        "",
        f"Data directory: `{data_dir(directory)}`.",
        "",
        *reference_rows(directory),
        "",
    ]
    if extra:
        parts += ["## Additional networks", "", *extra_rows(extra, directory), ""]
    return "\n".join(parts)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="python -m locsep.reproduce", description=__doc__.split("\n")[0])
    parser.add_argument("--data-dir", dest="data_dir")
    parser.add_argument("--out", help="write Markdown here (default: stdout)")
    parser.add_argument("--extra", action="append", default=[], metavar="PATH:D")
    parser.add_argument("-v", "--verbose", action="store_true")
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    text = build_document(args.data_dir, args.extra)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
