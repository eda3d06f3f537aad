"""Registry of the benchmark networks and the published reference numbers.

No network data ships with the package. Files are looked up in a data
directory (``--data-dir``, ``$LOCSEP_DATA_DIR`` or ``./data``) under the
names listed in ``filenames``; KONECT ``out.*`` files are read as-is.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

__all__ = ["DATASETS", "Dataset", "ReferenceRow", "data_dir", "locate"]

DATA_ENV = "LOCSEP_DATA_DIR"


@dataclass(frozen=True)
class ReferenceRow:
    """One published (method, dataset) result: radius (if any), community count, score."""

    method: str
    d: int | None
    bags: int
    score: float
    overlapping: bool


@dataclass(frozen=True)
class Dataset:
    name: str
    n: int
    m: int
    description: str
    source: str
    filenames: tuple[str, ...]
    reference: tuple[ReferenceRow, ...] = field(default=(), repr=False)

    def reference_for(self, method: str) -> ReferenceRow | None:
        for row in self.reference:
            if row.method == method:
                return row
        return None


def _rows(l1, l2, im, lp, bml, leiden) -> tuple[ReferenceRow, ...]:
    return (
        ReferenceRow("local1", l1[0], l1[1], l1[2], True),
        ReferenceRow("local2", l2[0], l2[1], l2[2], True),
        ReferenceRow("infomap", None, im[0], im[1], False),
        ReferenceRow("lp", None, lp[0], lp[1], False),
        ReferenceRow("multilevel", None, bml[0], bml[1], False),
        ReferenceRow("leiden", None, leiden[0], leiden[1], False),
    )


DATASETS: dict[str, Dataset] = {
    ds.name: ds
    for ds in (
        Dataset(
            "dolphins", 62, 159,
            "Social network of bottlenose dolphins",
            "http://konect.cc/networks/dolphins/",
            ("dolphins.edges", "dolphins.txt", "out.dolphins"),
            _rows((3, 4, 0.4632), (4, 16, 0.3592), (5, 0.5277),
                  (5, 0.5047), (5, 0.5233), (5, 0.5241)),
        ),
        Dataset(
            "euroroads", 1174, 1417,
            "Road network connecting cities in Europe",
            "http://konect.cc/networks/subelj_euroroad/",
            ("euroroads.edges", "euroroads.txt", "out.subelj_euroroad_euroroad"),
            _rows((6, 27, 0.5355), (9, 85, 0.3697), (160, 0.7880),
                  (118, 0.8124), (46, 0.8802), (47, 0.8863)),
        ),
        Dataset(
            "netscience", 1461, 2742,
            "Co-authorship network in the field of network science",
            "http://konect.cc/networks/dimacs10-netscience/",
            ("netscience.edges", "netscience.txt", "out.dimacs10-netscience"),
            _rows((5, 124, 0.8779), (7, 155, 0.8122), (314, 0.9299),
                  (330, 0.9104), (277, 0.9587), (279, 0.9594)),
        ),
        Dataset(
            "powergrid", 4941, 13188,
            "Power grid of parts of the United States",
            "http://konect.cc/networks/opsahl-powergrid/",
            ("powergrid.edges", "powergrid.txt", "out.opsahl-powergrid"),
            _rows((7, 95, 0.7274), (14, 145, 0.7232), (1785, 0.4762),
                  (503, 0.7999), (42, 0.9353), (41, 0.9388)),
        ),
        Dataset(
            "nrw", 9133, 14125,
            "Road network of parts of Germany (North Rhine-Westphalia)",
            "user-supplied; no public source given",
            ("nrw.edges", "nrw.txt"),
            _rows((10, 567, 0.9002), (17, 2246, 0.6273), (911, 0.8631),
                  (1458, 0.7799), (62, 0.9523), (66, 0.9558)),
        ),
    )
}


def data_dir(explicit: str | os.PathLike | None = None) -> Path:
    if explicit is not None:
        return Path(explicit)
    return Path(os.environ.get(DATA_ENV, "data"))


def locate(name: str, directory: str | os.PathLike | None = None) -> Path | None:
    """Path of the first existing file for registry entry ``name``, or ``None``."""
    ds = DATASETS[name.lower()]
    base = data_dir(directory)
    for fname in ds.filenames:
        p = base / fname
        if p.is_file():
            return p
    return None
