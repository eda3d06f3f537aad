"""Quality measures for (possibly overlapping) community covers.

Every community ``c`` gets a belonging coefficient ``a[i][c] = 1/k_i`` for
each member ``i``, where ``k_i`` counts the communities containing ``i``.
Sums over "pairs" always run over ordered endpoint pairs of edges of the
graph, so an edge inside ``c`` is counted twice before the factor 1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .graph import Graph, ParseError

__all__ = [
    "BelongingTable",
    "Cover",
    "METRIC_COLUMNS",
    "MetricsReport",
    "PartitionError",
    "UndefinedMetricError",
    "belonging_coefficients",
    "count_at_threshold",
    "density",
    "densities",
    "evaluate_cover",
    "load_cover",
    "overlapping_modularity",
    "save_cover",
    "standard_modularity",
]


class UndefinedMetricError(ValueError):
    """The metric has no value on this input (e.g. modularity of an edgeless graph)."""


class PartitionError(ValueError):
    """A cover that was required to be a partition is not one."""

    def __init__(self, message: str, vertex: int | None = None):
        self.vertex = vertex
        super().__init__(message)


@dataclass(frozen=True)
class Cover:
    """Communities over ``graph``, kept in a canonical order.

    Communities are deduplicated and sorted by their sorted member tuple, so
    two covers with the same sets compare equal regardless of input order.
    """

    communities: tuple[frozenset[int], ...]
    graph: Graph

    def __post_init__(self):
        n = self.graph.vertex_count
        for c in self.communities:
            if not c:
                raise ValueError("empty community")
            for v in c:
                if not 0 <= v < n:
                    raise ValueError(f"vertex {v} out of range")

    @classmethod
    def from_sets(cls, graph: Graph, sets: Iterable[Iterable[int]]) -> "Cover":
        uniq = {frozenset(s) for s in sets}
        ordered = sorted(uniq, key=lambda c: sorted(c))
        return cls(tuple(ordered), graph)

    def __len__(self) -> int:
        return len(self.communities)

    def multiplicity(self) -> list[int]:
        k = [0] * self.graph.vertex_count
        for c in self.communities:
            for v in c:
                k[v] += 1
        return k

    def is_partition(self) -> bool:
        return all(x == 1 for x in self.multiplicity())

    def index(self, community: Iterable[int]) -> int:
        return self.communities.index(frozenset(community))


@dataclass(frozen=True)
class BelongingTable:
    """Sparse table of belonging coefficients ``a[i][c]``."""

    cover: Cover
    counts: tuple[int, ...]

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, c = key
        if i in self.cover.communities[c]:
            return Fraction(1, self.counts[i])
        return Fraction(0)

    def row(self, i: int) -> dict[int, Fraction]:
        return {
            ci: Fraction(1, self.counts[i])
            for ci, c in enumerate(self.cover.communities)
            if i in c
        }

    def weights(self) -> list[float]:
        """Per-vertex ``1/k_i`` as floats (0.0 for uncovered vertices)."""
        return [1.0 / k if k else 0.0 for k in self.counts]


def belonging_coefficients(cover: Cover) -> BelongingTable:
    return BelongingTable(cover, tuple(cover.multiplicity()))


def _community_terms(g: Graph, cover: Cover) -> list[tuple[float, float]]:
    """``(|E_in_c|, |E_out_c|)`` for every community, in cover order."""
    a = belonging_coefficients(cover).weights()
    adj = g.adjacency
    terms = []
    for c in cover.communities:
        # ordered pairs inside c, and pairs leaving to any other community d != c.
        # For j covered by k_j communities, sum over d containing j, d != c, of
        # a[j][d] is 1 - a[j] when j is in c, and 1 otherwise.
        inside = 0.0
        out = 0.0
        for i in sorted(c):
            ai = a[i]
            for j in adj[i]:
                aj = a[j]
                if j in c:
                    inside += ai * aj
                    if aj:
                        out += ai * (1.0 - aj)
                elif aj:
                    out += ai
        terms.append((inside / 2.0, out))
    return terms


def overlapping_modularity(g: Graph, cover: Cover) -> float:
    m = g.edge_count
    if m == 0:
        raise UndefinedMetricError("modularity is undefined on a graph without edges")
    total = 0.0
    for e_in, e_out in _community_terms(g, cover):
        total += e_in / m - ((2.0 * e_in + e_out) / (2.0 * m)) ** 2
    return total


def check_partition(partition: Cover) -> None:
    seen = [False] * partition.graph.vertex_count
    for c in partition.communities:
        for v in sorted(c):
            if seen[v]:
                raise PartitionError(
                    f"vertex {partition.graph.label(v)!r} lies in two communities", v
                )
            seen[v] = True
    for v, hit in enumerate(seen):
        if not hit:
            raise PartitionError(
                f"vertex {partition.graph.label(v)!r} lies in no community", v
            )


def standard_modularity(g: Graph, partition: Cover) -> float:
    """Newman modularity ``sum_c e_c/m - (vol_c / 2m)^2`` of a partition."""
    check_partition(partition)
    m = g.edge_count
    if m == 0:
        raise UndefinedMetricError("modularity is undefined on a graph without edges")
    owner = [0] * g.vertex_count
    for ci, c in enumerate(partition.communities):
        for v in c:
            owner[v] = ci
    internal = [0] * len(partition)
    volume = [0] * len(partition)
    for v in range(g.vertex_count):
        volume[owner[v]] += g.degree(v)
    for u, v in g.edges():
        if owner[u] == owner[v]:
            internal[owner[u]] += 1
    return sum(e / m - (vol / (2.0 * m)) ** 2 for e, vol in zip(internal, volume))


def densities(g: Graph, cover: Cover) -> list[float]:
    """``beta(c)`` for every community, in cover order."""
    return [
        e_in / len(c) for (e_in, _), c in zip(_community_terms(g, cover), cover.communities)
    ]


def density(g: Graph, cover: Cover, c: int | Iterable[int]) -> float:
    """Belonging-weighted internal edge count of ``c`` divided by ``|c|``.

    ``c`` is either an index into ``cover.communities`` or the member set.
    """
    idx = c if isinstance(c, int) else cover.index(c)
    community = cover.communities[idx]
    a = belonging_coefficients(cover).weights()
    adj = g.adjacency
    pairs = 0.0
    for i in sorted(community):
        for j in adj[i]:
            if j in community:
                pairs += a[i] * a[j]
    return pairs / (2.0 * len(community))


def count_at_threshold(g: Graph, cover: Cover, delta: float) -> int:
    if delta < 0:
        raise ValueError("delta must be non-negative")
    return sum(1 for beta in densities(g, cover) if beta >= delta)


def load_cover(text: str, graph: Graph) -> Cover:
    """Read one community per line of whitespace-separated vertex labels."""
    index = graph.label_index()
    sets = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(("#", "%")):
            continue
        members = set()
        for tok in line.split():
            if tok not in index:
                raise ParseError(f"unknown vertex label {tok!r}", lineno)
            members.add(index[tok])
        sets.append(members)
    return Cover.from_sets(graph, sets)


def save_cover(cover: Cover) -> str:
    g = cover.graph
    return "".join(
        " ".join(g.label(v) for v in sorted(c)) + "\n" for c in cover.communities
    )


METRIC_COLUMNS = (
    "method",
    "d",
    "bags",
    "q_ov",
    "q_standard",
    "beta_min",
    "beta_mean",
    "beta_max",
    "count_at_delta",
    "delta",
)


@dataclass
class MetricsReport:
    method: str
    d: int | None
    bag_count: int
    q_ov: float
    q_standard: float | None
    densities: list[float]
    count_at_delta: int
    delta: float
    notes: list[str] | None = None

    @property
    def beta_min(self) -> float:
        return min(self.densities) if self.densities else math.nan

    @property
    def beta_max(self) -> float:
        return max(self.densities) if self.densities else math.nan

    @property
    def beta_mean(self) -> float:
        if not self.densities:
            return math.nan
        return math.fsum(self.densities) / len(self.densities)

    def row(self) -> dict[str, object]:
        return {
            "method": self.method,
            "d": self.d,
            "bags": self.bag_count,
            "q_ov": self.q_ov,
            "q_standard": self.q_standard,
            "beta_min": self.beta_min,
            "beta_mean": self.beta_mean,
            "beta_max": self.beta_max,
            "count_at_delta": self.count_at_delta,
            "delta": self.delta,
        }


def evaluate_cover(
    g: Graph,
    cover: Cover,
    method: str,
    d: int | None = None,
    delta: float = 1.0,
) -> MetricsReport:
    betas = densities(g, cover)
    q_std = standard_modularity(g, cover) if cover.is_partition() else None
    return MetricsReport(
        method=method,
        d=d,
        bag_count=len(cover),
        q_ov=overlapping_modularity(g, cover),
        q_standard=q_std,
        densities=betas,
        count_at_delta=sum(1 for b in betas if b >= delta),
        delta=delta,
    )


def format_value(value: object, digits: int | None = None) -> str:
    """Render a report cell; floats use ``repr`` unless ``digits`` is given."""
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        return f"{value:.{digits}f}" if digits is not None else repr(value)
    return str(value)


def report_cells(report: MetricsReport, columns: Sequence[str] = METRIC_COLUMNS) -> list[str]:
    row = report.row()
    return [format_value(row[c]) for c in columns]
