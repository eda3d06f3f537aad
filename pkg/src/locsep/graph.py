"""Undirected simple graphs, edge-list I/O, BFS primitives and preprocessing."""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Graph",
    "ParseError",
    "PreprocessReport",
    "articulation_points",
    "ball",
    "components",
    "duplicate_graph",
    "export_graph",
    "format_edge_list",
    "load_edge_list",
    "preprocess_reduce",
]

COMMENT_PREFIXES = ("%", "#")


class ParseError(ValueError):
    """Malformed input text; carries the 1-based line number."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph on vertices ``0..n-1``.

    ``adjacency[v]`` is the ascending tuple of neighbours of ``v``.  Build
    instances with :meth:`from_edges` unless the adjacency is already
    canonical; the constructor validates it either way.
    """

    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None
    edge_count: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.adjacency)
        half = 0
        for v, nbrs in enumerate(self.adjacency):
            prev = -1
            for u in nbrs:
                if not 0 <= u < n:
                    raise ValueError(f"neighbour {u} of {v} out of range")
                if u == v:
                    raise ValueError(f"self-loop at {v}")
                if u <= prev:
                    raise ValueError(f"adjacency of {v} not strictly ascending")
                prev = u
            half += len(nbrs)
        for v, nbrs in enumerate(self.adjacency):
            for u in nbrs:
                if not _contains(self.adjacency[u], v):
                    raise ValueError(f"edge {v}-{u} is not symmetric")
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("labels length differs from vertex count")
        object.__setattr__(self, "edge_count", half // 2)

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[str] | None = None,
    ) -> "Graph":
        """Build a graph, silently dropping self-loops and repeated edges."""
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                continue
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(
            tuple(tuple(sorted(s)) for s in nbrs),
            tuple(labels) if labels is not None else None,
        )

    @property
    def vertex_count(self) -> int:
        return len(self.adjacency)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each edge once as ``(u, v)`` with ``u < v``, in sorted order."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if v > u:
                    yield u, v

    def has_edge(self, u: int, v: int) -> bool:
        return _contains(self.adjacency[u], v)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def label_index(self) -> dict[str, int]:
        return {self.label(v): v for v in range(self.vertex_count)}

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Return the induced subgraph and the new-to-old vertex map.

        New ids follow ascending old ids, so the relative order is kept.
        """
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        adj = tuple(
            tuple(index[u] for u in self.adjacency[v] if u in index) for v in keep
        )
        labels = tuple(self.label(v) for v in keep)
        return Graph(adj, labels), keep


def _contains(sorted_seq: Sequence[int], x: int) -> bool:
    lo, hi = 0, len(sorted_seq)
    while lo < hi:
        mid = (lo + hi) // 2
        if sorted_seq[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo < len(sorted_seq) and sorted_seq[lo] == x


@dataclass(frozen=True)
class PreprocessReport:
    removed_degree1: int = 0
    suppressed_degree2: int = 0
    dropped_self_loops: int = 0
    collapsed_parallel_edges: int = 0
    rounds: int = 0


def load_edge_list(text: str) -> tuple[Graph, PreprocessReport]:
    """Parse a whitespace-separated edge list.

    Tokens are arbitrary strings, mapped to dense ids in order of first
    appearance. Lines starting with ``%`` or ``#`` are comments. Repeated
    edges are collapsed and self-loops dropped; both are counted in the
    returned report.
    """
    index: dict[str, int] = {}
    labels: list[str] = []
    seen: set[tuple[int, int]] = set()
    edges: list[tuple[int, int]] = []
    loops = parallel = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(COMMENT_PREFIXES):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"expected 2 vertex tokens, got {len(tokens)}", lineno)
        ids = []
        for tok in tokens:
            if tok not in index:
                index[tok] = len(labels)
                labels.append(tok)
            ids.append(index[tok])
        u, v = ids
        if u == v:
            loops += 1
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            parallel += 1
            continue
        seen.add(key)
        edges.append(key)
    graph = Graph.from_edges(len(labels), edges, labels)
    return graph, PreprocessReport(
        dropped_self_loops=loops, collapsed_parallel_edges=parallel
    )


def format_edge_list(g: Graph) -> str:
    """Serialize ``g`` as a label-based edge list that :func:`load_edge_list` reads back.

    Isolated vertices cannot be expressed in this format and are lost.
    """
    lines = [f"% n={g.vertex_count} m={g.edge_count}"]
    lines.extend(f"{g.label(u)} {g.label(v)}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def ball(g: Graph, center: int, d: float) -> set[int]:
    """All vertices within distance ``d`` of ``center``; ``d`` may be ``math.inf``."""
    seen = {center}
    frontier = [center]
    depth = 0
    adj = g.adjacency
    while frontier and depth < d:
        nxt = []
        for v in frontier:
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
        depth += 1
    return seen


def bfs_distances(
    g: Graph, source: int, excluded: Iterable[int] = (), limit: float = math.inf
) -> dict[int, int]:
    """Distances from ``source`` in ``g`` minus ``excluded``, up to ``limit``."""
    blocked = set(excluded)
    dist = {source: 0}
    queue = deque([source])
    adj = g.adjacency
    while queue:
        v = queue.popleft()
        dv = dist[v]
        if dv >= limit:
            continue
        for u in adj[v]:
            if u not in dist and u not in blocked:
                dist[u] = dv + 1
                queue.append(u)
    return dist


def components(g: Graph, excluded: Iterable[int] = ()) -> list[frozenset[int]]:
    """Connected components of ``g`` minus ``excluded``, ordered by smallest vertex."""
    n = g.vertex_count
    mark = bytearray(n)
    for v in excluded:
        mark[v] = 1
    adj = g.adjacency
    out = []
    for s in range(n):
        if mark[s]:
            continue
        mark[s] = 1
        comp = [s]
        stack = [s]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if not mark[u]:
                    mark[u] = 1
                    comp.append(u)
                    stack.append(u)
        out.append(frozenset(comp))
    return out


def articulation_points(g: Graph) -> set[int]:
    """Cut vertices, by an iterative Hopcroft-Tarjan low-point DFS."""
    n = g.vertex_count
    adj = g.adjacency
    disc = [-1] * n
    low = [0] * n
    cut: set[int] = set()
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        # frames: (vertex, parent, next neighbour position)
        stack = [(root, -1, 0)]
        while stack:
            v, parent, i = stack[-1]
            if i < len(adj[v]):
                stack[-1] = (v, parent, i + 1)
                u = adj[v][i]
                if disc[u] == -1:
                    disc[u] = low[u] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((u, v, 0))
                elif u != parent:
                    low[v] = min(low[v], disc[u])
            else:
                stack.pop()
                if parent != -1:
                    low[parent] = min(low[parent], low[v])
                    if parent != root and low[v] >= disc[parent]:
                        cut.add(parent)
        if root_children > 1:
            cut.add(root)
    return cut


def preprocess_reduce(g: Graph) -> tuple[Graph, PreprocessReport]:
    """Delete degree-1 vertices and suppress degree-2 vertices until neither applies.

    Suppressing ``v`` with neighbours ``u, w`` deletes ``v`` and adds ``u-w``
    unless it already exists, so the result stays simple. Vertices left with
    degree 0 are deleted as well (counted with the degree-1 removals). The
    result has minimum degree at least 3, or no vertices at all; surviving
    vertices keep their relative order and labels.
    """
    n = g.vertex_count
    nbrs = [set(a) for a in g.adjacency]
    alive = bytearray(b"\x01") * n
    removed = suppressed = 0
    rounds = 0
    pending = {v for v in range(n) if len(nbrs[v]) <= 2}
    if n:
        rounds = 1
    while pending:
        batch = sorted(pending)
        pending = set()
        for v in batch:
            if not alive[v]:
                continue
            deg = len(nbrs[v])
            if deg > 2:
                continue
            alive[v] = 0
            touched = nbrs[v]
            for u in touched:
                nbrs[u].discard(v)
            if deg == 2:
                u, w = sorted(touched)
                if w not in nbrs[u]:
                    nbrs[u].add(w)
                    nbrs[w].add(u)
                suppressed += 1
            else:
                removed += 1
            nbrs[v] = set()
            for u in touched:
                if len(nbrs[u]) <= 2:
                    pending.add(u)
        if pending:
            rounds += 1
    keep = [v for v in range(n) if alive[v]]
    index = {v: i for i, v in enumerate(keep)}
    adj = tuple(tuple(sorted(index[u] for u in nbrs[v])) for v in keep)
    out = Graph(adj, tuple(g.label(v) for v in keep))
    return out, PreprocessReport(
        removed_degree1=removed, suppressed_degree2=suppressed, rounds=rounds
    )


def duplicate_graph(g: Graph) -> Graph:
    """Add a twin ``v'`` (id ``v + n``) for every vertex.

    ``v'`` is adjacent to ``N(v)`` and to the twins of ``N(v)``, but not to
    ``v``; the edge count is multiplied by four.
    """
    n = g.vertex_count
    edges = []
    for u, v in g.edges():
        edges.extend(((u, v), (u, v + n), (u + n, v), (u + n, v + n)))
    labels = [g.label(v) for v in range(n)]
    labels += [f"{lab}'" for lab in labels]
    return Graph.from_edges(2 * n, edges, labels)


def _bag_tags(g: Graph, deco) -> list[list[int]]:
    tags: list[list[int]] = [[] for _ in range(g.vertex_count)]
    if deco is not None:
        bags = deco.bags if hasattr(deco, "bags") else deco.communities
        for b, bag in enumerate(bags):
            for v in bag:
                tags[v].append(b)
    return [sorted(t) for t in tags]


def export_graph(g: Graph, deco=None, fmt: str = "json") -> str:
    """Render ``g`` (and optionally the bag membership of ``deco``) for plotting.

    ``deco`` may be a decomposition or a cover; nodes are tagged with the
    indices of the bags (communities) containing them.

    ``fmt`` is ``"json"``, ``"dot"`` or ``"edges"``. Output is byte-identical
    for identical inputs.
    """
    if fmt == "edges":
        return format_edge_list(g)
    tags = _bag_tags(g, deco)
    if fmt == "json":
        doc = {
            "directed": False,
            "nodes": [
                {"id": v, "label": g.label(v), "bags": tags[v]}
                for v in range(g.vertex_count)
            ],
            "edges": [[u, v] for u, v in g.edges()],
        }
        if deco is not None:
            doc["bag_count"] = len(deco)
        return json.dumps(doc, indent=1, sort_keys=True) + "\n"
    if fmt == "dot":
        lines = ["graph G {"]
        for v in range(g.vertex_count):
            bag_attr = ",".join(map(str, tags[v]))
            lines.append(
                f'  {v} [label={json.dumps(g.label(v))}, bags="{bag_attr}"];'
            )
        lines.extend(f"  {u} -- {v};" for u, v in g.edges())
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown export format {fmt!r}")
