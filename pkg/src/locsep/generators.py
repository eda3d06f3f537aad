"""Small named graphs and seeded random graphs used by tests and benchmarks."""

from __future__ import annotations

import itertools
import random

from .graph import Graph

__all__ = [
    "bowtie",
    "complete_graph",
    "cycle_graph",
    "disjoint_union",
    "gnp_random_graph",
    "path_graph",
    "random_connected_graph",
    "road_like_graph",
    "star_graph",
]


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def bowtie() -> Graph:
    """Two triangles sharing vertex 2."""
    return Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.vertex_count
    return Graph.from_edges(offset, edges)


def gnp_random_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    return Graph.from_edges(
        n, [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
    )


def random_connected_graph(n: int, extra_edges: int, seed: int) -> Graph:
    """Random spanning tree plus ``extra_edges`` random chords (sparse, connected)."""
    rng = random.Random(seed)
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    for _ in range(extra_edges):
        if n < 2:
            break
        u, v = rng.sample(range(n), 2)
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def road_like_graph(
    rows: int = 96,
    cols: int = 96,
    removal_fraction: float = 0.95,
    subdivisions: int = 3000,
    dead_ends: int = 800,
    seed: int = 0,
) -> Graph:
    """Synthetic planar street network.

    Starts from a ``rows x cols`` grid, deletes random edges between
    degree-4 crossings (``removal_fraction`` of the candidates) so most
    junctions become T-junctions, then adds degree-2 subdivision points on
    random road segments and short dead-end spurs. After
    :func:`~locsep.graph.preprocess_reduce` the defaults leave roughly 9.2k
    vertices and 14k edges.
    """
    rng = random.Random(seed)
    idx = lambda r, c: r * cols + c  # noqa: E731
    edges = set()
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.add((idx(r, c), idx(r, c + 1)))
            if r + 1 < rows:
                edges.add((idx(r, c), idx(r + 1, c)))
    deg = [0] * (rows * cols)
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    for u, v in rng.sample(sorted(edges), len(edges)):
        if deg[u] == 4 and deg[v] == 4 and rng.random() < removal_fraction:
            edges.discard((u, v))
            deg[u] -= 1
            deg[v] -= 1
    n = rows * cols
    road = sorted(edges)
    for u, v in rng.sample(road, min(subdivisions, len(road))):
        edges.discard((u, v))
        edges.add((u, n))
        edges.add((v, n))
        n += 1
    for _ in range(dead_ends):
        anchor = rng.randrange(rows * cols)
        length = rng.randint(1, 3)
        prev = anchor
        for _ in range(length):
            edges.add((prev, n))
            prev = n
            n += 1
    return Graph.from_edges(n, edges)
