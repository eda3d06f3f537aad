"""Local 1- and 2-separators and the bag decompositions they induce.

A vertex ``v`` is a *d-local 1-separator* when two of its neighbours are at
distance more than ``d`` in ``G - v``.  A pair ``{u, v}`` with
``dist(u, v) <= d`` is a *d-local 2-separator* when neither endpoint is a
d-local 1-separator and two vertices of ``N(u) | N(v) - {u, v}`` are at
distance more than ``d`` in ``G - {u, v}``.  For ``d`` at least the diameter,
1-separators are exactly the cut vertices.

Removing all separator vertices splits the graph into components; each
component together with its adjacent separator vertices forms a *bag*.  Bags
overlap only on separator vertices.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .graph import Graph, components
from .metrics import Cover

__all__ = [
    "Decomposition",
    "DegenerateDecompositionWarning",
    "SeparatorSet",
    "decompose",
    "find_local_1_separators",
    "find_local_2_separators",
    "format_separators",
    "refine_hierarchical",
    "to_cover",
]


class DegenerateDecompositionWarning(UserWarning):
    """Every vertex is a separator, so the decomposition is all singletons."""


@dataclass(frozen=True)
class SeparatorSet:
    order: int
    radius: int | float
    members: tuple = ()

    def __post_init__(self):
        if self.order not in (1, 2):
            raise ValueError("order must be 1 or 2")
        if self.order == 2:
            for u, v in self.members:
                if not u < v:
                    raise ValueError(f"pair {(u, v)} not stored as (min, max)")
        if list(self.members) != sorted(set(self.members)):
            raise ValueError("members must be sorted and unique")

    def vertices(self) -> frozenset[int]:
        if self.order == 1:
            return frozenset(self.members)
        return frozenset(x for pair in self.members for x in pair)

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class Decomposition:
    """Overlapping bags of ``graph`` separated by ``separator_vertices``.

    ``separator_ref`` is the separator set that produced the bags;
    ``refinement`` holds the order-2 separators (in ``graph`` ids) added by
    :func:`refine_hierarchical`, if any.
    """

    graph: Graph = field(repr=False)
    bags: tuple[frozenset[int], ...]
    separator_ref: SeparatorSet
    separator_vertices: frozenset[int]
    refinement: SeparatorSet | None = None

    def __len__(self) -> int:
        return len(self.bags)

    def violations(self) -> list[str]:
        """Return the broken decomposition invariants (empty when valid)."""
        g = self.graph
        problems = []
        covered = set().union(*self.bags) if self.bags else set()
        missing = set(range(g.vertex_count)) - covered
        if missing:
            problems.append(f"{len(missing)} vertices in no bag, e.g. {min(missing)}")
        for b, bag in enumerate(self.bags):
            if not bag:
                problems.append(f"bag {b} is empty")
                continue
            sub, _ = g.induced_subgraph(bag)
            if len(components(sub)) != 1:
                problems.append(f"bag {b} is not connected")
        owner: dict[int, int] = {}
        for b, bag in enumerate(self.bags):
            for v in bag:
                if v in owner and v not in self.separator_vertices:
                    problems.append(
                        f"bags {owner[v]} and {b} share non-separator vertex {v}"
                    )
                owner.setdefault(v, b)
        return problems


# -- detection -------------------------------------------------------------


def _all_within(
    adj: Sequence[Sequence[int]],
    targets: Sequence[int],
    blocked: set[int],
    d: int | float,
) -> bool:
    """True if every pair of ``targets`` is within distance ``d`` avoiding ``blocked``.

    Runs one depth-limited BFS per target and stops as soon as all later
    targets have been reached.
    """
    k = len(targets)
    for idx in range(k - 1):
        src = targets[idx]
        want = set(targets[idx + 1 :])
        want.discard(src)
        if not want:
            continue
        seen = {src, *blocked}
        frontier = [src]
        depth = 0
        while frontier and depth < d:
            depth += 1
            nxt = []
            for x in frontier:
                for y in adj[x]:
                    if y in seen:
                        continue
                    seen.add(y)
                    nxt.append(y)
                    want.discard(y)
            if not want:
                break
            frontier = nxt
        if want:
            return False
    return True


def _is_local_1_separator(adj, v: int, d) -> bool:
    nbrs = adj[v]
    if len(nbrs) < 2:
        return False
    return not _all_within(adj, nbrs, {v}, d)


def _local_1_chunk(args) -> list[int]:
    adj, vertices, d = args
    return [v for v in vertices if _is_local_1_separator(adj, v, d)]


def _chunks(items: list, parts: int) -> list[list]:
    size = max(1, math.ceil(len(items) / parts))
    return [items[i : i + size] for i in range(0, len(items), size)]


def _run_chunks(fn, adj, chunks: list[list], extra, workers: int) -> list:
    if workers <= 1 or len(chunks) <= 1:
        results = [fn((adj, c, *extra)) for c in chunks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(fn, [(adj, c, *extra) for c in chunks]))
    out = []
    for r in results:
        out.extend(r)
    return sorted(out)


def find_local_1_separators(g: Graph, d: int | float, workers: int = 1) -> SeparatorSet:
    """Vertices with two neighbours more than ``d`` apart once the vertex is removed."""
    if d < 1:
        raise ValueError("radius must be at least 1")
    vertices = list(range(g.vertex_count))
    members = _run_chunks(
        _local_1_chunk, g.adjacency, _chunks(vertices, max(1, workers) * 4), (d,), workers
    )
    return SeparatorSet(1, _radius_tag(d), tuple(members))


def _radius_tag(d) -> int:
    return d if math.isinf(d) else int(d)


def _local_2_chunk(args) -> list[tuple[int, int]]:
    adj, vertices, d, excluded = args
    found = []
    for u in vertices:
        if u in excluded:
            continue
        # vertices v > u within distance d of u
        seen = {u}
        frontier = [u]
        partners = []
        depth = 0
        while frontier and depth < d:
            depth += 1
            nxt = []
            for x in frontier:
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
                        if y > u and y not in excluded:
                            partners.append(y)
            frontier = nxt
        for v in sorted(partners):
            targets = sorted((set(adj[u]) | set(adj[v])) - {u, v})
            if len(targets) >= 2 and not _all_within(adj, targets, {u, v}, d):
                found.append((u, v))
    return found


def find_local_2_separators(
    g: Graph,
    d: int | float,
    workers: int = 1,
    one_separators: SeparatorSet | None = None,
) -> SeparatorSet:
    """Pairs ``(u, v)``, ``u < v``, jointly separating their neighbourhood at radius ``d``.

    ``one_separators`` may pass a precomputed result of
    :func:`find_local_1_separators` for the same ``g`` and ``d``.
    """
    if d < 1:
        raise ValueError("radius must be at least 1")
    if one_separators is None:
        one_separators = find_local_1_separators(g, d, workers)
    excluded = frozenset(one_separators.members)
    vertices = list(range(g.vertex_count))
    members = _run_chunks(
        _local_2_chunk,
        g.adjacency,
        _chunks(vertices, max(1, workers) * 4),
        (d, excluded),
        workers,
    )
    return SeparatorSet(2, _radius_tag(d), tuple(members))


# -- decomposition ---------------------------------------------------------


def _bags(g: Graph, separators: frozenset[int]) -> list[frozenset[int]]:
    adj = g.adjacency
    bags = []
    placed: set[int] = set()
    for comp in components(g, separators):
        boundary = {s for v in comp for s in adj[v] if s in separators}
        placed |= boundary
        bags.append(comp | boundary)
    for s in sorted(separators - placed):
        bags.append(frozenset((s,)))
    return bags


def decompose(g: Graph, seps: SeparatorSet) -> Decomposition:
    """Split ``g`` at the separator vertices into overlapping bags.

    Separator vertices with no non-separator neighbour become singleton
    bags, so every vertex lands in some bag.
    """
    separators = seps.vertices()
    if g.vertex_count and len(separators) == g.vertex_count:
        warnings.warn(
            f"every vertex is a separator at radius {seps.radius}; "
            "decomposition degenerates to singletons",
            DegenerateDecompositionWarning,
            stacklevel=2,
        )
    return Decomposition(g, tuple(_bags(g, separators)), seps, separators)


def refine_hierarchical(
    g: Graph, deco: Decomposition, d2: int | float, min_size: int, workers: int = 1
) -> Decomposition:
    """Split every bag of at least ``min_size`` vertices by its own local 2-separators.

    Each large bag is decomposed on its induced subgraph at radius ``d2``;
    smaller bags are kept as they are.
    """
    if min_size < 1:
        raise ValueError("min_size must be at least 1")
    bags: list[frozenset[int]] = []
    new_separators: set[int] = set()
    pairs: set[tuple[int, int]] = set()
    for bag in deco.bags:
        if len(bag) < min_size:
            bags.append(bag)
            continue
        sub, back = g.induced_subgraph(bag)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", DegenerateDecompositionWarning)
            sub_deco = decompose(sub, find_local_2_separators(sub, d2, workers))
        for sub_bag in sub_deco.bags:
            bags.append(frozenset(back[v] for v in sub_bag))
        new_separators |= {back[v] for v in sub_deco.separator_vertices}
        pairs |= {(back[u], back[v]) for u, v in sub_deco.separator_ref.members}
    refinement = SeparatorSet(2, _radius_tag(d2), tuple(sorted(pairs)))
    return Decomposition(
        g,
        tuple(bags),
        deco.separator_ref,
        deco.separator_vertices | new_separators,
        refinement,
    )


def to_cover(deco: Decomposition) -> Cover:
    return Cover.from_sets(deco.graph, deco.bags)


def format_separators(seps: SeparatorSet, g: Graph) -> str:
    """Sidecar text: one separator vertex, or one space-separated pair, per line."""
    if seps.order == 1:
        return "".join(f"{g.label(v)}\n" for v in seps.members)
    return "".join(f"{g.label(u)} {g.label(v)}\n" for u, v in seps.members)

