"""Brute-force reference implementations, independent of the package code paths.

Distances come from networkx; metric sums are evaluated literally over
ordered edge-endpoint pairs with exact fractions.
"""

from fractions import Fraction
from itertools import combinations

import networkx as nx


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.vertex_count))
    h.add_edges_from(g.edges())
    return h


def _dist(apsp, a, b):
    return apsp.get(a, {}).get(b, float("inf"))


def local_1_separators(g, d):
    h = to_nx(g)
    out = []
    for v in h.nodes:
        rest = h.copy()
        rest.remove_node(v)
        apsp = dict(nx.all_pairs_shortest_path_length(rest))
        if any(_dist(apsp, a, b) > d for a, b in combinations(sorted(h[v]), 2)):
            out.append(v)
    return sorted(out)


def local_2_separators(g, d):
    h = to_nx(g)
    ones = set(local_1_separators(g, d))
    apsp_g = dict(nx.all_pairs_shortest_path_length(h))
    out = []
    for u, v in combinations(sorted(h.nodes), 2):
        if u in ones or v in ones or _dist(apsp_g, u, v) > d:
            continue
        rest = h.copy()
        rest.remove_nodes_from((u, v))
        apsp = dict(nx.all_pairs_shortest_path_length(rest))
        near = sorted((set(h[u]) | set(h[v])) - {u, v})
        if any(_dist(apsp, a, b) > d for a, b in combinations(near, 2)):
            out.append((u, v))
    return out


def articulation_points(g):
    """Vertices whose removal increases the number of components."""
    h = to_nx(g)
    base = nx.number_connected_components(h)
    out = set()
    for v in h.nodes:
        rest = h.copy()
        rest.remove_node(v)
        if nx.number_connected_components(rest) > base:
            out.add(v)
    return out


def ordered_edge_pairs(g):
    for u, v in g.edges():
        yield u, v
        yield v, u


def belonging(communities, n):
    k = [sum(1 for c in communities if i in c) for i in range(n)]
    return lambda i, c: Fraction(1, k[i]) if i in c else Fraction(0)


def overlapping_modularity(g, communities):
    """Literal evaluation of the overlapping modularity sum with exact fractions."""
    communities = list(dict.fromkeys(frozenset(c) for c in communities))
    a = belonging(communities, g.vertex_count)
    m = g.edge_count
    pairs = list(ordered_edge_pairs(g))
    total = Fraction(0)
    for c in communities:
        e_in = Fraction(1, 2) * sum(
            (a(i, c) * a(j, c) for i, j in pairs if i in c and j in c), Fraction(0)
        )
        e_out = Fraction(0)
        for d in communities:
            if d is c:
                continue
            e_out += sum(
                (a(i, c) * a(j, d) for i, j in pairs if i in c and j in d), Fraction(0)
            )
        total += e_in / m - ((2 * e_in + e_out) / (2 * m)) ** 2
    return total


def newman_modularity(g, partition):
    """Standard modularity via networkx."""
    return nx.algorithms.community.modularity(to_nx(g), [set(c) for c in partition])


def density(g, communities, c):
    communities = [frozenset(x) for x in communities]
    c = frozenset(c)
    a = belonging(communities, g.vertex_count)
    s = sum(
        (a(i, c) * a(j, c) for i, j in ordered_edge_pairs(g) if i in c and j in c),
        Fraction(0),
    )
    return s / (2 * len(c))
