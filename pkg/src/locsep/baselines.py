"""Label propagation, the in-repo baseline community detector."""

from __future__ import annotations

import logging
import random
from collections import Counter
from dataclasses import dataclass

from .graph import Graph
from .metrics import Cover

__all__ = ["LabelState", "label_propagation", "propagate_labels"]

log = logging.getLogger(__name__)

DEFAULT_MAX_ROUNDS = 100


@dataclass
class LabelState:
    labels: list[int]
    rng_seed: int
    round: int = 0
    converged: bool = False


def propagate_labels(g: Graph, seed: int, max_rounds: int = DEFAULT_MAX_ROUNDS) -> LabelState:
    """Asynchronous label propagation with a seeded visiting order.

    Each round shuffles the vertices, then moves every vertex in turn to the
    most frequent label among its neighbours, preferring the smallest label
    on ties. Stops after a round without changes or after ``max_rounds``.
    """
    if max_rounds < 1:
        raise ValueError("max_rounds must be at least 1")
    rng = random.Random(seed)
    state = LabelState(list(range(g.vertex_count)), seed)
    labels = state.labels
    order = list(range(g.vertex_count))
    while state.round < max_rounds:
        state.round += 1
        rng.shuffle(order)
        changed = False
        for v in order:
            nbrs = g.adjacency[v]
            if not nbrs:
                continue
            counts = Counter(labels[u] for u in nbrs)
            top = max(counts.values())
            best = min(lab for lab, c in counts.items() if c == top)
            if best != labels[v]:
                labels[v] = best
                changed = True
        if not changed:
            state.converged = True
            break
    if not state.converged:
        log.warning("label propagation did not converge in %d rounds", max_rounds)
    return state


def label_propagation(g: Graph, seed: int, max_rounds: int = DEFAULT_MAX_ROUNDS) -> Cover:
    state = propagate_labels(g, seed, max_rounds)
    groups: dict[int, set[int]] = {}
    for v, lab in enumerate(state.labels):
        groups.setdefault(lab, set()).add(v)
    return Cover.from_sets(g, groups.values())
