"""Random and named test graphs.

The random generator plants a uniform spanning tree first (via a random
vertex sequence decoded the standard way), so connectivity holds by
construction and no rejection loop is needed for it.  Extra edges, including
self-loops, go on top.  Everything draws from one caller-supplied
random.Random, so a fuzzing run is reproducible from its seed alone.
"""

from __future__ import annotations

import random

from .graphs import MetrizedGraph, build_graph

__all__ = [
    "named_corpus",
    "random_bridgeless_multigraph",
    "random_connected_multigraph",
    "random_length",
]


def random_length(rng: random.Random) -> float:
    """A length drawn log-uniformly from [0.1, 10]."""
    return 10.0 ** rng.uniform(-1.0, 1.0)


def _random_tree_edges(rng: random.Random, v: int) -> list[tuple[int, int]]:
    """A uniformly random labeled tree on v vertices, as an edge list."""
    if v < 2:
        return []
    if v == 2:
        return [(0, 1)]
    code = [rng.randrange(v) for _ in range(v - 2)]
    remaining = [code.count(p) + 1 for p in range(v)]
    edges = []
    for p in code:
        for leaf in range(v):
            if remaining[leaf] == 1:
                edges.append((leaf, p))
                remaining[leaf] -= 1
                remaining[p] -= 1
                break
    last = [p for p in range(v) if remaining[p] == 1]
    edges.append((last[0], last[1]))
    return edges


def random_connected_multigraph(
    rng: random.Random, max_vertices: int = 6, max_edges: int = 12
) -> MetrizedGraph:
    """A random connected multigraph; parallel edges and self-loops allowed."""
    v = rng.randint(2, max(2, max_vertices))
    pairs = _random_tree_edges(rng, v)
    extra = rng.randint(0, max(0, max_edges - len(pairs)))
    for _ in range(extra):
        if rng.random() < 1.0 / v:
            p = rng.randrange(v)
            pairs.append((p, p))
        else:
            a = rng.randrange(v)
            b = rng.randrange(v - 1)
            if b >= a:
                b += 1
            pairs.append((a, b))
    return build_graph(v, [(a, b, random_length(rng)) for a, b in pairs])


def random_bridgeless_multigraph(
    rng: random.Random, max_vertices: int = 6, max_edges: int = 12
) -> MetrizedGraph:
    """Rejection-sample random_connected_multigraph down to bridgeless graphs."""
    while True:
        g = random_connected_multigraph(rng, max_vertices, max_edges)
        if g.is_bridgeless():
            return g


def _banana(n: int) -> MetrizedGraph:
    return build_graph(2, [(0, 1, 1.0) for _ in range(n)])


def named_corpus() -> dict[str, MetrizedGraph]:
    """Small unit-length graphs that exercise every structural corner."""
    return {
        "triangle": build_graph(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]),
        "banana-2": _banana(2),
        "banana-3": _banana(3),
        "banana-4": _banana(4),
        # A circle of circumference 8 with its two marked points off-center;
        # distinct from banana-2, which is the unit version of the same shape.
        "two-edge-circle": build_graph(2, [(0, 1, 2.0), (0, 1, 6.0)]),
        "k4": build_graph(4, [
            (0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0),
            (1, 2, 1.0), (1, 3, 1.0), (2, 3, 1.0),
        ]),
        "prism": build_graph(6, [
            (0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0),
            (3, 4, 1.0), (4, 5, 1.0), (3, 5, 1.0),
            (0, 3, 1.0), (1, 4, 1.0), (2, 5, 1.0),
        ]),
    }
