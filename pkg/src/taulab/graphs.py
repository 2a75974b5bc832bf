"""Metrized graphs: connected multigraphs with positive edge lengths.

A metrized graph doubles as a resistive circuit: each edge is a resistor
whose resistance equals its length.  Self-loops and parallel edges are both
allowed, vertices are integers 0..vertex_count-1, and edges keep the order
in which they were given so that edge indices are stable handles.

Graphs are immutable.  Every construction path goes through the same
validation (index range, positive finite lengths, connectivity), so any
MetrizedGraph in existence is safe to hand to the circuit layer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import (
    BadEdgeIndex,
    BadVertexIndex,
    DisconnectedGraph,
    NonPositiveLength,
)

Edge = tuple[int, int, float]


@dataclass(frozen=True)
class MetrizedGraph:
    """A connected multigraph with a positive length on every edge."""

    vertex_count: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        try:
            n = int(self.vertex_count)
        except (TypeError, ValueError):
            raise BadVertexIndex(f"vertex_count must be an integer, got {self.vertex_count!r}")
        if n < 1:
            raise BadVertexIndex(f"vertex_count must be >= 1, got {n}")
        normalized = []
        for pos, edge in enumerate(self.edges):
            try:
                a, b, length = edge
            except (TypeError, ValueError):
                raise NonPositiveLength(f"edge {pos} must be a (u, w, length) triple, got {edge!r}")
            a = int(a)
            b = int(b)
            length = float(length)
            if not (0 <= a < n) or not (0 <= b < n):
                raise BadVertexIndex(f"edge {pos} touches vertex outside 0..{n - 1}: ({a}, {b})")
            if not math.isfinite(length) or length <= 0.0:
                raise NonPositiveLength(f"edge {pos} has non-positive length {length!r}")
            normalized.append((a, b, length))
        object.__setattr__(self, "vertex_count", n)
        object.__setattr__(self, "edges", tuple(normalized))
        if not _connected(n, self.edges):
            raise DisconnectedGraph(f"graph on {n} vertices with {len(self.edges)} edges is not connected")

    # -- size queries ------------------------------------------------------

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def genus(self) -> int:
        """First Betti number e - v + 1 (count of independent cycles)."""
        return len(self.edges) - self.vertex_count + 1

    @property
    def total_length(self) -> float:
        return math.fsum(length for _, _, length in self.edges)

    def check_vertex(self, p: int) -> int:
        p = int(p)
        if not (0 <= p < self.vertex_count):
            raise BadVertexIndex(f"vertex {p} outside 0..{self.vertex_count - 1}")
        return p

    def check_edge(self, i: int) -> int:
        i = int(i)
        if not (0 <= i < len(self.edges)):
            raise BadEdgeIndex(f"edge {i} outside 0..{len(self.edges) - 1}")
        return i

    # -- local structure ---------------------------------------------------

    def valence(self, p: int) -> int:
        """Number of edge ends meeting p; a self-loop contributes 2."""
        p = self.check_vertex(p)
        count = 0
        for a, b, _ in self.edges:
            if a == p:
                count += 1
            if b == p:
                count += 1
        return count

    def min_valence(self) -> int:
        return min(self.valence(p) for p in range(self.vertex_count))

    # -- scaling -----------------------------------------------------------

    def scaled(self, factor: float) -> "MetrizedGraph":
        factor = float(factor)
        if not math.isfinite(factor) or factor <= 0.0:
            raise NonPositiveLength(f"scale factor must be positive and finite, got {factor!r}")
        return MetrizedGraph(self.vertex_count, tuple((a, b, length * factor) for a, b, length in self.edges))

    def normalize(self) -> "MetrizedGraph":
        """Rescale all lengths by the same factor so total length is 1."""
        total = self.total_length
        if total <= 0.0:
            raise NonPositiveLength("cannot normalize a graph with no edges")
        return self.scaled(1.0 / total)

    # -- global structure ----------------------------------------------------

    def bridges(self) -> frozenset[int]:
        """Edge indices whose deletion disconnects the graph."""
        return _bridge_ids(self)

    def is_bridgeless(self) -> bool:
        return not _bridge_ids(self)


def build_graph(vertex_count: int, edges: Iterable[Sequence]) -> MetrizedGraph:
    """Validate and build a metrized graph from raw (u, w, length) triples."""
    return MetrizedGraph(int(vertex_count), tuple(tuple(edge) for edge in edges))


# -- connectivity helpers (shared with the circuit layer) ---------------------


def _connected(vertex_count: int, edges: Sequence[Edge], skip_edge: int | None = None) -> bool:
    labels = component_labels(vertex_count, edges, skip_edge)
    return max(labels) == 0


def component_labels(vertex_count: int, edges: Sequence[Edge], skip_edge: int | None = None) -> list[int]:
    """Label each vertex with its connected-component index (0-based, by BFS)."""
    adj: list[list[int]] = [[] for _ in range(vertex_count)]
    for i, (a, b, _) in enumerate(edges):
        if i == skip_edge or a == b:
            continue
        adj[a].append(b)
        adj[b].append(a)
    labels = [-1] * vertex_count
    current = 0
    for root in range(vertex_count):
        if labels[root] != -1:
            continue
        labels[root] = current
        frontier = [root]
        while frontier:
            u = frontier.pop()
            for w in adj[u]:
                if labels[w] == -1:
                    labels[w] = current
                    frontier.append(w)
        current += 1
    return labels


@lru_cache(maxsize=16384)
def _bridge_ids(g: MetrizedGraph) -> frozenset[int]:
    """Bridge edges via one depth-first pass (iterative, multigraph aware).

    The entry edge into a vertex is skipped by its id, not by its endpoint,
    so a parallel copy of the tree edge correctly lowers the low-link and
    parallel edges are never reported as bridges.  Self-loops are ignored.
    """
    n = g.vertex_count
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for eid, (a, b, _) in enumerate(g.edges):
        if a == b:
            continue
        adj[a].append((b, eid))
        adj[b].append((a, eid))
    disc = [-1] * n
    low = [0] * n
    out: list[int] = []
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack: list[list[int]] = [[root, -1, 0]]
        while stack:
            u, entry_eid, pos = stack[-1]
            if pos < len(adj[u]):
                stack[-1][2] = pos + 1
                w, eid = adj[u][pos]
                if eid == entry_eid:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append([w, eid, 0])
                else:
                    low[u] = min(low[u], disc[w])
            else:
                stack.pop()
                if entry_eid != -1:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[u])
                    if low[u] > disc[parent]:
                        out.append(entry_eid)
    return frozenset(out)
