"""Edge and vertex connectivity of the underlying multigraph.

Lengths play no role here; only the incidence structure matters.  Both
connectivities are computed deterministically with small augmenting-path
max-flow runs, which is plenty at the scale this package targets.
Self-loops never contribute to either quantity.
"""

from __future__ import annotations

from collections import deque

from .circuit import INFINITE, ResistanceValue
from .errors import TooSmall
from .graphs import MetrizedGraph


def _max_flow(capacity: list[dict[int, int]], source: int, sink: int) -> int:
    """Integer max flow by BFS augmentation on an adjacency-dict residual graph."""
    flow = 0
    n = len(capacity)
    while True:
        parent = [-1] * n
        parent[source] = source
        queue = deque([source])
        while queue and parent[sink] == -1:
            u = queue.popleft()
            for w, cap in capacity[u].items():
                if cap > 0 and parent[w] == -1:
                    parent[w] = u
                    queue.append(w)
        if parent[sink] == -1:
            return flow
        # Find the bottleneck on the path, then push it.
        bottleneck = None
        w = sink
        while w != source:
            u = parent[w]
            cap = capacity[u][w]
            bottleneck = cap if bottleneck is None else min(bottleneck, cap)
            w = u
        w = sink
        while w != source:
            u = parent[w]
            capacity[u][w] -= bottleneck
            capacity[w][u] = capacity[w].get(u, 0) + bottleneck
            w = u
        flow += bottleneck


def edge_connectivity(g: MetrizedGraph) -> ResistanceValue:
    """Smallest number of edges whose removal disconnects the graph.

    A single vertex cannot be disconnected, whatever its loops: INFINITE.
    Parallel edges count individually; self-loops are ignored.
    """
    n = g.vertex_count
    if n == 1:
        return INFINITE
    base: list[dict[int, int]] = [dict() for _ in range(n)]
    for a, b, _ in g.edges:
        if a == b:
            continue
        base[a][b] = base[a].get(b, 0) + 1
        base[b][a] = base[b].get(a, 0) + 1
    best = None
    for t in range(1, n):
        capacity = [dict(row) for row in base]
        cut = _max_flow(capacity, 0, t)
        if best is None or cut < best:
            best = cut
    return best


def vertex_connectivity(g: MetrizedGraph) -> int:
    """Smallest number of vertices whose removal disconnects the graph.

    Needs at least two vertices.  If every pair of vertices is adjacent there
    is nothing to separate, and the value is vertex_count - 1 by convention.
    Parallel edges and loops do not matter here.
    """
    n = g.vertex_count
    if n < 2:
        raise TooSmall("vertex connectivity needs at least 2 vertices")
    adjacent = [[False] * n for _ in range(n)]
    for a, b, _ in g.edges:
        if a != b:
            adjacent[a][b] = True
            adjacent[b][a] = True

    non_adjacent_pairs = [(s, t) for s in range(n) for t in range(s + 1, n) if not adjacent[s][t]]
    if not non_adjacent_pairs:
        return n - 1

    # Node-splitting reduction: vertex v becomes v_in = 2v, v_out = 2v + 1
    # with unit capacity across, while graph edges get effectively unbounded
    # capacity between the relevant sides.
    unbounded = n * n + 1
    best = None
    for s, t in non_adjacent_pairs:
        capacity: list[dict[int, int]] = [dict() for _ in range(2 * n)]
        for v in range(n):
            capacity[2 * v][2 * v + 1] = 1 if v not in (s, t) else unbounded
        for a, b, _ in g.edges:
            if a == b:
                continue
            capacity[2 * a + 1][2 * b] = unbounded
            capacity[2 * b + 1][2 * a] = unbounded
        cut = _max_flow(capacity, 2 * s + 1, 2 * t)
        if best is None or cut < best:
            best = cut
    return best
