"""The resistive-circuit layer: effective resistance and voltage data.

Every quantity here comes from one kind of computation: ground a vertex of
the weighted graph Laplacian (conductance 1/length per edge, parallel edges
added, self-loops skipped), invert the grounded block, and read resistances
off the inverse.  The inverse is checked against its defining system and a
SingularSystem is raised if the residual is suspicious, rather than letting
garbage propagate into the invariants.

Resistance across a cut where no current can flow is represented by the
INFINITE marker object, never by a float sentinel, so that the limit
conventions of the invariant layer are explicit branches instead of
accidents of IEEE arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np

from .errors import SingularSystem
from .graphs import MetrizedGraph, component_labels

RESIDUAL_BOUND = 1e-8
# Above this many matrix entries the per-edge inverses fall back to a loop
# instead of one batched LAPACK call, to keep memory bounded.
_BATCH_ENTRY_CAP = 40_000_000


class Infinite:
    """Marker for an unbounded resistance (probe points in separate components)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"


INFINITE = Infinite()

ResistanceValue = Union[float, Infinite]


def is_infinite(value: ResistanceValue) -> bool:
    return value is INFINITE


@dataclass(frozen=True)
class EdgeCircuitData:
    """Resistance data of one edge, measured in the graph with that edge removed.

    ``resistance`` is the effective resistance between the edge's endpoints
    after the edge itself is deleted (INFINITE exactly when the edge is a
    bridge).  ``arm_first``/``arm_second``/``arm_base`` are the three arms of
    the star equivalent of the deleted-edge network seen from the two
    endpoints and the base vertex: arm_first touches the first endpoint,
    arm_second the second, arm_base the base.  For a bridge the arm on the
    far side of the cut from the base is INFINITE and the near one is 0.
    For a self-loop everything collapses: resistance and both endpoint arms
    are 0.
    """

    edge: int
    base: int
    length: float
    resistance: ResistanceValue
    arm_first: ResistanceValue
    arm_second: ResistanceValue
    arm_base: float

    # Set at construction time; a self-loop is a structural fact, not
    # something to be inferred from a zero resistance.
    _loop_flag: bool = False

    @property
    def is_bridge(self) -> bool:
        return is_infinite(self.resistance)

    @property
    def is_loop(self) -> bool:
        return self._loop_flag


def _laplacian(vertex_count: int, edges) -> np.ndarray:
    lap = np.zeros((vertex_count, vertex_count))
    for a, b, length in edges:
        if a == b:
            continue
        c = 1.0 / length
        lap[a, a] += c
        lap[b, b] += c
        lap[a, b] -= c
        lap[b, a] -= c
    return lap


def _grounded_inverse(lap: np.ndarray, ground: int = 0) -> np.ndarray:
    """Invert the Laplacian with one row/column removed, padded back with zeros.

    The returned matrix K satisfies r(x, y) = K[x,x] + K[y,y] - 2 K[x,y]
    whenever the graph is connected, and r(x, ground) = K[x,x].
    """
    n = lap.shape[0]
    full = np.zeros((n, n))
    if n == 1:
        return full
    keep = [i for i in range(n) if i != ground]
    reduced = lap[np.ix_(keep, keep)]
    try:
        inv = np.linalg.inv(reduced)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(f"grounded Laplacian is singular: {exc}") from exc
    residual = np.abs(reduced @ inv - np.eye(n - 1)).max()
    if residual > RESIDUAL_BOUND:
        raise SingularSystem(f"grounded Laplacian solve residual {residual:.3e} exceeds {RESIDUAL_BOUND:.0e}")
    full[np.ix_(keep, keep)] = inv
    return full


def _pair_resistance(K: np.ndarray, x: int, y: int) -> float:
    return K[x, x] + K[y, y] - 2.0 * K[x, y]


def effective_resistance(g: MetrizedGraph, x: int, y: int) -> ResistanceValue:
    """Effective resistance between two vertices of the (connected) graph."""
    x = g.check_vertex(x)
    y = g.check_vertex(y)
    if x == y:
        return 0.0
    K = _grounded_inverse(_laplacian(g.vertex_count, g.edges))
    return _pair_resistance(K, x, y)


def resistance_matrix(g: MetrizedGraph) -> np.ndarray:
    """All-pairs effective resistances from a single grounded factorization."""
    K = _grounded_inverse(_laplacian(g.vertex_count, g.edges))
    d = np.diag(K)
    return d[:, None] + d[None, :] - 2.0 * K


def voltage_j(g: MetrizedGraph, z: int, x: int, y: int) -> float:
    """Potential at x when unit current enters at y and exits at z, grounded at z.

    Equal to (r(x,z) + r(y,z) - r(x,y)) / 2; non-negative, zero at x = z,
    and equal to r(y,z) at x = y.
    """
    z = g.check_vertex(z)
    x = g.check_vertex(x)
    y = g.check_vertex(y)
    K = _grounded_inverse(_laplacian(g.vertex_count, g.edges), ground=z)
    # With the ground at z: r(x,z) = K[x,x], r(y,z) = K[y,y], and the
    # half-sum collapses to the single inverse entry K[x,y].
    return K[x, y]


def _subgraph_resistance(vertex_count: int, edges, skip_edge: int, x: int, y: int) -> float:
    """r(x, y) inside the component of the graph-minus-one-edge containing both."""
    if x == y:
        return 0.0
    labels = component_labels(vertex_count, edges, skip_edge)
    if labels[x] != labels[y]:
        raise SingularSystem("probe vertices ended up in different components")
    keep = [v for v in range(vertex_count) if labels[v] == labels[x]]
    index = {v: k for k, v in enumerate(keep)}
    sub_edges = [
        (index[a], index[b], length)
        for i, (a, b, length) in enumerate(edges)
        if i != skip_edge and a != b and labels[a] == labels[x]
    ]
    K = _grounded_inverse(_laplacian(len(keep), sub_edges))
    return _pair_resistance(K, index[x], index[y])


def edge_circuit_data(g: MetrizedGraph, i: int, base: int) -> EdgeCircuitData:
    """Circuit data for one edge; see all_edge_circuit_data for the batch form."""
    i = g.check_edge(i)
    base = g.check_vertex(base)
    return all_edge_circuit_data(g, base)[i]


@lru_cache(maxsize=16384)
def _deleted_edge_inverses(g: MetrizedGraph):
    """Grounded inverses of the graph with one edge removed, for every edge.

    Returns (inverses, K_full) where inverses[i] is the zero-padded grounded
    inverse for the graph minus edge i (None for bridges and self-loops), and
    K_full is the grounded inverse of the whole graph (None unless a
    self-loop needs it).  All of this is independent of any base vertex, so
    it is cached per graph and shared across bases.

    The batch builds the grounded Laplacian once and obtains each
    deleted-edge matrix by a rank-one correction, inverting all of them in a
    single vectorized call when the total size stays reasonable.
    """
    n = g.vertex_count
    edges = g.edges
    bridge_set = g.bridges()
    lap = _laplacian(n, edges)

    loop_ids = [i for i, (a, b, _) in enumerate(edges) if a == b]
    solve_ids = [i for i, (a, b, _) in enumerate(edges) if a != b and i not in bridge_set]

    K_full = None
    if loop_ids:
        K_full = _grounded_inverse(lap)

    inverses: list[np.ndarray | None] = [None] * len(edges)
    if solve_ids and n >= 2:
        reduced = np.delete(np.delete(lap, 0, axis=0), 0, axis=1)
        m = len(solve_ids)
        if m * (n - 1) * (n - 1) <= _BATCH_ENTRY_CAP:
            stack = np.repeat(reduced[None, :, :], m, axis=0)
            for k, i in enumerate(solve_ids):
                a, b, length = edges[i]
                c = 1.0 / length
                if a != 0:
                    stack[k, a - 1, a - 1] -= c
                if b != 0:
                    stack[k, b - 1, b - 1] -= c
                if a != 0 and b != 0:
                    stack[k, a - 1, b - 1] += c
                    stack[k, b - 1, a - 1] += c
            try:
                inv = np.linalg.inv(stack)
            except np.linalg.LinAlgError as exc:
                raise SingularSystem(f"deleted-edge Laplacian is singular: {exc}") from exc
            residual = np.abs(np.matmul(stack, inv) - np.eye(n - 1)[None, :, :]).max()
            if residual > RESIDUAL_BOUND:
                raise SingularSystem(
                    f"deleted-edge solve residual {residual:.3e} exceeds {RESIDUAL_BOUND:.0e}"
                )
            for k, i in enumerate(solve_ids):
                inverses[i] = inv[k]
        else:
            for i in solve_ids:
                a, b, length = edges[i]
                c = 1.0 / length
                one = reduced.copy()
                if a != 0:
                    one[a - 1, a - 1] -= c
                if b != 0:
                    one[b - 1, b - 1] -= c
                if a != 0 and b != 0:
                    one[a - 1, b - 1] += c
                    one[b - 1, a - 1] += c
                try:
                    inv_one = np.linalg.inv(one)
                except np.linalg.LinAlgError as exc:
                    raise SingularSystem(f"deleted-edge Laplacian is singular: {exc}") from exc
                residual = np.abs(one @ inv_one - np.eye(n - 1)).max()
                if residual > RESIDUAL_BOUND:
                    raise SingularSystem(
                        f"deleted-edge solve residual {residual:.3e} exceeds {RESIDUAL_BOUND:.0e}"
                    )
                inverses[i] = inv_one
    return tuple(inverses), K_full


def all_edge_circuit_data(g: MetrizedGraph, base: int) -> tuple[EdgeCircuitData, ...]:
    """Per-edge resistance and star-arm data with respect to one base vertex.

    For each edge e = (a, b) the edge is removed and the rest of the network
    is reduced, as seen from a, b and the base, to a star with three arms.
    The deleted-edge inverses are shared across bases through a cache, so
    asking for several bases costs one factorization pass plus cheap reads.
    """
    base = g.check_vertex(base)
    n = g.vertex_count
    edges = g.edges
    bridge_set = g.bridges()
    inverses, K_full = _deleted_edge_inverses(g)

    def entry(inv: np.ndarray, x: int, y: int) -> float:
        if x == 0 or y == 0:
            return 0.0
        return inv[x - 1, y - 1]

    def pair(inv: np.ndarray, x: int, y: int) -> float:
        if x == y:
            return 0.0
        return entry(inv, x, x) + entry(inv, y, y) - 2.0 * entry(inv, x, y)

    out: list[EdgeCircuitData] = []
    for i, (a, b, length) in enumerate(edges):
        if a == b:
            arm_base = _pair_resistance(K_full, base, a) if base != a else 0.0
            out.append(
                EdgeCircuitData(
                    edge=i, base=base, length=length,
                    resistance=0.0, arm_first=0.0, arm_second=0.0,
                    arm_base=arm_base, _loop_flag=True,
                )
            )
        elif i in bridge_set:
            labels = component_labels(n, edges, skip_edge=i)
            if labels[base] == labels[a]:
                arm_base = _subgraph_resistance(n, edges, i, base, a)
                out.append(
                    EdgeCircuitData(
                        edge=i, base=base, length=length,
                        resistance=INFINITE, arm_first=0.0, arm_second=INFINITE,
                        arm_base=arm_base,
                    )
                )
            else:
                arm_base = _subgraph_resistance(n, edges, i, base, b)
                out.append(
                    EdgeCircuitData(
                        edge=i, base=base, length=length,
                        resistance=INFINITE, arm_first=INFINITE, arm_second=0.0,
                        arm_base=arm_base,
                    )
                )
        else:
            inv = inverses[i]
            r_ab = pair(inv, a, b)
            r_pa = pair(inv, base, a)
            r_pb = pair(inv, base, b)
            arm_first = 0.5 * (r_pa + r_ab - r_pb)
            arm_second = r_ab - arm_first
            arm_base = r_pa - arm_first
            out.append(
                EdgeCircuitData(
                    edge=i, base=base, length=length,
                    resistance=r_ab, arm_first=arm_first, arm_second=arm_second,
                    arm_base=arm_base,
                )
            )
    return tuple(out)
