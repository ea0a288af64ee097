"""Orthogonality graphs, 0/1 value assignments and exact classical bounds.

Nodes represent rays, edges orthogonality relations, and declared bases
complete orthogonal bases.  A valid assignment gives each node 0 or 1 so
that no two orthogonal nodes are both 1 and every declared basis carries
exactly one 1.  classical_max finds the exact maximum weight of such an
assignment by backtracking with unit propagation; graphs admitting none
are reported as non-colourable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations

import numpy as np

from .errors import DegeneracyError, ValidationError
from .pentagram3 import Pentagram
from .spectral import StateVector, orthogonal_complement_3d

EDGE_TOL = 1e-9


def _normalise_edges(edges) -> tuple[tuple[int, int], ...]:
    out = set()
    for i, j in edges:
        i, j = int(i), int(j)
        if i == j:
            raise ValidationError(f"self-edge on node {i}")
        out.add((min(i, j), max(i, j)))
    return tuple(sorted(out))


@dataclass(frozen=True)
class OrthogonalityGraph:
    """Nodes, orthogonality edges, declared bases, optional realization."""

    node_labels: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]
    bases: tuple[tuple[int, ...], ...] = ()
    realization: tuple[StateVector, ...] | None = None

    def __post_init__(self):
        labels = tuple(str(s) for s in self.node_labels)
        if len(set(labels)) != len(labels):
            raise ValidationError("node labels must be unique")
        edges = _normalise_edges(self.edges)
        n = len(labels)
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n):
                raise ValidationError(f"edge ({i},{j}) references a missing node")
        bases = tuple(tuple(sorted(int(i) for i in basis)) for basis in self.bases)
        for basis in bases:
            if len(set(basis)) != len(basis):
                raise ValidationError(f"basis {basis} repeats a node")
            if any(not 0 <= i < n for i in basis):
                raise ValidationError(f"basis {basis} references a missing node")
        realization = self.realization
        if realization is not None:
            realization = tuple(realization)
            if len(realization) != n:
                raise ValidationError("realization must cover every node")
        object.__setattr__(self, "node_labels", labels)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "bases", bases)
        object.__setattr__(self, "realization", realization)

    @property
    def node_count(self) -> int:
        return len(self.node_labels)

    @property
    def dim(self) -> int | None:
        return self.realization[0].dim if self.realization else None

    def index_of(self, label: str) -> int:
        return self.node_labels.index(label)

    def vector(self, label: str) -> StateVector:
        if self.realization is None:
            raise ValidationError("graph carries no realization")
        return self.realization[self.index_of(label)]

    def adjacency(self) -> np.ndarray:
        adj = np.zeros((self.node_count, self.node_count), dtype=bool)
        for i, j in self.edges:
            adj[i, j] = adj[j, i] = True
        return adj

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in set(self.edges)


def validate_graph(graph: OrthogonalityGraph) -> None:
    """Check structural and, when realized, geometric consistency.

    Raises ValidationError naming the first offending edge or basis:
    every declared basis must be a clique of size equal to the dimension,
    and every edge must join orthogonal vectors within 1e-9.
    """
    edge_set = set(graph.edges)
    for basis in graph.bases:
        for i, j in combinations(basis, 2):
            if (min(i, j), max(i, j)) not in edge_set:
                raise ValidationError(
                    f"basis {basis} contains the non-edge pair ({i},{j})"
                )
    if graph.realization is None:
        return
    dim = graph.realization[0].dim
    if any(v.dim != dim for v in graph.realization):
        raise ValidationError("realization mixes dimensions")
    for basis in graph.bases:
        if len(basis) != dim:
            raise ValidationError(
                f"basis {basis} has size {len(basis)}, expected dimension {dim}"
            )
    for i, j in graph.edges:
        overlap = abs(graph.realization[i].inner(graph.realization[j]))
        if overlap > EDGE_TOL:
            raise ValidationError(
                f"edge ({graph.node_labels[i]},{graph.node_labels[j]}) has overlap {overlap:.3e}"
            )


@dataclass(frozen=True)
class KSAssignment:
    """0/1 truth values for the nodes of an orthogonality graph."""

    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if any(v not in (0, 1) for v in vals):
            raise ValidationError("assignment values must be 0 or 1")
        object.__setattr__(self, "values", vals)

    def is_valid(self, graph: OrthogonalityGraph) -> bool:
        if len(self.values) != graph.node_count:
            return False
        for i, j in graph.edges:
            if self.values[i] and self.values[j]:
                return False
        return all(sum(self.values[i] for i in basis) == 1 for basis in graph.bases)

    def ones(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.values) if v)


@dataclass(frozen=True)
class ClassicalMaxResult:
    """Outcome of the exact classical bound search."""

    colorable: bool
    max_ones: int | None
    assignment: KSAssignment | None
    weight_set: tuple[int, ...] = field(default=())


def classical_max(graph: OrthogonalityGraph, weight_set=None) -> ClassicalMaxResult:
    """Exact maximum number of 1-valued nodes of ``weight_set`` over all
    valid assignments; reports non-colourability when none exists.

    Backtracking assigns most-constrained nodes first (basis membership,
    then degree) and propagates forced values through edges and the
    exactly-one basis rule.
    """
    n = graph.node_count
    weight = tuple(sorted(int(i) for i in (weight_set if weight_set is not None else range(n))))
    in_weight = np.zeros(n, dtype=bool)
    in_weight[list(weight)] = True

    neighbours = [[] for _ in range(n)]
    for i, j in graph.edges:
        neighbours[i].append(j)
        neighbours[j].append(i)
    node_bases = [[] for _ in range(n)]
    for b, basis in enumerate(graph.bases):
        for i in basis:
            node_bases[i].append(b)

    order = sorted(range(n), key=lambda i: (-len(node_bases[i]), -len(neighbours[i]), i))
    rank = {node: r for r, node in enumerate(order)}

    values = [-1] * n
    best: dict = {"count": -1, "assignment": None}

    def propagate(node: int, value: int, trail: list) -> bool:
        stack = [(node, value)]
        while stack:
            current, val = stack.pop()
            if values[current] != -1:
                if values[current] != val:
                    return False
                continue
            values[current] = val
            trail.append(current)
            if val == 1:
                for other in neighbours[current]:
                    if values[other] == 1:
                        return False
                    if values[other] == -1:
                        stack.append((other, 0))
            for b in node_bases[current]:
                basis = graph.bases[b]
                ones = sum(1 for i in basis if values[i] == 1)
                free = [i for i in basis if values[i] == -1]
                if ones > 1:
                    return False
                if ones == 1:
                    stack.extend((i, 0) for i in free)
                elif not free:
                    return False
                elif len(free) == 1:
                    stack.append((free[0], 1))
        return True

    def undo(trail: list) -> None:
        for node in trail:
            values[node] = -1

    def search(position: int) -> None:
        while position < n and values[order[position]] != -1:
            position += 1
        current = sum(1 for i in weight if values[i] == 1)
        optimistic = current + sum(1 for i in weight if values[i] == -1)
        if optimistic <= best["count"]:
            return
        if position == n:
            if current > best["count"]:
                best["count"] = current
                best["assignment"] = KSAssignment(tuple(values))
            return
        node = order[position]
        branch_order = (1, 0) if in_weight[node] else (1, 0)
        for value in branch_order:
            trail: list = []
            if propagate(node, value, trail):
                search(position + 1)
            undo(trail)

    search(0)
    if best["count"] < 0:
        return ClassicalMaxResult(False, None, None, weight)
    return ClassicalMaxResult(True, best["count"], best["assignment"], weight)


# ---------------------------------------------------------------------------
# The ten-node two-pentagon subgraph whose lower half is forced by the upper.
#
# Node wiring (labels fixed once):
#   upper 5-cycle  psi_u - e2 - e1 - f1 - f2 - psi_u
#   e3 completes the triad (e1, e2), f3 completes (f1, f2)
#   psi_d is orthogonal to e3 and f3; g = comp(e3, f2), h = comp(f3, e2)
# The declared bases are the two triads.  Under the Kochen-Specker rules
# psi_u and psi_d can never both take the value 1.
# ---------------------------------------------------------------------------

KS_SUBGRAPH_LABELS = ("psi_u", "e1", "e2", "e3", "f1", "f2", "f3", "psi_d", "g", "h")

_KS_EDGES_BY_LABEL = (
    ("psi_u", "e2"),
    ("e2", "e1"),
    ("e1", "f1"),
    ("f1", "f2"),
    ("f2", "psi_u"),
    ("e1", "e3"),
    ("e2", "e3"),
    ("f1", "f3"),
    ("f2", "f3"),
    ("psi_d", "e3"),
    ("psi_d", "f3"),
    ("g", "e3"),
    ("g", "f2"),
    ("h", "f3"),
    ("h", "e2"),
)

_KS_BASES_BY_LABEL = (("e1", "e2", "e3"), ("f1", "f2", "f3"))


def realize_ks_subgraph(upper: Pentagram) -> OrthogonalityGraph:
    """Complete an upper pentagon to the full ten-node subgraph.

    The orthogonality cycle of the pentagram vectors v0..v4 is
    v0-v2-v4-v1-v3, mapped to (psi_u, e2, e1, f1, f2).  The five lower
    rays follow by orthogonal completion and are unique for a
    non-degenerate upper pentagon.
    """
    if upper.dim != 3:
        raise ValidationError("the subgraph construction lives in dimension 3")
    if upper.is_degenerate():
        raise DegeneracyError("degenerate upper pentagon: lower rays are undefined")
    v = upper.vectors
    psi_u, e2, e1, f1, f2 = v[0], v[2], v[4], v[1], v[3]
    e3 = orthogonal_complement_3d(e1, e2)
    f3 = orthogonal_complement_3d(f1, f2)
    psi_d = orthogonal_complement_3d(e3, f3)
    g = orthogonal_complement_3d(e3, f2)
    h = orthogonal_complement_3d(f3, e2)
    by_label = {
        "psi_u": psi_u,
        "e1": e1,
        "e2": e2,
        "e3": e3,
        "f1": f1,
        "f2": f2,
        "f3": f3,
        "psi_d": psi_d,
        "g": g,
        "h": h,
    }
    index = {label: i for i, label in enumerate(KS_SUBGRAPH_LABELS)}
    graph = OrthogonalityGraph(
        node_labels=KS_SUBGRAPH_LABELS,
        edges=tuple((index[i], index[j]) for i, j in _KS_EDGES_BY_LABEL),
        bases=tuple(tuple(index[i] for i in basis) for basis in _KS_BASES_BY_LABEL),
        realization=tuple(by_label[label] for label in KS_SUBGRAPH_LABELS),
    )
    validate_graph(graph)
    return graph


def ks_upper_pentagon_labels() -> tuple[str, ...]:
    """Upper pentagon in pentagram vector order (orthogonal pairs k, k+2)."""
    return ("psi_u", "f1", "e2", "f2", "e1")


def induced_pentagons(graph: OrthogonalityGraph) -> list[tuple[int, ...]]:
    """All 5-node subsets whose induced subgraph is exactly a 5-cycle.

    Results are sorted node tuples in lexicographic order.  A subset
    qualifies when each member has induced degree 2 and the five edges
    form one connected cycle (2-regular and connected on 5 nodes).
    """
    adj = graph.adjacency()
    found = []
    for subset in combinations(range(graph.node_count), 5):
        sub = adj[np.ix_(subset, subset)]
        degrees = sub.sum(axis=0)
        if not np.all(degrees == 2):
            continue
        # 2-regular on five nodes is either C5 or disconnected; five nodes
        # cannot split into two cycles, so degree check alone suffices,
        # but keep the walk for clarity.
        seen = {0}
        current, previous = 0, -1
        for _ in range(5):
            nxt = [k for k in range(5) if sub[current, k] and k != previous]
            previous, current = current, nxt[0]
            seen.add(current)
        if len(seen) == 5:
            found.append(subset)
    return found


def pentagon_cycle_order(graph: OrthogonalityGraph, subset) -> tuple[int, ...]:
    """Reorder an induced pentagon into pentagram convention.

    Returns the nodes as (w0..w4) with the orthogonality edges exactly on
    the pairs (k, k+2) mod 5.
    """
    subset = tuple(subset)
    adj = graph.adjacency()
    sub = adj[np.ix_(subset, subset)]
    cycle = [0]
    previous = -1
    for _ in range(4):
        nxt = [k for k in range(5) if sub[cycle[-1], k] and k != previous]
        previous = cycle[-1]
        cycle.append(nxt[0])
    ordered = [subset[i] for i in cycle]
    return (ordered[0], ordered[3], ordered[1], ordered[4], ordered[2])


def cabello18() -> OrthogonalityGraph:
    """The 18-ray, 9-tetrad set in dimension 4, loaded from packaged data.

    Every ray sits in exactly two tetrads, so a valid assignment would
    make the nine basis sums (all 1) add to the odd number 9 while each
    ray is counted twice; the set is therefore non-colourable.
    """
    payload = json.loads(
        resources.files("pentaks.data").joinpath("cabello18.json").read_text()
    )
    labels = tuple(payload["labels"])
    rays = np.array(payload["rays"], dtype=float)
    vectors = tuple(StateVector.normalized(ray) for ray in rays)
    gram = np.abs(np.array([v.amplitudes for v in vectors]) @ np.array([v.amplitudes for v in vectors]).conj().T)
    edges = tuple(
        (i, j)
        for i in range(len(labels))
        for j in range(i + 1, len(labels))
        if gram[i, j] < EDGE_TOL
    )
    index = {label: i for i, label in enumerate(labels)}
    bases = tuple(tuple(index[name] for name in basis) for basis in payload["bases"])
    graph = OrthogonalityGraph(labels, edges, bases, vectors)
    validate_graph(graph)
    return graph


# -- JSON wire format -------------------------------------------------------


def statevector_to_json(vec: StateVector) -> dict:
    return {
        "dim": vec.dim,
        "re": [float(x) for x in vec.amplitudes.real],
        "im": [float(x) for x in vec.amplitudes.imag],
    }


def statevector_from_json(payload) -> StateVector:
    try:
        dim = int(payload["dim"])
        re = payload["re"]
        im = payload["im"]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"state vector JSON is missing field {exc}") from None
    if len(re) != dim or len(im) != dim:
        raise ValidationError("state vector JSON: 're'/'im' length differs from 'dim'")
    return StateVector(np.asarray(re, dtype=float) + 1j * np.asarray(im, dtype=float))


def graph_to_json(graph: OrthogonalityGraph) -> dict:
    payload = {
        "nodes": list(graph.node_labels),
        "edges": [list(edge) for edge in graph.edges],
        "bases": [list(basis) for basis in graph.bases],
    }
    if graph.realization is not None:
        payload["realization"] = {
            label: statevector_to_json(vec)
            for label, vec in zip(graph.node_labels, graph.realization)
        }
    return payload


def graph_from_json(payload) -> OrthogonalityGraph:
    try:
        labels = tuple(str(s) for s in payload["nodes"])
        edges = payload["edges"]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"graph JSON is missing field {exc}") from None
    bases = payload.get("bases", [])
    realization = None
    if "realization" in payload and payload["realization"] is not None:
        table = payload["realization"]
        missing = [label for label in labels if label not in table]
        if missing:
            raise ValidationError(f"graph JSON realization misses nodes {missing}")
        realization = tuple(statevector_from_json(table[label]) for label in labels)
    return OrthogonalityGraph(labels, edges, tuple(tuple(b) for b in bases), realization)
