"""Discrete-RRT search over geometrically embedded graphs.

The tree grows by Voronoi-biased expansion: sample a point in the embedding
box, find the nearest tree node, and step to the graph neighbour returned by
the direction oracle. Works both on explicit test graphs and on the implicit
composite roadmap, which share the same query interface (embedding, direction
oracle, neighbour enumeration, sampling box).
"""

from __future__ import annotations

import math
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, List, Optional, Protocol, Sequence, Tuple

import numpy as np

from .geometry import DEGENERACY_EPS

Vertex = Hashable


class EmbeddedGraph(Protocol):
    def sample_bounds(self) -> Tuple[np.ndarray, np.ndarray]: ...

    def embedding(self, v: Vertex) -> np.ndarray: ...

    def has_vertex(self, v: Vertex) -> bool: ...

    def neighbors(self, v: Vertex): ...

    def direction_oracle(self, v: Vertex, q: np.ndarray) -> Optional[Vertex]: ...


class ExplicitEmbeddedGraph:
    """Explicitly stored graph with integer vertices embedded in R^d."""

    def __init__(
        self,
        points,
        adjacency: Sequence[Sequence[int]],
        sample_box: Optional[Tuple[np.ndarray, np.ndarray]] = None,
    ):
        self.points = np.asarray(points, dtype=float)
        if self.points.ndim != 2:
            raise ValueError("points must be an (n, d) array")
        self.adjacency = [sorted(int(u) for u in nbrs) for nbrs in adjacency]
        if len(self.adjacency) != len(self.points):
            raise ValueError("adjacency size must match point count")
        self._nbr_ids = [np.asarray(nbrs, dtype=np.intp) for nbrs in self.adjacency]
        self._nbr_units = []
        for v, ids in enumerate(self._nbr_ids):
            if ids.size == 0:
                self._nbr_units.append(np.zeros((0, self.points.shape[1])))
                continue
            vecs = self.points[ids] - self.points[v]
            self._nbr_units.append(vecs / np.linalg.norm(vecs, axis=1, keepdims=True))
        if sample_box is None:
            lows = self.points.min(axis=0)
            highs = self.points.max(axis=0)
        else:
            lows, highs = (np.asarray(b, dtype=float) for b in sample_box)
        self._bounds = (lows, highs)

    def sample_bounds(self):
        return self._bounds

    def embedding(self, v: int) -> np.ndarray:
        return self.points[v]

    def has_vertex(self, v) -> bool:
        return isinstance(v, (int, np.integer)) and 0 <= v < len(self.points)

    def neighbors(self, v: int) -> List[int]:
        return self.adjacency[v]

    def direction_oracle(self, v: int, q: np.ndarray) -> Optional[int]:
        ids = self._nbr_ids[v]
        if ids.size == 0:
            return None
        d = q - self.points[v]
        norm = math.sqrt(float(d @ d))
        if norm <= DEGENERACY_EPS:
            diffs = self.points[ids] - q
            j = int(np.argmin(np.einsum("ij,ij->i", diffs, diffs)))
        else:
            j = int(np.argmax(self._nbr_units[v] @ (d / norm)))
        return int(ids[j])


@dataclass(frozen=True)
class Step:
    """Annotation of one path step: all robots move together, or one robot
    moves while the others stay parked."""

    kind: str  # "simultaneous" | "single"
    mover: Optional[int] = None


SIMULTANEOUS = Step("simultaneous")


@dataclass
class CompositePath:
    """Vertex sequence with one step annotation per consecutive pair."""

    vertices: List[Vertex]
    steps: List[Step]

    def __post_init__(self):
        if len(self.vertices) != len(self.steps) + 1:
            raise ValueError("need exactly one step annotation per vertex pair")

    @property
    def start(self) -> Vertex:
        return self.vertices[0]

    @property
    def end(self) -> Vertex:
        return self.vertices[-1]

    def num_steps(self) -> int:
        return len(self.steps)


Connector = Callable[[Vertex, Vertex], Optional[CompositePath]]


def trivial_connector(a: Vertex, b: Vertex) -> Optional[CompositePath]:
    """Succeeds only when the two vertices already coincide."""
    if a == b:
        return CompositePath([a], [])
    return None


class DrrtTree:
    """Rooted search tree with an exact nearest-neighbour index over the
    embedding points and a membership set over graph vertices."""

    def __init__(self, root: Vertex, root_point: np.ndarray):
        d = len(root_point)
        self._points = np.empty((64, d))
        self._points[0] = root_point
        self._size = 1
        self.vertices: List[Vertex] = [root]
        self.parents: List[int] = [-1]
        self.index = {root: 0}
        # Completeness-fallback bookkeeping: nodes whose candidate edges have
        # not all been enumerated yet.
        self._unexposed = deque([0])
        self._edge_iters = {}

    def __len__(self) -> int:
        return self._size

    def __contains__(self, v: Vertex) -> bool:
        return v in self.index

    def point(self, i: int) -> np.ndarray:
        return self._points[i]

    def add(self, v: Vertex, point: np.ndarray, parent: int) -> int:
        if v in self.index:
            raise ValueError("vertex already in tree")
        if self._size == len(self._points):
            grown = np.empty((2 * self._size, self._points.shape[1]))
            grown[: self._size] = self._points[: self._size]
            self._points = grown
        idx = self._size
        self._points[idx] = point
        self._size += 1
        self.vertices.append(v)
        self.parents.append(parent)
        self.index[v] = idx
        self._unexposed.append(idx)
        return idx

    def nearest(self, q: np.ndarray) -> int:
        diffs = self._points[: self._size] - q
        return int(np.argmin(np.einsum("ij,ij->i", diffs, diffs)))

    def k_nearest(self, q: np.ndarray, k: int) -> List[int]:
        diffs = self._points[: self._size] - q
        d2 = np.einsum("ij,ij->i", diffs, diffs)
        order = np.argsort(d2, kind="stable")
        return [int(i) for i in order[: min(k, self._size)]]

    def edges(self) -> List[Tuple[Vertex, Vertex]]:
        return [
            (self.vertices[self.parents[i]], self.vertices[i])
            for i in range(1, self._size)
        ]

    def path_to_root(self, i: int) -> List[int]:
        path = [i]
        while self.parents[path[-1]] >= 0:
            path.append(self.parents[path[-1]])
        path.reverse()
        return path

    def fallback_exhausted(self) -> bool:
        return not self._unexposed


class _DeadlineReached(Exception):
    pass


_EXPAND_CHUNK = 2048


def expand(
    tree: DrrtTree,
    graph: EmbeddedGraph,
    n_samples: int,
    rng: np.random.Generator,
    deadline: Optional[float] = None,
) -> int:
    """Run n_samples Voronoi-biased expansion iterations; returns the number
    of nodes added. Iterations whose oracle query comes back empty, or whose
    result is already in the tree, are skipped silently."""
    lows, highs = graph.sample_bounds()
    added = 0
    remaining = n_samples
    while remaining > 0:
        chunk = min(remaining, _EXPAND_CHUNK)
        samples = rng.uniform(lows, highs, size=(chunk, len(lows)))
        for row in samples:
            near = tree.nearest(row)
            new = graph.direction_oracle(tree.vertices[near], row)
            if new is not None and new not in tree.index:
                tree.add(new, graph.embedding(new), near)
                added += 1
        remaining -= chunk
        if deadline is not None and time.perf_counter() > deadline:
            raise _DeadlineReached
    return added


def expose_fallback_edge(tree: DrrtTree, graph: EmbeddedGraph) -> bool:
    """Expose one not-yet-enumerated candidate edge of some tree node, adding
    its endpoint when new. Returns True iff a node was added; False when the
    exposed endpoint was already known or every edge is already exposed."""
    while tree._unexposed:
        idx = tree._unexposed[0]
        it = tree._edge_iters.get(idx)
        if it is None:
            it = iter(graph.neighbors(tree.vertices[idx]))
            tree._edge_iters[idx] = it
        nxt = next(it, None)
        if nxt is None:
            tree._unexposed.popleft()
            tree._edge_iters.pop(idx, None)
            continue
        if nxt not in tree.index:
            tree.add(nxt, graph.embedding(nxt), idx)
            return True
        return False
    return False


@dataclass
class ConnectAttempt:
    anchor: Optional[int]
    suffix: Optional[CompositePath]
    tried: int

    @property
    def success(self) -> bool:
        return self.suffix is not None


def connect_to_target(
    tree: DrrtTree,
    graph: EmbeddedGraph,
    t: Vertex,
    k: int,
    connector: Connector,
) -> ConnectAttempt:
    """Try the connector from each of the k tree nodes nearest to t's
    embedding (ascending distance); first success wins."""
    tried = 0
    for idx in tree.k_nearest(graph.embedding(t), k):
        tried += 1
        suffix = connector(tree.vertices[idx], t)
        if suffix is not None:
            return ConnectAttempt(anchor=idx, suffix=suffix, tried=tried)
    return ConnectAttempt(anchor=None, suffix=None, tried=tried)


def retrieve_path(tree: DrrtTree, anchor: int, suffix: CompositePath) -> CompositePath:
    """Concatenate the root-to-anchor tree path with the connector suffix,
    dropping the duplicated junction vertex."""
    if suffix.vertices[0] != tree.vertices[anchor]:
        raise ValueError("suffix does not start at the anchor tree node")
    prefix = [tree.vertices[i] for i in tree.path_to_root(anchor)]
    vertices = prefix + suffix.vertices[1:]
    steps = [SIMULTANEOUS] * (len(prefix) - 1) + list(suffix.steps)
    return CompositePath(vertices, steps)


def default_schedule(i: int) -> Tuple[int, int]:
    """Parameter-free schedule: 2^i expansion samples and i connection
    candidates at main-loop iteration i (1-based)."""
    return 2**i, i


@dataclass
class DrrtParams:
    max_iterations: int = 30
    seed: int = 0
    fallback: bool = False
    time_budget_ms: Optional[int] = None
    schedule: Optional[Callable[[int], Tuple[int, int]]] = None


@dataclass
class IterationStats:
    iteration: int
    samples: int
    tree_size: int
    candidates_tried: int


@dataclass
class PlanOutcome:
    path: Optional[CompositePath]
    iterations: int
    tree_size: int
    stop_reason: str  # success | max_iterations | time_budget | graph_exhausted
    expand_seconds: float
    connect_seconds: float
    iteration_log: List[IterationStats] = field(default_factory=list)
    tree: Optional[DrrtTree] = None

    @property
    def success(self) -> bool:
        return self.path is not None


def plan(
    graph: EmbeddedGraph,
    s: Vertex,
    t: Vertex,
    params: DrrtParams,
    connector: Connector = trivial_connector,
) -> PlanOutcome:
    """Grow a tree from s and try to connect it to t under the iteration
    schedule. Returns the found path or a failure report with tree size and
    iteration count."""
    if not graph.has_vertex(s):
        raise ValueError(f"invalid start vertex {s!r}")
    if not graph.has_vertex(t):
        raise ValueError(f"invalid target vertex {t!r}")
    schedule = params.schedule or default_schedule
    rng = np.random.default_rng(params.seed)
    tree = DrrtTree(s, graph.embedding(s))
    if s == t:
        return PlanOutcome(
            path=CompositePath([s], []),
            iterations=0,
            tree_size=1,
            stop_reason="success",
            expand_seconds=0.0,
            connect_seconds=0.0,
            tree=tree,
        )
    deadline = None
    if params.time_budget_ms is not None:
        deadline = time.perf_counter() + params.time_budget_ms / 1000.0
    expand_s = 0.0
    connect_s = 0.0
    log: List[IterationStats] = []

    def outcome(path, iters, reason):
        return PlanOutcome(
            path=path,
            iterations=iters,
            tree_size=len(tree),
            stop_reason=reason,
            expand_seconds=expand_s,
            connect_seconds=connect_s,
            iteration_log=log,
            tree=tree,
        )

    for i in range(1, params.max_iterations + 1):
        n_samples, k_candidates = schedule(i)
        if n_samples < 1 or k_candidates < 1:
            raise ValueError(f"schedule must give N >= 1 and K >= 1 at iteration {i}")
        t0 = time.perf_counter()
        try:
            expand(tree, graph, n_samples, rng, deadline)
        except _DeadlineReached:
            expand_s += time.perf_counter() - t0
            return outcome(None, i, "time_budget")
        expand_s += time.perf_counter() - t0

        t0 = time.perf_counter()
        attempt = connect_to_target(
            tree, graph, t, min(k_candidates, len(tree)), connector
        )
        connect_s += time.perf_counter() - t0
        log.append(IterationStats(i, n_samples, len(tree), attempt.tried))
        if attempt.success:
            return outcome(retrieve_path(tree, attempt.anchor, attempt.suffix), i, "success")

        if params.fallback:
            expose_fallback_edge(tree, graph)
            if tree.fallback_exhausted():
                return outcome(None, i, "graph_exhausted")
        if deadline is not None and time.perf_counter() > deadline:
            return outcome(None, i, "time_budget")
    return outcome(None, params.max_iterations, "max_iterations")
