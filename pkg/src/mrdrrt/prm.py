"""Single-robot probabilistic roadmaps for disc robots in a polygonal workspace.

A roadmap samples collision-free configurations, connects each vertex to its
k nearest neighbours with swept-disc-checked straight edges, and guarantees
(by batch resampling) that start and target end up in the same connected
component.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Union

import numpy as np
from scipy.spatial import cKDTree

from .geometry import Point2, Polygon2, disc_free_at, swept_disc_free

RngLike = Union[int, np.random.Generator]


class RoadmapDisconnectedError(RuntimeError):
    """Start and target could not be connected within the resampling cap."""


@dataclass
class Roadmap:
    """Embedded graph of free configurations for one disc robot."""

    points: List[Point2]
    adjacency: List[List[int]]  # sorted neighbour ids, symmetric
    start_id: int
    target_id: int

    def __len__(self) -> int:
        return len(self.points)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def grow(self, n: int) -> None:
        self.parent.extend(range(len(self.parent), n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _sample_free_point(
    rng: np.random.Generator,
    radius: float,
    workspace: Polygon2,
    obstacles: Sequence[Polygon2],
    taken: set,
    max_attempts: int = 100_000,
) -> Point2:
    xmin, ymin, xmax, ymax = workspace.bbox()
    for _ in range(max_attempts):
        x = float(rng.uniform(xmin, xmax))
        y = float(rng.uniform(ymin, ymax))
        p = (x, y)
        if p in taken:
            continue
        if disc_free_at(p, radius, workspace, obstacles):
            return p
    raise RuntimeError("free-space sampling stalled; workspace may be fully blocked")


def build_roadmap(
    radius: float,
    start: Point2,
    target: Point2,
    workspace: Polygon2,
    obstacles: Sequence[Polygon2],
    n: int = 200,
    k: int = 8,
    rng: RngLike = 0,
    max_batches: int = 10,
) -> Roadmap:
    """Build a roadmap with n vertices (start and target included), each
    connected to up to its k nearest neighbours by collision-free edges.

    If start and target are disconnected after the initial n samples, keeps
    adding batches of n samples up to max_batches, then raises
    RoadmapDisconnectedError.
    """
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    rng = np.random.default_rng(rng)
    start = (float(start[0]), float(start[1]))
    target = (float(target[0]), float(target[1]))
    if not disc_free_at(start, radius, workspace, obstacles):
        raise ValueError(f"start configuration {start} is in collision")
    if not disc_free_at(target, radius, workspace, obstacles):
        raise ValueError(f"target configuration {target} is in collision")

    if start == target:
        points: List[Point2] = [start]
        start_id = target_id = 0
    else:
        points = [start, target]
        start_id, target_id = 0, 1
    taken = set(points)
    while len(points) < n:
        p = _sample_free_point(rng, radius, workspace, obstacles, taken)
        points.append(p)
        taken.add(p)

    adj: List[set] = [set() for _ in points]
    attempted: set = set()
    uf = _UnionFind(len(points))

    def connect_range(lo: int) -> None:
        # Connect every vertex with id >= lo to its k nearest neighbours
        # among all current vertices.
        tree = cKDTree(points)
        kk = min(k + 1, len(points))
        for v in range(lo, len(points)):
            _, idxs = tree.query(points[v], k=kk)
            for u in np.atleast_1d(idxs):
                u = int(u)
                if u == v:
                    continue
                key = (min(u, v), max(u, v))
                if key in attempted:
                    continue
                attempted.add(key)
                if swept_disc_free(points[v], points[u], radius, workspace, obstacles):
                    adj[v].add(u)
                    adj[u].add(v)
                    uf.union(u, v)

    connect_range(0)
    batches = 0
    while uf.find(start_id) != uf.find(target_id):
        if batches >= max_batches:
            raise RoadmapDisconnectedError(
                f"roadmap disconnected: start and target not joined after "
                f"{max_batches} extra batches of {n} samples"
            )
        batches += 1
        lo = len(points)
        for _ in range(n):
            p = _sample_free_point(rng, radius, workspace, obstacles, taken)
            points.append(p)
            taken.add(p)
            adj.append(set())
        uf.grow(len(points))
        connect_range(lo)

    return Roadmap(
        points=points,
        adjacency=[sorted(s) for s in adj],
        start_id=start_id,
        target_id=target_id,
    )


def _check_id(g: Roadmap, v: int) -> None:
    if not (0 <= v < len(g.points)):
        raise ValueError(f"unknown roadmap vertex id {v}")


def neighbors(g: Roadmap, v: int) -> List[int]:
    """Adjacent vertex ids in ascending order."""
    _check_id(g, v)
    return list(g.adjacency[v])


def shortest_path(g: Roadmap, src: int, dst: int) -> Optional[List[int]]:
    """Vertex sequence minimising summed Euclidean edge length, or None if
    src and dst are disconnected."""
    _check_id(g, src)
    _check_id(g, dst)
    if src == dst:
        return [src]
    dist: Dict[int, float] = {src: 0.0}
    prev: Dict[int, int] = {}
    heap = [(0.0, src)]
    done = set()
    while heap:
        d, v = heapq.heappop(heap)
        if v in done:
            continue
        if v == dst:
            break
        done.add(v)
        pv = g.points[v]
        for u in g.adjacency[v]:
            if u in done:
                continue
            nd = d + math.dist(pv, g.points[u])
            if u not in dist or nd < dist[u]:
                dist[u] = nd
                prev[u] = v
                heapq.heappush(heap, (nd, u))
    if dst not in dist:
        return None
    path = [dst]
    while path[-1] != src:
        path.append(prev[path[-1]])
    path.reverse()
    return path


def roadmap_to_dict(g: Roadmap) -> dict:
    """JSON-ready form: {vertices, edges (u<v once), start, target}."""
    edges = sorted(
        (min(u, v), max(u, v)) for v in range(len(g.points)) for u in g.adjacency[v]
    )
    dedup = []
    last = None
    for e in edges:
        if e != last:
            dedup.append([e[0], e[1]])
            last = e
    return {
        "vertices": [[p[0], p[1]] for p in g.points],
        "edges": dedup,
        "start": g.start_id,
        "target": g.target_id,
    }


def roadmap_from_dict(d: dict) -> Roadmap:
    points = [(float(x), float(y)) for x, y in d["vertices"]]
    adj: List[set] = [set() for _ in points]
    for u, v in d["edges"]:
        u, v = int(u), int(v)
        if not (0 <= u < len(points)) or not (0 <= v < len(points)) or u == v:
            raise ValueError(f"bad roadmap edge [{u}, {v}]")
        adj[u].add(v)
        adj[v].add(u)
    start_id = int(d["start"])
    target_id = int(d["target"])
    for vid in (start_id, target_id):
        if not (0 <= vid < len(points)):
            raise ValueError(f"bad start/target id {vid}")
    return Roadmap(
        points=points,
        adjacency=[sorted(s) for s in adj],
        start_id=start_id,
        target_id=target_id,
    )
