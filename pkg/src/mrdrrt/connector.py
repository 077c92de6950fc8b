"""Prioritized local connector between two composite vertices.

Each robot gets a shortest path on its own roadmap; collisions of those paths
against the other robots' parked start/target placements induce a priority
digraph. If the digraph is acyclic the robots are emitted one at a time in
topological order, otherwise the connection attempt fails. The emitted motion
is re-validated step by step as defense in depth.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import List, Optional, Sequence, Set, Tuple

from .composite import CompositeSpace, CompositeVertex
from .drrt import CompositePath, Step
from .geometry import moving_discs_clear, point_segment_distance
from .prm import shortest_path


@dataclass
class PriorityDigraph:
    """Directed graph over robot indices; an edge (i, j) means robot i must
    move after robot j."""

    m: int
    edges: Set[Tuple[int, int]]

    def topological_order(self) -> Optional[List[int]]:
        """Movement order satisfying all after-constraints, lowest robot index
        first among ready robots; None when the digraph has a cycle."""
        succ = {i: [] for i in range(self.m)}
        indeg = {i: 0 for i in range(self.m)}
        for i, j in sorted(self.edges):
            # i after j: j must be emitted before i.
            succ[j].append(i)
            indeg[i] += 1
        ready = [i for i in range(self.m) if indeg[i] == 0]
        heapq.heapify(ready)
        order = []
        while ready:
            v = heapq.heappop(ready)
            order.append(v)
            for u in succ[v]:
                indeg[u] -= 1
                if indeg[u] == 0:
                    heapq.heappush(ready, u)
        if len(order) != self.m:
            return None
        return order


def _sweep_hits_disc(
    path_pts: Sequence, r_mover: float, center, r_static: float
) -> bool:
    """Closed-set check of a disc swept along a polyline against a parked disc."""
    limit = r_mover + r_static
    if len(path_pts) == 1:
        a = path_pts[0]
        return point_segment_distance(center, a, a) <= limit
    for a, b in zip(path_pts, path_pts[1:]):
        if point_segment_distance(center, a, b) <= limit:
            return True
    return False


def build_priority_digraph(
    space: CompositeSpace,
    c_from: CompositeVertex,
    c_to: CompositeVertex,
    paths: Sequence[Sequence[int]],
) -> PriorityDigraph:
    """Derive after/before constraints from sweeping each robot's full path
    against every other robot parked at its start and at its target."""
    m = space.m
    if len(paths) != m:
        raise ValueError("need one path per robot")
    pts = []
    for i, path in enumerate(paths):
        if not path or path[0] != c_from[i] or path[-1] != c_to[i]:
            raise ValueError(f"path for robot {i} does not run from its start to its target")
        pts.append([space.roadmaps[i].points[v] for v in path])
    edges: Set[Tuple[int, int]] = set()
    for i in range(m):
        for j in range(m):
            if i == j:
                continue
            start_j = space.roadmaps[j].points[c_from[j]]
            target_j = space.roadmaps[j].points[c_to[j]]
            if _sweep_hits_disc(pts[i], space.radii[i], start_j, space.radii[j]):
                edges.add((i, j))  # i moves after j
            if _sweep_hits_disc(pts[i], space.radii[i], target_j, space.radii[j]):
                edges.add((j, i))  # i moves before j
    return PriorityDigraph(m=m, edges=edges)


def local_connect(
    space: CompositeSpace,
    c_from: CompositeVertex,
    c_to: CompositeVertex,
) -> Optional[CompositePath]:
    """Join two composite vertices by per-robot shortest paths executed
    sequentially under a priority ordering; None when some robot is
    disconnected, the priority digraph is cyclic, or re-validation fails."""
    if c_from == c_to:
        return CompositePath([c_from], [])
    paths = []
    for i in range(space.m):
        p = shortest_path(space.roadmaps[i], c_from[i], c_to[i])
        if p is None:
            return None
        paths.append(p)
    order = build_priority_digraph(space, c_from, c_to, paths).topological_order()
    if order is None:
        return None

    vertices: List[CompositeVertex] = [c_from]
    steps: List[Step] = []
    current = list(c_from)
    for robot in order:
        r_i = space.radii[robot]
        rm = space.roadmaps[robot]
        for u, v in zip(paths[robot], paths[robot][1:]):
            a, b = rm.points[u], rm.points[v]
            # Re-validation: the mover must clear every parked robot at its
            # current (possibly partially moved) placement.
            for j in range(space.m):
                if j == robot:
                    continue
                pj = space.roadmaps[j].points[current[j]]
                if not moving_discs_clear(a, b, r_i, pj, pj, space.radii[j]):
                    return None
            current[robot] = v
            vertices.append(tuple(current))
            steps.append(Step("single", robot))
    return CompositePath(vertices, steps)


