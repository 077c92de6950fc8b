"""Ground-truth machinery: explicit composite roadmap construction, complete
search over it, an independent path validator, and a brute-force check of
sequential movement orderings.

Everything here exists to certify the implicit-search modules on instances
small enough to enumerate; it deliberately re-derives collision conditions
from geometric primitives instead of reusing the planner's predicates.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from .composite import CompositeSpace, CompositeVertex, ProductMode
from .drrt import CompositePath, ExplicitEmbeddedGraph, Step
from .geometry import moving_discs_clear, point_segment_distance


class CompositeSizeError(RuntimeError):
    """The requested explicit product exceeds the vertex-count cap."""


@dataclass
class ExplicitComposite:
    """Materialised composite roadmap: all valid vertex tuples and all valid
    edges under the chosen product mode."""

    tuples: List[CompositeVertex]
    index: Dict[CompositeVertex, int]
    adjacency: List[List[int]]
    adj_sets: List[Set[int]]
    graph: ExplicitEmbeddedGraph
    mode: ProductMode

    @property
    def vertex_count(self) -> int:
        return len(self.tuples)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def has_edge(self, a: CompositeVertex, b: CompositeVertex) -> bool:
        ia = self.index.get(a)
        ib = self.index.get(b)
        if ia is None or ib is None:
            return False
        return ib in self.adj_sets[ia]


def build_explicit_composite(
    space: CompositeSpace,
    mode: Optional[ProductMode] = None,
    cap: int = 10**6,
) -> ExplicitComposite:
    """Enumerate every valid composite vertex and edge. Raises
    CompositeSizeError when the raw product of roadmap sizes exceeds cap."""
    mode = ProductMode(mode) if mode is not None else space.mode
    total = 1
    for rm in space.roadmaps:
        total *= len(rm.points)
    if total > cap:
        raise CompositeSizeError(
            f"explicit product has {total} raw vertices, above the cap of {cap}"
        )
    tuples: List[CompositeVertex] = []
    index: Dict[CompositeVertex, int] = {}
    for ids in itertools.product(*(range(len(rm.points)) for rm in space.roadmaps)):
        if space.vertex_valid(ids):
            index[ids] = len(tuples)
            tuples.append(ids)
    adjacency: List[Set[int]] = [set() for _ in tuples]
    enum_space = space
    if mode is not space.mode:
        enum_space = CompositeSpace(
            space.roadmaps, space.radii, _space_box(space), mode=mode
        )
    for ia, ids in enumerate(tuples):
        for cand in enum_space.neighbors(ids):
            ib = index[cand]
            adjacency[ia].add(ib)
            adjacency[ib].add(ia)
    adjacency_sorted = [sorted(a) for a in adjacency]
    if tuples:
        points = np.array([space.embedding(t) for t in tuples])
    else:
        points = np.zeros((0, 2 * space.m))
    graph = ExplicitEmbeddedGraph(points, adjacency_sorted, sample_box=space.sample_bounds())
    return ExplicitComposite(
        tuples=tuples,
        index=index,
        adjacency=adjacency_sorted,
        adj_sets=[set(a) for a in adjacency_sorted],
        graph=graph,
        mode=mode,
    )


def _space_box(space: CompositeSpace) -> Tuple[float, float, float, float]:
    lows, highs = space.sample_bounds()
    return float(lows[0]), float(lows[1]), float(highs[0]), float(highs[1])


def explicit_search(
    ec: ExplicitComposite, s: CompositeVertex, t: CompositeVertex
) -> Optional[CompositePath]:
    """Breadth-first hop-shortest path over the explicit composite roadmap,
    or None when s and t are disconnected."""
    if s not in ec.index:
        raise ValueError(f"invalid start vertex {s!r}")
    if t not in ec.index:
        raise ValueError(f"invalid target vertex {t!r}")
    src, dst = ec.index[s], ec.index[t]
    if src == dst:
        return CompositePath([s], [])
    prev = {src: -1}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if v == dst:
            break
        for u in ec.adjacency[v]:
            if u not in prev:
                prev[u] = v
                queue.append(u)
    if dst not in prev:
        return None
    ids = [dst]
    while ids[-1] != src:
        ids.append(prev[ids[-1]])
    ids.reverse()
    vertices = [ec.tuples[i] for i in ids]
    return CompositePath(vertices, [Step("simultaneous")] * (len(vertices) - 1))


@dataclass
class Violation:
    step: Optional[int]
    message: str
    robots: Optional[Tuple[int, ...]] = None

    def to_dict(self) -> dict:
        out = {"step": self.step, "message": self.message}
        if self.robots is not None:
            out["robots"] = list(self.robots)
        return out


@dataclass
class ValidationReport:
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"ok": self.ok, "violations": [v.to_dict() for v in self.violations]}


def validate_path(
    space: CompositeSpace,
    path: CompositePath,
    expected_start: CompositeVertex,
    expected_end: CompositeVertex,
) -> ValidationReport:
    """Independent step-by-step validation of a composite path.

    Checks endpoints, per-robot roadmap-edge (or stay) membership, pairwise
    clearance of simultaneous motions, and parked-robot clearance of
    single-mover steps. Violations are data, not errors.
    """
    report = ValidationReport()
    add = report.violations.append
    m = space.m
    if not path.vertices:
        add(Violation(None, "empty path"))
        return report
    if path.vertices[0] != tuple(expected_start):
        add(Violation(0, f"path starts at {path.vertices[0]}, expected {tuple(expected_start)}"))
    if path.vertices[-1] != tuple(expected_end):
        add(
            Violation(
                len(path.steps),
                f"path ends at {path.vertices[-1]}, expected {tuple(expected_end)}",
            )
        )
    for k, ids in enumerate(path.vertices):
        if len(ids) != m:
            add(Violation(k, f"composite vertex arity {len(ids)} != {m}"))
            return report
        for i, v in enumerate(ids):
            if not (0 <= v < len(space.roadmaps[i].points)):
                add(Violation(k, f"robot {i} vertex id {v} out of range", (i,)))
                return report
        pts = [space.roadmaps[i].points[ids[i]] for i in range(m)]
        for i in range(m):
            for j in range(i + 1, m):
                if math.dist(pts[i], pts[j]) <= space.radii[i] + space.radii[j]:
                    add(Violation(k, "static robot-robot contact", (i, j)))
    adj_sets = [[set(nbrs) for nbrs in rm.adjacency] for rm in space.roadmaps]
    for k, (u, v, step) in enumerate(zip(path.vertices, path.vertices[1:], path.steps)):
        movers = [i for i in range(m) if u[i] != v[i]]
        for i in movers:
            if v[i] not in adj_sets[i][u[i]]:
                add(Violation(k, f"robot {i} jumps off its roadmap ({u[i]} -> {v[i]})", (i,)))
        if step.kind == "single":
            if step.mover is None or not (0 <= step.mover < m):
                add(Violation(k, "single-mover step without a valid mover index"))
                continue
            if movers != [step.mover]:
                add(
                    Violation(
                        k,
                        f"single-mover step must move exactly robot {step.mover}, moved {movers}",
                    )
                )
                continue
            i = step.mover
            a, b = space.roadmaps[i].points[u[i]], space.roadmaps[i].points[v[i]]
            for j in range(m):
                if j == i:
                    continue
                pj = space.roadmaps[j].points[u[j]]
                if point_segment_distance(pj, a, b) <= space.radii[i] + space.radii[j]:
                    add(Violation(k, "mover sweeps through a parked robot", (i, j)))
        elif step.kind == "simultaneous":
            for i in range(m):
                for j in range(i + 1, m):
                    if u[i] == v[i] and u[j] == v[j]:
                        continue
                    if not moving_discs_clear(
                        space.roadmaps[i].points[u[i]],
                        space.roadmaps[i].points[v[i]],
                        space.radii[i],
                        space.roadmaps[j].points[u[j]],
                        space.roadmaps[j].points[v[j]],
                        space.radii[j],
                    ):
                        add(Violation(k, "simultaneous motion brings robots into contact", (i, j)))
        else:
            add(Violation(k, f"unknown step kind {step.kind!r}"))
    return report


def sequential_orderings_valid(
    space: CompositeSpace,
    c_from: CompositeVertex,
    c_to: CompositeVertex,
    paths: Sequence[Sequence[int]],
) -> List[Tuple[int, ...]]:
    """Brute force over all m! sequential movement orders; returns every order
    under which each mover's full polyline clears all other robots at their
    current parked placements."""
    m = space.m
    valid = []
    for perm in itertools.permutations(range(m)):
        positions = [space.roadmaps[i].points[c_from[i]] for i in range(m)]
        ok = True
        for robot in perm:
            pts = [space.roadmaps[robot].points[v] for v in paths[robot]]
            limit_base = space.radii[robot]
            for j in range(m):
                if j == robot:
                    continue
                limit = limit_base + space.radii[j]
                pj = positions[j]
                segs = zip(pts, pts[1:]) if len(pts) > 1 else [(pts[0], pts[0])]
                if any(point_segment_distance(pj, a, b) <= limit for a, b in segs):
                    ok = False
                    break
            if not ok:
                break
            positions[robot] = pts[-1]
        if ok:
            valid.append(perm)
    return valid
