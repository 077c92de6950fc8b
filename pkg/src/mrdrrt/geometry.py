"""Exact 2D primitives and collision predicates for disc robots among polygons.

All collision tests are closed-set: clearance exactly equal to the required
radius counts as a collision. Swept checks are resolved in closed form
(segment-segment distance, quadratic minimisation of the relative motion);
nothing is time-sampled, so there is no discretisation tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

Point2 = Tuple[float, float]

# Single global tolerance, used for degeneracy detection only (zero-length
# rays), never as a collision margin.
DEGENERACY_EPS = 1e-9


class DegenerateRayError(ValueError):
    """Angle query with a zero-length ray (point coincides with the origin)."""


def _is_finite_point(p: Sequence[float]) -> bool:
    return len(p) == 2 and math.isfinite(p[0]) and math.isfinite(p[1])


def point_segment_distance(p: Point2, a: Point2, b: Point2) -> float:
    """Distance from point p to the closed segment ab (exact)."""
    ax, ay = a
    dx, dy = b[0] - ax, b[1] - ay
    px, py = p[0] - ax, p[1] - ay
    dd = dx * dx + dy * dy
    if dd == 0.0:
        return math.hypot(px, py)
    t = (px * dx + py * dy) / dd
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    return math.hypot(px - t * dx, py - t * dy)


def _orient(a: Point2, b: Point2, c: Point2) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _on_segment(a: Point2, b: Point2, p: Point2) -> bool:
    # Assumes p collinear with ab; checks the bounding box.
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def segments_intersect(a: Point2, b: Point2, c: Point2, d: Point2) -> bool:
    """True iff closed segments ab and cd share at least one point."""
    o1 = _orient(a, b, c)
    o2 = _orient(a, b, d)
    o3 = _orient(c, d, a)
    o4 = _orient(c, d, b)
    if ((o1 > 0) != (o2 > 0)) and ((o3 > 0) != (o4 > 0)) and o1 != 0 and o2 != 0 and o3 != 0 and o4 != 0:
        return True
    if o1 == 0 and _on_segment(a, b, c):
        return True
    if o2 == 0 and _on_segment(a, b, d):
        return True
    if o3 == 0 and _on_segment(c, d, a):
        return True
    if o4 == 0 and _on_segment(c, d, b):
        return True
    return False


def segment_segment_distance(a: Point2, b: Point2, c: Point2, d: Point2) -> float:
    """Minimum distance between closed segments ab and cd (0 when they touch)."""
    if segments_intersect(a, b, c, d):
        return 0.0
    return min(
        point_segment_distance(a, c, d),
        point_segment_distance(b, c, d),
        point_segment_distance(c, a, b),
        point_segment_distance(d, a, b),
    )


def polygon_signed_area(vertices: Sequence[Point2]) -> float:
    """Shoelace area; positive for counter-clockwise orientation."""
    area = 0.0
    n = len(vertices)
    for i in range(n):
        x0, y0 = vertices[i]
        x1, y1 = vertices[(i + 1) % n]
        area += x0 * y1 - x1 * y0
    return 0.5 * area


@dataclass(frozen=True)
class Polygon2:
    """Simple polygon with counter-clockwise vertex order."""

    vertices: Tuple[Point2, ...]

    def __post_init__(self):
        verts = tuple((float(x), float(y)) for x, y in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if len(verts) < 3:
            raise ValueError("polygon needs at least 3 vertices")
        for v in verts:
            if not _is_finite_point(v):
                raise ValueError(f"non-finite polygon vertex {v!r}")
        n = len(verts)
        for i in range(n):
            if verts[i] == verts[(i + 1) % n]:
                raise ValueError("repeated consecutive polygon vertex")
        if polygon_signed_area(verts) <= 0.0:
            raise ValueError("polygon must be counter-clockwise and non-degenerate")
        # Simplicity: non-adjacent edges must be strictly apart.
        edges = self.edges()
        for i in range(n):
            for j in range(i + 1, n):
                if j == i + 1 or (i == 0 and j == n - 1):
                    continue
                (a, b), (c, d) = edges[i], edges[j]
                if segment_segment_distance(a, b, c, d) == 0.0:
                    raise ValueError("self-intersecting polygon")

    def edges(self) -> List[Tuple[Point2, Point2]]:
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def bbox(self) -> Tuple[float, float, float, float]:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)


def point_in_polygon(p: Point2, polygon: Polygon2) -> bool:
    """Ray-casting containment test. Boundary points may land either way;
    callers that care about the boundary combine this with a distance check."""
    x, y = p
    inside = False
    verts = polygon.vertices
    n = len(verts)
    for i in range(n):
        x0, y0 = verts[i]
        x1, y1 = verts[(i + 1) % n]
        if (y0 > y) != (y1 > y):
            xc = x0 + (y - y0) * (x1 - x0) / (y1 - y0)
            if x < xc:
                inside = not inside
    return inside


def _min_edge_distance_point(p: Point2, polygon: Polygon2) -> float:
    return min(point_segment_distance(p, a, b) for a, b in polygon.edges())


def _min_edge_distance_segment(a: Point2, b: Point2, polygon: Polygon2) -> float:
    return min(segment_segment_distance(a, b, c, d) for c, d in polygon.edges())


def disc_free_at(
    center: Point2,
    radius: float,
    workspace: Polygon2,
    obstacles: Sequence[Polygon2],
) -> bool:
    """True iff a disc of the given radius placed at center lies strictly inside
    the workspace and strictly clear of every obstacle."""
    if not point_in_polygon(center, workspace):
        return False
    if _min_edge_distance_point(center, workspace) <= radius:
        return False
    for obs in obstacles:
        if point_in_polygon(center, obs):
            return False
        if _min_edge_distance_point(center, obs) <= radius:
            return False
    return True


def swept_disc_free(
    a: Point2,
    b: Point2,
    radius: float,
    workspace: Polygon2,
    obstacles: Sequence[Polygon2],
) -> bool:
    """True iff the disc swept along segment ab keeps strictly positive
    clearance from the workspace boundary and every obstacle.

    Endpoints are assumed individually free; with that precondition a
    clearance above the radius from every boundary edge implies the whole
    swept capsule stays in the free space.
    """
    if _min_edge_distance_segment(a, b, workspace) <= radius:
        return False
    for obs in obstacles:
        if _min_edge_distance_segment(a, b, obs) <= radius:
            return False
    return True


def min_moving_distance(a1: Point2, b1: Point2, a2: Point2, b2: Point2) -> float:
    """Minimum center distance between two points moving linearly over t in [0,1].

    Closed form: |r0 + t*dr| is minimised at the clamped critical point of the
    quadratic, where r0 is the relative position at t=0 and dr the relative
    displacement.
    """
    rx = a2[0] - a1[0]
    ry = a2[1] - a1[1]
    dx = (b2[0] - a2[0]) - (b1[0] - a1[0])
    dy = (b2[1] - a2[1]) - (b1[1] - a1[1])
    dd = dx * dx + dy * dy
    if dd == 0.0:
        return math.hypot(rx, ry)
    t = -(rx * dx + ry * dy) / dd
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    return math.hypot(rx + t * dx, ry + t * dy)


def moving_discs_clear(
    a1: Point2,
    b1: Point2,
    r1: float,
    a2: Point2,
    b2: Point2,
    r2: float,
) -> bool:
    """True iff two discs translating simultaneously along a1->b1 and a2->b2
    stay strictly farther apart than the sum of their radii for all t in [0,1]."""
    return min_moving_distance(a1, b1, a2, b2) > r1 + r2


def angle_between(origin: Point2, u: Point2, v: Point2) -> float:
    """Smaller angle, in [0, pi], between the rays origin->u and origin->v.

    Raises DegenerateRayError when either ray has (near-)zero length.
    """
    ux, uy = u[0] - origin[0], u[1] - origin[1]
    vx, vy = v[0] - origin[0], v[1] - origin[1]
    lu = math.hypot(ux, uy)
    lv = math.hypot(vx, vy)
    if lu <= DEGENERACY_EPS or lv <= DEGENERACY_EPS:
        raise DegenerateRayError("zero-length ray in angle query")
    c = (ux * vx + uy * vy) / (lu * lv)
    if c > 1.0:
        c = 1.0
    elif c < -1.0:
        c = -1.0
    return math.acos(c)
