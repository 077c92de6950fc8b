"""Implicitly represented composite roadmap over per-robot roadmaps.

A composite vertex is an m-tuple of per-robot roadmap vertex ids. Vertex and
edge validity are evaluated on demand from the per-robot roadmaps plus
pairwise disc clearances; the product graph is never materialised here (see
`oracle` for the explicit ground-truth build).
"""

from __future__ import annotations

import enum
import itertools
import math
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .geometry import DEGENERACY_EPS, moving_discs_clear
from .prm import Roadmap

CompositeVertex = Tuple[int, ...]


class ProductMode(str, enum.Enum):
    TENSOR = "tensor"
    CARTESIAN = "cartesian"


class CompositeSpace:
    """Query surface of the composite roadmap for m disc robots.

    Tensor edges allow each robot to either traverse one of its roadmap edges
    or stay put; this makes the local connector's one-robot-at-a-time motions
    representable as composite edges. Simultaneous motions must keep every
    robot pair strictly clear for the whole interpolation.
    """

    def __init__(
        self,
        roadmaps: Sequence[Roadmap],
        radii: Sequence[float],
        sample_box: Tuple[float, float, float, float],
        mode: ProductMode = ProductMode.TENSOR,
    ):
        if len(roadmaps) != len(radii) or not roadmaps:
            raise ValueError("need one radius per roadmap")
        self.roadmaps = list(roadmaps)
        self.radii = [float(r) for r in radii]
        self.mode = ProductMode(mode)
        self.m = len(self.roadmaps)
        self._pairs = list(itertools.combinations(range(self.m), 2))
        self._coords = [np.asarray(rm.points, dtype=float) for rm in self.roadmaps]
        self._adj_sets = [[set(nbrs) for nbrs in rm.adjacency] for rm in self.roadmaps]
        # Per-vertex neighbour ids and unit direction vectors, for the
        # vectorised angle argmin in the direction oracle.
        self._nbr_ids: List[List[np.ndarray]] = []
        self._nbr_units: List[List[np.ndarray]] = []
        for i, rm in enumerate(self.roadmaps):
            ids_i, units_i = [], []
            for v, nbrs in enumerate(rm.adjacency):
                ids = np.asarray(nbrs, dtype=np.intp)
                ids_i.append(ids)
                if len(nbrs) == 0:
                    units_i.append(np.zeros((0, 2)))
                    continue
                vecs = self._coords[i][ids] - self._coords[i][v]
                units_i.append(vecs / np.linalg.norm(vecs, axis=1, keepdims=True))
            self._nbr_ids.append(ids_i)
            self._nbr_units.append(units_i)
        xmin, ymin, xmax, ymax = sample_box
        self._lows = np.tile([xmin, ymin], self.m).astype(float)
        self._highs = np.tile([xmax, ymax], self.m).astype(float)

    # -- embedded-graph interface used by the dRRT search --------------------

    def sample_bounds(self) -> Tuple[np.ndarray, np.ndarray]:
        return self._lows, self._highs

    def embedding(self, ids: CompositeVertex) -> np.ndarray:
        out = np.empty(2 * self.m)
        for i, v in enumerate(ids):
            out[2 * i : 2 * i + 2] = self._coords[i][v]
        return out

    def has_vertex(self, ids: CompositeVertex) -> bool:
        if len(ids) != self.m:
            return False
        for i, v in enumerate(ids):
            if not (0 <= v < len(self.roadmaps[i].points)):
                return False
        return self.vertex_valid(ids)

    def neighbors(self, ids: CompositeVertex) -> Iterator[CompositeVertex]:
        """Deterministic enumeration of all valid composite edges out of ids
        under the space's product mode. Used by the completeness fallback and
        by the explicit ground-truth build."""
        self._check_ids(ids)
        if self.mode is ProductMode.CARTESIAN:
            for i in range(self.m):
                for nbr in self.roadmaps[i].adjacency[ids[i]]:
                    cand = ids[:i] + (nbr,) + ids[i + 1 :]
                    if self._cartesian_motion_clear(ids, cand, i):
                        yield cand
            return
        options = [(ids[i],) + tuple(self.roadmaps[i].adjacency[ids[i]]) for i in range(self.m)]
        for cand in itertools.product(*options):
            if cand == ids:
                continue
            if self._tensor_motion_clear(ids, cand):
                yield cand

    # -- validity predicates --------------------------------------------------

    def _check_ids(self, ids: CompositeVertex) -> None:
        if len(ids) != self.m:
            raise ValueError(f"composite vertex must have {self.m} ids, got {len(ids)}")
        for i, v in enumerate(ids):
            if not (0 <= v < len(self.roadmaps[i].points)):
                raise ValueError(f"vertex id {v} out of range for robot {i}")

    def vertex_valid(self, ids: CompositeVertex) -> bool:
        """True iff every robot pair is strictly clear at these placements.
        Robot-obstacle validity is inherited from roadmap membership."""
        self._check_ids(ids)
        pts = [self.roadmaps[i].points[ids[i]] for i in range(self.m)]
        for i, j in self._pairs:
            if math.dist(pts[i], pts[j]) <= self.radii[i] + self.radii[j]:
                return False
        return True

    def _tensor_motion_clear(self, a: CompositeVertex, b: CompositeVertex) -> bool:
        for i, j in self._pairs:
            if a[i] == b[i] and a[j] == b[j]:
                continue  # both parked; static clearance held at the endpoint
            if not moving_discs_clear(
                self.roadmaps[i].points[a[i]],
                self.roadmaps[i].points[b[i]],
                self.radii[i],
                self.roadmaps[j].points[a[j]],
                self.roadmaps[j].points[b[j]],
                self.radii[j],
            ):
                return False
        return True

    def _cartesian_motion_clear(
        self, a: CompositeVertex, b: CompositeVertex, mover: int
    ) -> bool:
        ma, mb = self.roadmaps[mover].points[a[mover]], self.roadmaps[mover].points[b[mover]]
        for j in range(self.m):
            if j == mover:
                continue
            pj = self.roadmaps[j].points[a[j]]
            if not moving_discs_clear(ma, mb, self.radii[mover], pj, pj, self.radii[j]):
                return False
        return True

    def edge_valid(
        self,
        a: CompositeVertex,
        b: CompositeVertex,
        mode: Optional[ProductMode] = None,
    ) -> bool:
        """Composite edge validity between two valid composite vertices.

        Tensor: every robot stays or traverses one of its roadmap edges, and
        all pairs remain clear under simultaneous linear motion. Cartesian:
        exactly one robot traverses a roadmap edge and clears all parked
        robots.
        """
        mode = ProductMode(mode) if mode is not None else self.mode
        if not self.vertex_valid(a) or not self.vertex_valid(b):
            raise ValueError("edge endpoint is not a valid composite vertex")
        movers = [i for i in range(self.m) if a[i] != b[i]]
        for i in movers:
            if b[i] not in self._adj_sets[i][a[i]]:
                return False
        if mode is ProductMode.CARTESIAN:
            if len(movers) != 1:
                return False
            return self._cartesian_motion_clear(a, b, movers[0])
        return self._tensor_motion_clear(a, b)

    # -- direction oracle ------------------------------------------------------

    def direction_oracle(
        self, c: CompositeVertex, q: np.ndarray
    ) -> Optional[CompositeVertex]:
        """Neighbour of c whose direction best matches the direction toward
        the sample q, or None when the best candidate collides (the sample is
        then ignored by the caller) or some robot has no neighbours."""
        if self.mode is ProductMode.CARTESIAN:
            return self._direction_oracle_cartesian(c, q)
        cand = []
        for i in range(self.m):
            ids = self._nbr_ids[i][c[i]]
            if ids.size == 0:
                return None
            qi = q[2 * i : 2 * i + 2]
            d = qi - self._coords[i][c[i]]
            norm = math.hypot(d[0], d[1])
            if norm <= DEGENERACY_EPS:
                # Sample sits on the current configuration: fall back to the
                # Euclidean-nearest neighbour, ties to the lowest id.
                diffs = self._coords[i][ids] - qi
                j = int(np.argmin(np.einsum("ij,ij->i", diffs, diffs)))
            else:
                j = int(np.argmax(self._nbr_units[i][c[i]] @ (d / norm)))
            cand.append(int(ids[j]))
        cand_t = tuple(cand)
        if not self._tensor_motion_clear(c, cand_t):
            return None
        return cand_t

    def _direction_oracle_cartesian(
        self, c: CompositeVertex, q: np.ndarray
    ) -> Optional[CompositeVertex]:
        # Single-mover candidates: the full-space angle to a move of robot i
        # reduces to the dot of (q_i - c_i) with the unit edge vector, scaled
        # by a common factor, so an argmax over those dots is the angle argmin.
        best_score = -math.inf
        best: Optional[Tuple[int, int]] = None
        degenerate = True
        for i in range(self.m):
            qi = q[2 * i : 2 * i + 2]
            d = qi - self._coords[i][c[i]]
            if math.hypot(d[0], d[1]) > DEGENERACY_EPS:
                degenerate = False
        for i in range(self.m):
            ids = self._nbr_ids[i][c[i]]
            if ids.size == 0:
                continue
            qi = q[2 * i : 2 * i + 2]
            if degenerate:
                diffs = self._coords[i][ids] - qi
                scores = -np.sqrt(np.einsum("ij,ij->i", diffs, diffs))
            else:
                d = qi - self._coords[i][c[i]]
                scores = self._nbr_units[i][c[i]] @ d
            j = int(np.argmax(scores))
            if scores[j] > best_score:
                best_score = float(scores[j])
                best = (i, int(ids[j]))
        if best is None:
            return None
        i, nbr = best
        cand = c[:i] + (nbr,) + c[i + 1 :]
        if not self._cartesian_motion_clear(c, cand, i):
            return None
        return cand
