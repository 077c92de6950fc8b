"""Multi-robot motion planning on implicit tensor-product roadmaps.

Per-robot probabilistic roadmaps are combined into an implicitly represented
composite roadmap, searched with a discrete-RRT tree that steps along graph
edges chosen by a direction oracle, and closed out by a prioritized local
connector. A brute-force explicit-product oracle and an independent path
validator provide ground truth for testing.
"""

from .composite import CompositeSpace, CompositeVertex, ProductMode
from .connector import PriorityDigraph, build_priority_digraph, local_connect
from .drrt import (
    CompositePath,
    DrrtParams,
    DrrtTree,
    ExplicitEmbeddedGraph,
    PlanOutcome,
    Step,
    connect_to_target,
    expand,
    expose_fallback_edge,
    plan,
    retrieve_path,
)
from .geometry import (
    DegenerateRayError,
    Polygon2,
    angle_between,
    disc_free_at,
    moving_discs_clear,
    swept_disc_free,
)
from .oracle import (
    CompositeSizeError,
    ExplicitComposite,
    ValidationReport,
    build_explicit_composite,
    explicit_search,
    sequential_orderings_valid,
    validate_path,
)
from .prm import (
    Roadmap,
    RoadmapDisconnectedError,
    build_roadmap,
    neighbors,
    roadmap_from_dict,
    roadmap_to_dict,
    shortest_path,
)
from .scenario import Scenario, ScenarioError, load_scenario, scenario_from_dict

__version__ = "0.1.0"

__all__ = [
    "CompositePath",
    "CompositeSizeError",
    "CompositeSpace",
    "CompositeVertex",
    "DegenerateRayError",
    "DrrtParams",
    "DrrtTree",
    "ExplicitComposite",
    "ExplicitEmbeddedGraph",
    "PlanOutcome",
    "Polygon2",
    "PriorityDigraph",
    "ProductMode",
    "Roadmap",
    "RoadmapDisconnectedError",
    "Scenario",
    "ScenarioError",
    "Step",
    "ValidationReport",
    "angle_between",
    "build_explicit_composite",
    "build_priority_digraph",
    "build_roadmap",
    "connect_to_target",
    "disc_free_at",
    "expand",
    "explicit_search",
    "expose_fallback_edge",
    "load_scenario",
    "local_connect",
    "moving_discs_clear",
    "neighbors",
    "plan",
    "retrieve_path",
    "roadmap_from_dict",
    "roadmap_to_dict",
    "scenario_from_dict",
    "sequential_orderings_valid",
    "shortest_path",
    "swept_disc_free",
    "validate_path",
]
