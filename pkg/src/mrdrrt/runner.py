"""End-to-end planning runs: roadmap construction per robot, dRRT search with
the prioritized connector, plan/report serialization, and plan validation."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .composite import CompositeSpace, ProductMode
from .connector import local_connect
from .drrt import CompositePath, DrrtParams, PlanOutcome, Step, plan
from .oracle import ValidationReport, Violation, validate_path
from .prm import Roadmap, build_roadmap
from .scenario import Scenario


def robot_rng_seed(seed: int, robot: int) -> list:
    """Seed material for robot-local roadmap sampling streams."""
    return [seed, robot]


PLANNER_STREAM = 0x6472    # distinct stream id so roadmap and tree sampling never alias


def build_scenario_roadmaps(
    scenario: Scenario, n: int = 200, k: int = 8, seed: int = 0
) -> List[Roadmap]:
    """One roadmap per robot, deterministically seeded from (seed, robot)."""
    roadmaps = []
    for i, robot in enumerate(scenario.robots):
        rng = np.random.default_rng(robot_rng_seed(seed, i))
        roadmaps.append(
            build_roadmap(
                robot.radius,
                robot.start,
                robot.target,
                scenario.workspace,
                scenario.obstacles,
                n=n,
                k=k,
                rng=rng,
            )
        )
    return roadmaps


def composite_space(
    scenario: Scenario,
    roadmaps: Sequence[Roadmap],
    mode: ProductMode = ProductMode.TENSOR,
) -> CompositeSpace:
    return CompositeSpace(
        roadmaps,
        [r.radius for r in scenario.robots],
        scenario.workspace.bbox(),
        mode=mode,
    )


@dataclass
class PlanRun:
    scenario: Scenario
    seed: int
    outcome: PlanOutcome
    space: CompositeSpace
    start_ids: Tuple[int, ...]
    target_ids: Tuple[int, ...]
    roadmap_seconds: float
    validation: Optional[ValidationReport]

    @property
    def success(self) -> bool:
        # A run only counts as successful once the independent validator
        # approved the path.
        return (
            self.outcome.path is not None
            and self.validation is not None
            and self.validation.ok
        )


def plan_scenario(
    scenario: Scenario,
    roadmaps: Sequence[Roadmap],
    seed: int = 0,
    max_iterations: int = 30,
    mode: ProductMode = ProductMode.TENSOR,
    fallback: bool = False,
    time_budget_ms: Optional[int] = None,
    schedule=None,
    roadmap_seconds: float = 0.0,
    connector=None,
) -> PlanRun:
    space = composite_space(scenario, roadmaps, mode)
    start_ids = tuple(rm.start_id for rm in roadmaps)
    target_ids = tuple(rm.target_id for rm in roadmaps)
    params = DrrtParams(
        max_iterations=max_iterations,
        seed=int(np.random.SeedSequence([seed, PLANNER_STREAM]).generate_state(1)[0]),
        fallback=fallback,
        time_budget_ms=time_budget_ms,
        schedule=schedule,
    )
    if connector is None:
        connector = lambda a, b: local_connect(space, a, b)
    outcome = plan(space, start_ids, target_ids, params, connector)
    validation = None
    if outcome.path is not None:
        validation = validate_path(space, outcome.path, start_ids, target_ids)
    return PlanRun(
        scenario=scenario,
        seed=seed,
        outcome=outcome,
        space=space,
        start_ids=start_ids,
        target_ids=target_ids,
        roadmap_seconds=roadmap_seconds,
        validation=validation,
    )


def plan_to_dict(run: PlanRun) -> Optional[dict]:
    """Plan JSON: {scenario, seed, steps:[{kind, mover?, targets}]}. The
    targets of a step are the per-robot configurations after executing it."""
    if run.outcome.path is None:
        return None
    path = run.outcome.path
    steps = []
    for step, ids in zip(path.steps, path.vertices[1:]):
        entry = {"kind": step.kind}
        if step.kind == "single":
            entry["mover"] = step.mover
        entry["targets"] = [
            [run.space.roadmaps[i].points[v][0], run.space.roadmaps[i].points[v][1]]
            for i, v in enumerate(ids)
        ]
        steps.append(entry)
    return {"scenario": run.scenario.name, "seed": run.seed, "steps": steps}


def run_report(run: PlanRun) -> dict:
    """Run report with per-phase wall times in integer milliseconds."""
    out = run.outcome
    roadmap_ms = int(round(run.roadmap_seconds * 1000))
    expand_ms = int(round(out.expand_seconds * 1000))
    connect_ms = int(round(out.connect_seconds * 1000))
    return {
        "scenario": run.scenario.name,
        "seed": run.seed,
        "success": run.success,
        "stop_reason": out.stop_reason if run.success == out.success else "validator_rejected",
        "iterations": out.iterations,
        "visited": out.tree_size,
        "path_steps": out.path.num_steps() if out.path is not None else None,
        "roadmap_ms": roadmap_ms,
        "expand_ms": expand_ms,
        "connect_ms": connect_ms,
        "total_ms": roadmap_ms + expand_ms + connect_ms,
    }


def resolve_plan_path(
    plan_data: dict, roadmaps: Sequence[Roadmap], start_ids: Sequence[int]
) -> Tuple[Optional[CompositePath], List[Violation]]:
    """Map plan-JSON waypoints back onto roadmap vertex ids by exact
    coordinate lookup. A waypoint that is not a roadmap vertex is reported as
    a violation at its step."""
    lookups: List[Dict[tuple, int]] = [
        {(p[0], p[1]): i for i, p in enumerate(rm.points)} for rm in roadmaps
    ]
    m = len(roadmaps)
    vertices = [tuple(start_ids)]
    steps = []
    for k, step in enumerate(plan_data.get("steps", [])):
        kind = step.get("kind")
        if kind not in ("simultaneous", "single"):
            return None, [Violation(k, f"unknown step kind {kind!r}")]
        targets = step.get("targets")
        if not isinstance(targets, list) or len(targets) != m:
            return None, [Violation(k, f"step needs {m} target configurations")]
        ids = []
        for i, xy in enumerate(targets):
            key = (float(xy[0]), float(xy[1]))
            vid = lookups[i].get(key)
            if vid is None:
                return None, [
                    Violation(k, f"robot {i} waypoint {key} is not a roadmap vertex", (i,))
                ]
            ids.append(vid)
        vertices.append(tuple(ids))
        steps.append(Step(kind, step.get("mover") if kind == "single" else None))
    return CompositePath(vertices, steps), []


def validate_plan_dict(
    scenario: Scenario,
    roadmaps: Sequence[Roadmap],
    plan_data: dict,
    mode: ProductMode = ProductMode.TENSOR,
) -> ValidationReport:
    space = composite_space(scenario, roadmaps, mode)
    start_ids = tuple(rm.start_id for rm in roadmaps)
    target_ids = tuple(rm.target_id for rm in roadmaps)
    path, violations = resolve_plan_path(plan_data, roadmaps, start_ids)
    if path is None:
        return ValidationReport(violations=violations)
    return validate_path(space, path, start_ids, target_ids)


def timed_build_roadmaps(
    scenario: Scenario, n: int, k: int, seed: int
) -> Tuple[List[Roadmap], float]:
    t0 = time.perf_counter()
    roadmaps = build_scenario_roadmaps(scenario, n=n, k=k, seed=seed)
    return roadmaps, time.perf_counter() - t0
