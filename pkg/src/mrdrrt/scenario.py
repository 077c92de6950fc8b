"""Scenario model and JSON I/O: workspace, obstacles, and per-robot specs."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import List, Sequence, Union

from .geometry import Point2, Polygon2, disc_free_at


class ScenarioError(ValueError):
    """Scenario file violates a structural or geometric invariant."""


@dataclass(frozen=True)
class RobotSpec:
    radius: float
    start: Point2
    target: Point2


@dataclass
class Scenario:
    name: str
    workspace: Polygon2
    obstacles: List[Polygon2]
    robots: List[RobotSpec]

    @property
    def m(self) -> int:
        return len(self.robots)


def _point(value, what: str) -> Point2:
    try:
        x, y = float(value[0]), float(value[1])
    except (TypeError, ValueError, IndexError) as exc:
        raise ScenarioError(f"{what} is not an [x, y] pair: {value!r}") from exc
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ScenarioError(f"{what} has non-finite coordinates: {value!r}")
    return (x, y)


def _polygon(value, what: str) -> Polygon2:
    if not isinstance(value, (list, tuple)):
        raise ScenarioError(f"{what} is not a vertex list")
    try:
        return Polygon2(tuple(_point(v, f"{what} vertex") for v in value))
    except ValueError as exc:
        raise ScenarioError(f"{what}: {exc}") from exc


def scenario_from_dict(data: dict) -> Scenario:
    """Parse and fully validate a scenario: polygon invariants, free start and
    target placements, and pairwise robot-robot clearance at both endpoints."""
    if not isinstance(data, dict):
        raise ScenarioError("scenario must be a JSON object")
    name = data.get("name")
    if not isinstance(name, str) or not name:
        raise ScenarioError("scenario needs a non-empty name")
    workspace = _polygon(data.get("workspace"), "workspace")
    obstacles = [
        _polygon(o, f"obstacle {i}") for i, o in enumerate(data.get("obstacles", []))
    ]
    robots_raw = data.get("robots")
    if not isinstance(robots_raw, list) or not robots_raw:
        raise ScenarioError("scenario needs a non-empty robots list")
    robots = []
    for i, r in enumerate(robots_raw):
        try:
            radius = float(r["radius"])
        except (TypeError, KeyError, ValueError) as exc:
            raise ScenarioError(f"robot {i} has no numeric radius") from exc
        if not (math.isfinite(radius) and radius > 0):
            raise ScenarioError(f"robot {i} radius must be finite and positive")
        start = _point(r.get("start"), f"robot {i} start")
        target = _point(r.get("target"), f"robot {i} target")
        robots.append(RobotSpec(radius=radius, start=start, target=target))
    scenario = Scenario(name=name, workspace=workspace, obstacles=obstacles, robots=robots)

    for i, r in enumerate(robots):
        if not disc_free_at(r.start, r.radius, workspace, obstacles):
            raise ScenarioError(f"robot {i} start {r.start} is in collision")
        if not disc_free_at(r.target, r.radius, workspace, obstacles):
            raise ScenarioError(f"robot {i} target {r.target} is in collision")
    for i in range(len(robots)):
        for j in range(i + 1, len(robots)):
            limit = robots[i].radius + robots[j].radius
            if math.dist(robots[i].start, robots[j].start) <= limit:
                raise ScenarioError(f"robots {i} and {j} overlap at their starts")
            if math.dist(robots[i].target, robots[j].target) <= limit:
                raise ScenarioError(f"robots {i} and {j} overlap at their targets")
    return scenario


def scenario_to_dict(s: Scenario) -> dict:
    return {
        "name": s.name,
        "workspace": [[x, y] for x, y in s.workspace.vertices],
        "obstacles": [[[x, y] for x, y in o.vertices] for o in s.obstacles],
        "robots": [
            {
                "radius": r.radius,
                "start": [r.start[0], r.start[1]],
                "target": [r.target[0], r.target[1]],
            }
            for r in s.robots
        ],
    }


def load_scenario(path: Union[str, Path]) -> Scenario:
    with open(path, "r", encoding="utf-8") as fh:
        return scenario_from_dict(json.load(fh))


def save_scenario(s: Scenario, path: Union[str, Path]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(scenario_to_dict(s), fh, indent=2)
        fh.write("\n")


def bundled_scenario_names() -> List[str]:
    files = resources.files("mrdrrt").joinpath("scenarios")
    return sorted(p.name[: -len(".json")] for p in files.iterdir() if p.name.endswith(".json"))


def load_bundled_scenario(name: str) -> Scenario:
    ref = resources.files("mrdrrt").joinpath("scenarios").joinpath(f"{name}.json")
    if not ref.is_file():
        raise KeyError(f"no bundled scenario named {name!r}")
    return scenario_from_dict(json.loads(ref.read_text(encoding="utf-8")))
