"""Pydantic request/response models. The wire shapes mirror the on-disk JSON
formats exactly, so scenario/roadmap/plan files can be posted as-is."""

from __future__ import annotations

from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, Field

Point = Tuple[float, float]


class RobotModel(BaseModel):
    radius: float
    start: Point
    target: Point


class ScenarioModel(BaseModel):
    name: str
    workspace: List[Point]
    obstacles: List[List[Point]] = Field(default_factory=list)
    robots: List[RobotModel]


class RoadmapModel(BaseModel):
    vertices: List[Point]
    edges: List[Tuple[int, int]]
    start: int
    target: int


class PlanStepModel(BaseModel):
    kind: Literal["simultaneous", "single"]
    mover: Optional[int] = None
    targets: List[Point]


class PlanModel(BaseModel):
    scenario: str
    seed: int
    steps: List[PlanStepModel]


class RunReportModel(BaseModel):
    scenario: str
    seed: int
    success: bool
    stop_reason: str
    iterations: int
    visited: int
    path_steps: Optional[int] = None
    roadmap_ms: int
    expand_ms: int
    connect_ms: int
    total_ms: int


class ViolationModel(BaseModel):
    step: Optional[int] = None
    message: str
    robots: Optional[List[int]] = None


class BuildRoadmapsRequest(BaseModel):
    scenario: ScenarioModel
    n: int = 200
    k: int = 8
    seed: int = 0


class BuildRoadmapsResponse(BaseModel):
    roadmaps: List[RoadmapModel]


class PlanRequest(BaseModel):
    scenario: ScenarioModel
    roadmaps: Optional[List[RoadmapModel]] = None
    n: int = 200
    k: int = 8
    seed: int = 0
    max_iterations: int = 30
    mode: Literal["tensor", "cartesian"] = "tensor"
    fallback: bool = False
    time_budget_ms: Optional[int] = None


class PlanResponse(BaseModel):
    plan: Optional[PlanModel] = None
    report: RunReportModel
    violations: List[ViolationModel] = Field(default_factory=list)


class ValidateRequest(BaseModel):
    scenario: ScenarioModel
    roadmaps: List[RoadmapModel]
    plan: PlanModel
    mode: Literal["tensor", "cartesian"] = "tensor"


class ValidateResponse(BaseModel):
    ok: bool
    violations: List[ViolationModel]


class RenderRequest(BaseModel):
    scenario: ScenarioModel
    plan: Optional[PlanModel] = None


class RenderResponse(BaseModel):
    svg: str


class BenchRequest(BaseModel):
    scenarios: List[ScenarioModel]
    seeds: int = 10
    n: int = 200
    k: int = 8
    max_iterations: int = 30
    mode: Literal["tensor", "cartesian"] = "tensor"
    fallback: bool = False
    time_budget_ms: Optional[int] = 60_000
    timings: Literal["wall", "none"] = "wall"


class BenchRowModel(BaseModel):
    scenario: str
    seeds: int
    success_rate: float
    mean_visited: Optional[float] = None
    mean_expand_ms: Optional[float] = None
    mean_connect_ms: Optional[float] = None
    mean_total_ms: Optional[float] = None
    failures: List[RunReportModel] = Field(default_factory=list)


class BenchResponse(BaseModel):
    rows: List[BenchRowModel]
    csv: str


class ScenarioListResponse(BaseModel):
    names: List[str]
