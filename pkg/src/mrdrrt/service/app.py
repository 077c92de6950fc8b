"""HTTP surface of the planner: scenario catalog, roadmap construction,
planning, validation, rendering, and the benchmark harness."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import bench as bench_mod
from ..composite import ProductMode
from ..prm import RoadmapDisconnectedError, roadmap_from_dict, roadmap_to_dict
from ..render import render_svg
from ..runner import (
    plan_scenario,
    plan_to_dict,
    run_report,
    timed_build_roadmaps,
    validate_plan_dict,
)
from ..scenario import (
    ScenarioError,
    bundled_scenario_names,
    load_bundled_scenario,
    scenario_from_dict,
    scenario_to_dict,
)
from .models import (
    BenchRequest,
    BenchResponse,
    BuildRoadmapsRequest,
    BuildRoadmapsResponse,
    PlanRequest,
    PlanResponse,
    RenderRequest,
    RenderResponse,
    ScenarioListResponse,
    ScenarioModel,
    ValidateRequest,
    ValidateResponse,
)

app = FastAPI(title="mrdrrt planning service", version="0.1.0")


def _scenario(model: ScenarioModel):
    try:
        return scenario_from_dict(model.model_dump())
    except ScenarioError as exc:
        raise HTTPException(status_code=422, detail=str(exc))


def _roadmaps(models):
    try:
        return [roadmap_from_dict(m.model_dump()) for m in models]
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.get("/scenarios", response_model=ScenarioListResponse)
def list_scenarios():
    return ScenarioListResponse(names=bundled_scenario_names())


@app.get("/scenarios/{name}", response_model=ScenarioModel)
def get_scenario(name: str):
    try:
        scenario = load_bundled_scenario(name)
    except KeyError:
        raise HTTPException(status_code=404, detail=f"no bundled scenario named {name!r}")
    return ScenarioModel(**scenario_to_dict(scenario))


@app.post("/roadmaps/build", response_model=BuildRoadmapsResponse)
def build_roadmaps(req: BuildRoadmapsRequest):
    scenario = _scenario(req.scenario)
    try:
        roadmaps, _ = timed_build_roadmaps(scenario, n=req.n, k=req.k, seed=req.seed)
    except RoadmapDisconnectedError as exc:
        raise HTTPException(status_code=409, detail=str(exc))
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    return BuildRoadmapsResponse(roadmaps=[roadmap_to_dict(rm) for rm in roadmaps])


@app.post("/plan", response_model=PlanResponse)
def plan_endpoint(req: PlanRequest):
    scenario = _scenario(req.scenario)
    build_s = 0.0
    if req.roadmaps is None:
        try:
            roadmaps, build_s = timed_build_roadmaps(
                scenario, n=req.n, k=req.k, seed=req.seed
            )
        except RoadmapDisconnectedError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
    else:
        roadmaps = _roadmaps(req.roadmaps)
    run = plan_scenario(
        scenario,
        roadmaps,
        seed=req.seed,
        max_iterations=req.max_iterations,
        mode=ProductMode(req.mode),
        fallback=req.fallback,
        time_budget_ms=req.time_budget_ms,
        roadmap_seconds=build_s,
    )
    violations = []
    if run.validation is not None:
        violations = [v.to_dict() for v in run.validation.violations]
    return PlanResponse(
        plan=plan_to_dict(run) if run.success else None,
        report=run_report(run),
        violations=violations,
    )


@app.post("/validate", response_model=ValidateResponse)
def validate_endpoint(req: ValidateRequest):
    scenario = _scenario(req.scenario)
    roadmaps = _roadmaps(req.roadmaps)
    if len(roadmaps) != scenario.m:
        raise HTTPException(
            status_code=422,
            detail=f"need {scenario.m} roadmaps for {scenario.m} robots, got {len(roadmaps)}",
        )
    report = validate_plan_dict(
        scenario, roadmaps, req.plan.model_dump(), mode=ProductMode(req.mode)
    )
    return ValidateResponse(
        ok=report.ok, violations=[v.to_dict() for v in report.violations]
    )


@app.post("/render", response_model=RenderResponse)
def render_endpoint(req: RenderRequest):
    scenario = _scenario(req.scenario)
    plan_data = req.plan.model_dump() if req.plan is not None else None
    return RenderResponse(svg=render_svg(scenario, plan_data))


@app.post("/bench", response_model=BenchResponse)
def bench_endpoint(req: BenchRequest):
    scenarios = [_scenario(s) for s in req.scenarios]
    if not scenarios:
        raise HTTPException(status_code=422, detail="bench needs at least one scenario")
    rows = bench_mod.run_bench(
        scenarios,
        seeds=req.seeds,
        n=req.n,
        k=req.k,
        max_iterations=req.max_iterations,
        mode=ProductMode(req.mode),
        fallback=req.fallback,
        time_budget_ms=req.time_budget_ms,
        timings=req.timings,
    )
    return BenchResponse(
        rows=[r.to_dict() for r in rows], csv=bench_mod.bench_csv(rows)
    )
