"""Benchmark harness: repeated seeded runs per scenario, aggregated to CSV.

CSV columns: scenario,seeds,success_rate,mean_visited,mean_expand_ms,
mean_connect_ms,mean_total_ms. Means are taken over successful runs only.
With timings="none" the time columns are written as 0 so that the CSV is
byte-reproducible across runs; planning results themselves are seed-exact
either way.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import List, Optional, Sequence

from .composite import ProductMode
from .runner import plan_scenario, run_report, timed_build_roadmaps
from .scenario import Scenario

CSV_HEADER = (
    "scenario,seeds,success_rate,mean_visited,mean_expand_ms,mean_connect_ms,mean_total_ms"
)


@dataclass
class BenchRow:
    scenario: str
    seeds: int
    success_rate: float
    mean_visited: Optional[float]
    mean_expand_ms: Optional[float]
    mean_connect_ms: Optional[float]
    mean_total_ms: Optional[float]
    failures: List[dict]

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "seeds": self.seeds,
            "success_rate": self.success_rate,
            "mean_visited": self.mean_visited,
            "mean_expand_ms": self.mean_expand_ms,
            "mean_connect_ms": self.mean_connect_ms,
            "mean_total_ms": self.mean_total_ms,
            "failures": self.failures,
        }


def _mean(values: Sequence[float]) -> Optional[float]:
    return sum(values) / len(values) if values else None


def run_bench(
    scenarios: Sequence[Scenario],
    seeds: int = 10,
    n: int = 200,
    k: int = 8,
    max_iterations: int = 30,
    mode: ProductMode = ProductMode.TENSOR,
    fallback: bool = False,
    time_budget_ms: Optional[int] = 60_000,
    timings: str = "wall",
) -> List[BenchRow]:
    if timings not in ("wall", "none"):
        raise ValueError("timings must be 'wall' or 'none'")
    rows = []
    for scenario in sorted(scenarios, key=lambda s: s.name):
        visited, expand_ms, connect_ms, total_ms = [], [], [], []
        failures = []
        successes = 0
        for seed in range(seeds):
            roadmaps, build_s = timed_build_roadmaps(scenario, n=n, k=k, seed=seed)
            run = plan_scenario(
                scenario,
                roadmaps,
                seed=seed,
                max_iterations=max_iterations,
                mode=mode,
                fallback=fallback,
                time_budget_ms=time_budget_ms,
                roadmap_seconds=build_s,
            )
            report = run_report(run)
            if run.success:
                successes += 1
                visited.append(report["visited"])
                expand_ms.append(report["expand_ms"])
                connect_ms.append(report["connect_ms"])
                total_ms.append(report["total_ms"])
            else:
                failures.append(report)
        if timings == "none":
            means = (0.0, 0.0, 0.0) if successes else (None, None, None)
        else:
            means = (_mean(expand_ms), _mean(connect_ms), _mean(total_ms))
        rows.append(
            BenchRow(
                scenario=scenario.name,
                seeds=seeds,
                success_rate=successes / seeds if seeds else 0.0,
                mean_visited=_mean(visited),
                mean_expand_ms=means[0],
                mean_connect_ms=means[1],
                mean_total_ms=means[2],
                failures=failures,
            )
        )
    return rows


def _cell(value: Optional[float], fmt: str) -> str:
    return "" if value is None else format(value, fmt)


def bench_csv(rows: Sequence[BenchRow]) -> str:
    out = io.StringIO()
    out.write(CSV_HEADER + "\n")
    for r in rows:
        out.write(
            f"{r.scenario},{r.seeds},{r.success_rate:.3f},"
            f"{_cell(r.mean_visited, '.1f')},{_cell(r.mean_expand_ms, '.1f')},"
            f"{_cell(r.mean_connect_ms, '.1f')},{_cell(r.mean_total_ms, '.1f')}\n"
        )
    return out.getvalue()
