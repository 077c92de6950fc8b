"""Static SVG rendering of scenarios and plans (SVG 1.1, deterministic)."""

from __future__ import annotations

from typing import List, Optional, Sequence

from .scenario import Scenario

_PALETTE = [
    "#d62728",
    "#1f77b4",
    "#2ca02c",
    "#ff7f0e",
    "#9467bd",
    "#8c564b",
    "#17becf",
    "#e377c2",
]

_MARGIN = 1.0


def _fmt(value: float) -> str:
    return f"{value:.3f}"


def _poly_points(vertices, ymax_plus_ymin: float) -> str:
    # SVG y grows downward; mirror around the workspace mid-line.
    return " ".join(f"{_fmt(x)},{_fmt(ymax_plus_ymin - y)}" for x, y in vertices)


def render_svg(scenario: Scenario, plan_data: Optional[dict] = None) -> str:
    """Workspace, obstacles, per-robot start/target discs, and, when a plan is
    given, one colored waypoint trace plus keyframe discs per robot."""
    xmin, ymin, xmax, ymax = scenario.workspace.bbox()
    flip = ymax + ymin
    width = xmax - xmin + 2 * _MARGIN
    height = ymax - ymin + 2 * _MARGIN
    parts: List[str] = []
    parts.append(
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_fmt(xmin - _MARGIN)} {_fmt(ymin - _MARGIN)} {_fmt(width)} {_fmt(height)}" '
        f'width="{int(width * 40)}" height="{int(height * 40)}">'
    )
    parts.append(
        f'<polygon points="{_poly_points(scenario.workspace.vertices, flip)}" '
        'fill="#f8f8f8" stroke="#222222" stroke-width="0.1"/>'
    )
    for obs in scenario.obstacles:
        parts.append(
            f'<polygon points="{_poly_points(obs.vertices, flip)}" '
            'fill="#9a9a9a" stroke="#555555" stroke-width="0.05"/>'
        )

    waypoints: List[List[Sequence[float]]] = [[list(r.start)] for r in scenario.robots]
    if plan_data is not None:
        for step in plan_data.get("steps", []):
            for i, xy in enumerate(step["targets"]):
                if i < len(waypoints):
                    waypoints[i].append(xy)

    for i, robot in enumerate(scenario.robots):
        color = _PALETTE[i % len(_PALETTE)]
        trace = waypoints[i]
        if len(trace) > 1:
            pts = " ".join(f"{_fmt(x)},{_fmt(flip - y)}" for x, y in trace)
            parts.append(
                f'<polyline points="{pts}" fill="none" stroke="{color}" '
                'stroke-width="0.12" stroke-opacity="0.9"/>'
            )
            for x, y in trace[1:-1]:
                parts.append(
                    f'<circle cx="{_fmt(x)}" cy="{_fmt(flip - y)}" r="{_fmt(robot.radius)}" '
                    f'fill="{color}" fill-opacity="0.12" stroke="none"/>'
                )
        sx, sy = robot.start
        tx, ty = robot.target
        parts.append(
            f'<circle cx="{_fmt(sx)}" cy="{_fmt(flip - sy)}" r="{_fmt(robot.radius)}" '
            f'fill="{color}" fill-opacity="0.6" stroke="{color}" stroke-width="0.06"/>'
        )
        parts.append(
            f'<circle cx="{_fmt(tx)}" cy="{_fmt(flip - ty)}" r="{_fmt(robot.radius)}" '
            f'fill="none" stroke="{color}" stroke-width="0.08" stroke-dasharray="0.3,0.2"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
