"""Command-line client for the planning service.

Every command goes through the HTTP API: against a remote server when
--server is given, otherwise against an in-process instance of the app, so
the CLI exercises exactly the wire formats the service speaks.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Optional

import click
import httpx


def _client(server: Optional[str]):
    if server:
        return httpx.Client(base_url=server, timeout=None)
    from fastapi.testclient import TestClient

    from .service.app import app

    return TestClient(app)


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _write_json(path: Path, data) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2)
        fh.write("\n")


def _post(client, url: str, payload: dict) -> dict:
    resp = client.post(url, json=payload)
    if resp.status_code != 200:
        try:
            detail = resp.json().get("detail", resp.text)
        except ValueError:
            detail = resp.text
        raise click.ClickException(f"{url} failed ({resp.status_code}): {detail}")
    return resp.json()


def _load_roadmaps(roadmap_dir: str) -> list:
    paths = sorted(Path(roadmap_dir).glob("robot_*.json"))
    if not paths:
        raise click.ClickException(f"no robot_*.json roadmap files in {roadmap_dir}")
    return [_load_json(p) for p in paths]


server_option = click.option("--server", default=None, help="Remote service URL (in-process when omitted).")


@click.group()
def main():
    """Multi-robot disc planner: roadmaps, planning, validation, rendering."""


@main.command("build-roadmaps")
@click.argument("scenario_file", type=click.Path(exists=True))
@click.option("--out-dir", "-o", required=True, type=click.Path())
@click.option("--prm-n", default=200, show_default=True, help="Vertices per roadmap.")
@click.option("--prm-k", default=8, show_default=True, help="Nearest neighbours per vertex.")
@click.option("--seed", default=0, show_default=True)
@server_option
def build_roadmaps_cmd(scenario_file, out_dir, prm_n, prm_k, seed, server):
    """Build one roadmap file per robot into OUT_DIR."""
    payload = {
        "scenario": _load_json(scenario_file),
        "n": prm_n,
        "k": prm_k,
        "seed": seed,
    }
    with _client(server) as client:
        data = _post(client, "/roadmaps/build", payload)
    out = Path(out_dir)
    for i, rm in enumerate(data["roadmaps"]):
        _write_json(out / f"robot_{i:02d}.json", rm)
    click.echo(f"wrote {len(data['roadmaps'])} roadmap files to {out}")


@main.command("plan")
@click.argument("scenario_file", type=click.Path(exists=True))
@click.option("--roadmap-dir", required=True, type=click.Path(exists=True))
@click.option("--out", "-o", "plan_out", required=True, type=click.Path())
@click.option("--report", "report_out", default=None, type=click.Path())
@click.option("--seed", default=0, show_default=True)
@click.option("--max-iters", default=30, show_default=True)
@click.option("--mode", type=click.Choice(["tensor", "cartesian"]), default="tensor", show_default=True)
@click.option("--fallback", type=click.Choice(["on", "off"]), default="off", show_default=True)
@click.option("--time-budget-ms", default=None, type=int)
@server_option
def plan_cmd(scenario_file, roadmap_dir, plan_out, report_out, seed, max_iters, mode, fallback, time_budget_ms, server):
    """Run the planner and write the plan JSON (nonzero exit on failure)."""
    payload = {
        "scenario": _load_json(scenario_file),
        "roadmaps": _load_roadmaps(roadmap_dir),
        "seed": seed,
        "max_iterations": max_iters,
        "mode": mode,
        "fallback": fallback == "on",
        "time_budget_ms": time_budget_ms,
    }
    with _client(server) as client:
        data = _post(client, "/plan", payload)
    if report_out:
        _write_json(Path(report_out), data["report"])
    if not data["report"]["success"]:
        click.echo(json.dumps(data["report"], indent=2))
        raise click.ClickException(
            f"planning failed ({data['report']['stop_reason']}), "
            f"tree size {data['report']['visited']} after {data['report']['iterations']} iterations"
        )
    _write_json(Path(plan_out), data["plan"])
    click.echo(
        f"plan with {data['report']['path_steps']} steps written to {plan_out} "
        f"(visited {data['report']['visited']} vertices)"
    )


@main.command("validate")
@click.argument("scenario_file", type=click.Path(exists=True))
@click.option("--roadmap-dir", required=True, type=click.Path(exists=True))
@click.option("--plan", "plan_file", required=True, type=click.Path(exists=True))
@click.option("--mode", type=click.Choice(["tensor", "cartesian"]), default="tensor", show_default=True)
@server_option
def validate_cmd(scenario_file, roadmap_dir, plan_file, mode, server):
    """Check a plan against the scenario and roadmaps; exit 0 iff valid."""
    payload = {
        "scenario": _load_json(scenario_file),
        "roadmaps": _load_roadmaps(roadmap_dir),
        "plan": _load_json(plan_file),
        "mode": mode,
    }
    with _client(server) as client:
        data = _post(client, "/validate", payload)
    click.echo(json.dumps(data, indent=2))
    if not data["ok"]:
        sys.exit(1)


@main.command("render")
@click.argument("scenario_file", type=click.Path(exists=True))
@click.option("--plan", "plan_file", default=None, type=click.Path(exists=True))
@click.option("--out", "-o", "svg_out", required=True, type=click.Path())
@server_option
def render_cmd(scenario_file, plan_file, svg_out, server):
    """Render the scenario (and optional plan) to an SVG file."""
    payload = {"scenario": _load_json(scenario_file)}
    if plan_file:
        payload["plan"] = _load_json(plan_file)
    with _client(server) as client:
        data = _post(client, "/render", payload)
    out = Path(svg_out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(data["svg"], encoding="utf-8")
    click.echo(f"wrote {svg_out}")


@main.command("bench")
@click.argument("scenario_dir", type=click.Path(exists=True, file_okay=False))
@click.option("--seeds", default=10, show_default=True)
@click.option("--out", "-o", "csv_out", default=None, type=click.Path())
@click.option("--prm-n", default=200, show_default=True)
@click.option("--prm-k", default=8, show_default=True)
@click.option("--max-iters", default=30, show_default=True)
@click.option("--mode", type=click.Choice(["tensor", "cartesian"]), default="tensor", show_default=True)
@click.option("--fallback", type=click.Choice(["on", "off"]), default="off", show_default=True)
@click.option("--time-budget-ms", default=60_000, type=int, show_default=True)
@click.option("--timings", type=click.Choice(["wall", "none"]), default="wall", show_default=True,
              help="'none' zeroes the time columns for byte-reproducible CSV output.")
@server_option
def bench_cmd(scenario_dir, seeds, csv_out, prm_n, prm_k, max_iters, mode, fallback, time_budget_ms, timings, server):
    """Run every scenario JSON in SCENARIO_DIR over the given seed count."""
    files = sorted(Path(scenario_dir).glob("*.json"))
    if not files:
        raise click.ClickException(f"no scenario JSON files in {scenario_dir}")
    payload = {
        "scenarios": [_load_json(p) for p in files],
        "seeds": seeds,
        "n": prm_n,
        "k": prm_k,
        "max_iterations": max_iters,
        "mode": mode,
        "fallback": fallback == "on",
        "time_budget_ms": time_budget_ms,
        "timings": timings,
    }
    with _client(server) as client:
        data = _post(client, "/bench", payload)
    if csv_out:
        out = Path(csv_out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(data["csv"], encoding="utf-8")
    click.echo(data["csv"], nl=False)
    failures = [f for row in data["rows"] for f in row["failures"]]
    if failures:
        click.echo(f"{len(failures)} failed runs:", err=True)
        for f in failures:
            click.echo(json.dumps(f), err=True)


@main.group("scenarios")
def scenarios_group():
    """Bundled desk-scale scenarios."""


@scenarios_group.command("list")
@server_option
def scenarios_list(server):
    with _client(server) as client:
        resp = client.get("/scenarios")
    for name in resp.json()["names"]:
        click.echo(name)


@scenarios_group.command("export")
@click.argument("out_dir", type=click.Path())
@server_option
def scenarios_export(out_dir, server):
    """Write all bundled scenario files into OUT_DIR."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with _client(server) as client:
        names = client.get("/scenarios").json()["names"]
        for name in names:
            data = client.get(f"/scenarios/{name}").json()
            _write_json(out / f"{name}.json", data)
    click.echo(f"exported {len(names)} scenarios to {out}")


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve_cmd(host, port):
    """Run the planning service with uvicorn."""
    import uvicorn

    uvicorn.run("mrdrrt.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()
