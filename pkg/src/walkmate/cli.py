"""Command-line runner: scripted runs, parameter sweeps, interactive serving.

Trajectory CSVs are written with 12 significant digits so that speeds and
accelerations recomputed from the file agree with in-process values to
well below the tolerances the simulator is held to. Summaries are computed
from the rounded values for the same reason: an independent re-read of the
CSV reproduces them exactly.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

from .compliance import generalized_logistic
from .intention import estimate_push
from .world import (
    CollisionError,
    Scenario,
    ScenarioError,
    SimState,
    effective_nearest,
    load_scenario,
    nearest_obstacle,
    step,
)

log = logging.getLogger("walkmate")

TRAJECTORY_COLUMNS = (
    "t",
    "x",
    "y",
    "heading",
    "vx",
    "vy",
    "omega",
    "tau_ext_pitch",
    "tau_ext_roll",
    "r_c",
    "nearest_d",
    "locked",
    "mode",
)

SWEEP_PARAMS = ("B", "deadband", "gain", "v_max")


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def trajectory_row(state: SimState) -> list[str]:
    """One CSV row describing the state after (or before) a step."""
    estimate = state.last_estimate
    if estimate is None:
        estimate = estimate_push(state.chain, state.estimator)
    true_nearest = nearest_obstacle(state.world, state.pose)
    seen = effective_nearest(state)
    if seen is None:
        r_c = state.compliance.upper_K
    else:
        r_c = generalized_logistic(seen.distance, state.compliance)
    nearest_d = true_nearest.distance if true_nearest is not None else math.inf
    mode = f"{state.control.loop.value}:{state.control.side_motion.value}"
    return [
        _fmt(state.clock),
        _fmt(state.pose.x),
        _fmt(state.pose.y),
        _fmt(state.pose.heading),
        _fmt(state.twist.vx),
        _fmt(state.twist.vy),
        _fmt(state.twist.omega),
        _fmt(estimate.tau_ext_pitch),
        _fmt(estimate.tau_ext_roll),
        _fmt(r_c),
        _fmt(nearest_d),
        str(int(state.control.locked)),
        mode,
    ]


def simulate(scenario: Scenario) -> tuple[list[list[str]], SimState, bool]:
    """Run a scenario to completion; rows include the initial t=0 state."""
    state = scenario.build_state()
    pushes = list(scenario.pushes)
    rows = [trajectory_row(state)]
    collision = False
    for _ in range(scenario.step_count):
        try:
            state = step(state, pushes, scenario.dt)
        except CollisionError as exc:
            log.warning("%s: %s", scenario.id, exc)
            collision = True
            break
        rows.append(trajectory_row(state))
    return rows, state, collision


def write_trajectory(path: str | Path, rows: list[list[str]]) -> None:
    lines = [",".join(TRAJECTORY_COLUMNS)]
    lines.extend(",".join(row) for row in rows)
    Path(path).write_text("\n".join(lines) + "\n")


@dataclass(frozen=True)
class RunSummary:
    scenario_id: str
    steps: int
    min_obstacle_distance: float  # inf when the world is empty
    max_speed: float
    max_accel: float
    collision: bool
    final_pose: tuple[float, float, float]

    def to_json(self) -> dict:
        d = self.min_obstacle_distance
        return {
            "scenario_id": self.scenario_id,
            "steps": self.steps,
            "min_obstacle_distance": None if math.isinf(d) else d,
            "max_speed": self.max_speed,
            "max_accel": self.max_accel,
            "collision": self.collision,
            "final_pose": list(self.final_pose),
        }


def summarize(
    scenario_id: str, rows: list[list[str]], dt: float, collision: bool
) -> RunSummary:
    """Summary metrics computed from the rounded CSV rows."""
    col = {name: i for i, name in enumerate(TRAJECTORY_COLUMNS)}
    speeds = []
    velocities = []
    nearest = []
    for row in rows:
        vx = float(row[col["vx"]])
        vy = float(row[col["vy"]])
        speeds.append(math.hypot(vx, vy))
        velocities.append((vx, vy))
        nearest.append(float(row[col["nearest_d"]]))
    max_accel = 0.0
    for (vx0, vy0), (vx1, vy1) in zip(velocities, velocities[1:]):
        max_accel = max(max_accel, math.hypot(vx1 - vx0, vy1 - vy0) / dt)
    last = rows[-1]
    return RunSummary(
        scenario_id=scenario_id,
        steps=len(rows) - 1,
        min_obstacle_distance=min(nearest),
        max_speed=max(speeds),
        max_accel=max_accel,
        collision=collision,
        final_pose=(
            float(last[col["x"]]),
            float(last[col["y"]]),
            float(last[col["heading"]]),
        ),
    )


def run(scenario_path: str | Path, out_path: str | Path | None = None) -> RunSummary:
    """Run one scenario, write its trajectory CSV, and return the summary."""
    scenario = load_scenario(scenario_path)
    rows, _, collision = simulate(scenario)
    if out_path is None:
        out_path = f"{scenario.id}.csv"
    write_trajectory(out_path, rows)
    return summarize(scenario.id, rows, scenario.dt, collision)


def _with_param(scenario: Scenario, param: str, value: float) -> Scenario:
    if param == "B":
        return replace(scenario, compliance=replace(scenario.compliance, B=value))
    if param == "deadband":
        return replace(scenario, estimator=replace(scenario.estimator, deadband=value))
    if param == "gain":
        return replace(scenario, estimator=replace(scenario.estimator, gain=value))
    if param == "v_max":
        return replace(scenario, limits=replace(scenario.limits, v_max=value))
    raise ValueError(f"unknown sweep parameter {param!r}")


def sweep(
    scenario_path: str | Path,
    param: str,
    values: list[float],
    out_dir: str | Path,
) -> list[RunSummary]:
    """One deterministic run per value, plus an aggregate CSV."""
    if param not in SWEEP_PARAMS:
        raise ValueError(f"unknown sweep parameter {param!r}; choose from {SWEEP_PARAMS}")
    if not values:
        raise ValueError("sweep needs at least one value")
    base = load_scenario(scenario_path)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    summaries = []
    aggregate = [f"{param},steps,min_obstacle_distance,max_speed,max_accel,collision"]
    for value in values:
        scenario = _with_param(base, param, value)
        rows, _, collision = simulate(scenario)
        write_trajectory(out_dir / f"{base.id}_{param}_{value:g}.csv", rows)
        summary = summarize(base.id, rows, scenario.dt, collision)
        summaries.append(summary)
        aggregate.append(
            f"{value:g},{summary.steps},{_fmt(summary.min_obstacle_distance)},"
            f"{_fmt(summary.max_speed)},{_fmt(summary.max_accel)},{int(summary.collision)}"
        )
    (out_dir / f"{base.id}_{param}_sweep.csv").write_text("\n".join(aggregate) + "\n")
    return summaries


def bundled_scenario_path(name: str) -> Path:
    """Path of a scenario shipped with the package; name without .json."""
    root = resources.files("walkmate") / "scenarios"
    candidate = root / f"{name}.json"
    with resources.as_file(candidate) as path:
        if not path.exists():
            available = sorted(p.stem for p in Path(str(root)).glob("*.json"))
            raise ScenarioError(f"no bundled scenario {name!r}; available: {available}")
        return Path(str(path))


def _resolve_scenario_arg(arg: str) -> Path:
    path = Path(arg)
    if path.exists():
        return path
    if "/" not in arg and not arg.endswith(".json"):
        return bundled_scenario_path(arg)
    raise ScenarioError(f"scenario file not found: {arg}")


def _parse_values(text: str, parser: argparse.ArgumentParser) -> list[float]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        parser.error("--values needs at least one number")
    try:
        return [float(p) for p in parts]
    except ValueError:
        parser.error(f"--values must be comma-separated numbers, got {text!r}")


def _configure_logging() -> int:
    level_name = os.environ.get("COMPANION_LOG", "warning").upper()
    level = getattr(logging, level_name, None)
    if not isinstance(level, int):
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    return level


def main(argv: list[str] | None = None) -> int:
    _configure_logging()
    parser = argparse.ArgumentParser(
        prog="walkmate",
        description="Deterministic simulator for a push-steered walk companion.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a scenario and write its trajectory CSV")
    run_p.add_argument("scenario", help="scenario file, or the name of a bundled one")
    run_p.add_argument("--out", help="trajectory CSV path (default: <scenario id>.csv)")

    sweep_p = sub.add_parser("sweep", help="run a scenario across parameter values")
    sweep_p.add_argument("scenario")
    sweep_p.add_argument("--param", required=True, choices=SWEEP_PARAMS)
    sweep_p.add_argument("--values", required=True, help="comma-separated numbers")
    sweep_p.add_argument("--out", default="sweep_out", help="output directory")

    serve_p = sub.add_parser("serve", help="serve a scenario to interactive clients")
    serve_p.add_argument("scenario")
    serve_p.add_argument("--port", type=int, default=8765)
    serve_p.add_argument("--host", default="127.0.0.1")

    args = parser.parse_args(argv)
    try:
        scenario_path = _resolve_scenario_arg(args.scenario)
    except ScenarioError as exc:
        print(str(exc), file=sys.stderr)
        return 1

    if args.command == "run":
        try:
            summary = run(scenario_path, args.out)
        except ScenarioError as exc:
            print(str(exc), file=sys.stderr)
            return 1
        print(json.dumps(summary.to_json()))
        return 3 if summary.collision else 0

    if args.command == "sweep":
        values = _parse_values(args.values, parser)
        try:
            summaries = sweep(scenario_path, args.param, values, args.out)
        except (ScenarioError, ValueError) as exc:
            print(str(exc), file=sys.stderr)
            return 1
        print(
            json.dumps(
                {
                    "param": args.param,
                    "values": values,
                    "runs": [s.to_json() for s in summaries],
                }
            )
        )
        return 3 if any(s.collision for s in summaries) else 0

    if args.command == "serve":
        from . import bridge

        try:
            scenario = load_scenario(scenario_path)
        except ScenarioError as exc:
            print(str(exc), file=sys.stderr)
            return 1
        return bridge.serve(scenario, host=args.host, port=args.port)

    parser.error(f"unknown command {args.command!r}")
    return 2


if __name__ == "__main__":
    sys.exit(main())
