import json
import logging
import math

import pytest

import walkmate
from walkmate import cli
from walkmate.cli import (
    RunSummary,
    TRAJECTORY_COLUMNS,
    bundled_scenario_path,
    main,
    run,
    simulate,
    summarize,
    sweep,
)
from walkmate.world import load_scenario

from _oracles import read_trajectory

WALL_CRASH = {
    "id": "crash",
    "world": {"obstacles": [{"kind": "segment", "p1": [0.5, -1.0], "p2": [0.5, 1.0]}]},
    "control": {"loop": "non_assisted"},
    "pushes": [
        {"force": [30.0, 0.0], "link_index": 2, "application_distance": 0.225, "start": 0.0, "end": 10.0}
    ],
    "duration_s": 10.0,
}


@pytest.fixture()
def crash_file(tmp_path):
    path = tmp_path / "crash.json"
    path.write_text(json.dumps(WALL_CRASH))
    return path


class TestRun:
    def test_writes_csv_and_returns_summary(self, tmp_path):
        out = tmp_path / "traj.csv"
        summary = run(bundled_scenario_path("corridor_translation"), out)
        assert out.exists()
        assert summary.scenario_id == "corridor_translation"
        assert summary.steps == 500
        assert not summary.collision
        text = out.read_text()
        assert text.splitlines()[0] == ",".join(TRAJECTORY_COLUMNS)
        assert len(text.splitlines()) == 502  # header + t=0 + 500 steps

    def test_first_row_is_the_initial_state(self, tmp_path):
        out = tmp_path / "traj.csv"
        run(bundled_scenario_path("open_push_cycle"), out)
        first = read_trajectory(out.read_text())[0]
        assert first["t"] == 0.0 and first["vx"] == 0.0 and first["x"] == 0.0

    def test_summary_recomputes_from_the_file(self, tmp_path):
        out = tmp_path / "traj.csv"
        summary = run(bundled_scenario_path("wall_approach_translation"), out)
        rows = read_trajectory(out.read_text())
        max_speed = max(math.hypot(r["vx"], r["vy"]) for r in rows)
        max_accel = max(
            math.hypot(b["vx"] - a["vx"], b["vy"] - a["vy"]) / 0.02
            for a, b in zip(rows, rows[1:])
        )
        min_d = min(r["nearest_d"] for r in rows)
        assert abs(max_speed - summary.max_speed) <= 1e-9
        assert abs(max_accel - summary.max_accel) <= 1e-9
        assert abs(min_d - summary.min_obstacle_distance) <= 1e-9

    def test_reruns_are_byte_identical(self, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        run(bundled_scenario_path("open_push_cycle"), a)
        run(bundled_scenario_path("open_push_cycle"), b)
        assert a.read_bytes() == b.read_bytes()

    def test_zero_duration_run(self, tmp_path):
        path = tmp_path / "still.json"
        path.write_text(json.dumps({"duration_s": 0.0}))
        summary = run(path, tmp_path / "still.csv")
        assert summary.steps == 0
        assert summary.max_speed == 0.0
        assert summary.final_pose == (0.0, 0.0, 0.0)

    def test_collision_is_reported_not_raised(self, crash_file, tmp_path):
        summary = run(crash_file, tmp_path / "crash.csv")
        assert summary.collision
        assert summary.steps < 500  # stopped early
        assert (tmp_path / "crash.csv").exists()

    def test_infinite_distance_serializes_as_null(self):
        summary = RunSummary("x", 0, math.inf, 0.0, 0.0, False, (0.0, 0.0, 0.0))
        assert summary.to_json()["min_obstacle_distance"] is None


class TestSweep:
    def test_single_value_sweep_equals_run(self, tmp_path):
        scenario = bundled_scenario_path("wall_approach_translation")
        run(scenario, tmp_path / "direct.csv")
        sweep(scenario, "B", [4.0], tmp_path / "sweep")
        swept = tmp_path / "sweep" / "wall_approach_translation_B_4.csv"
        assert swept.read_bytes() == (tmp_path / "direct.csv").read_bytes()

    def test_aggregate_csv_lists_all_values(self, tmp_path):
        scenario = bundled_scenario_path("corridor_translation")
        summaries = sweep(scenario, "gain", [0.03, 0.05], tmp_path / "sweep")
        assert len(summaries) == 2
        aggregate = (tmp_path / "sweep" / "corridor_translation_gain_sweep.csv").read_text()
        lines = aggregate.strip().splitlines()
        assert lines[0].startswith("gain,")
        assert len(lines) == 3

    def test_sharper_knee_keeps_more_clearance(self, tmp_path):
        scenario = bundled_scenario_path("wall_approach_translation")
        summaries = sweep(scenario, "B", [1.0, 4.0, 8.0], tmp_path / "sweep")
        gaps = [s.min_obstacle_distance for s in summaries]
        assert gaps == sorted(gaps)
        assert all(g >= 0.25 for g in gaps)

    def test_unknown_param_rejected(self, tmp_path):
        with pytest.raises(ValueError, match="unknown sweep parameter"):
            sweep(bundled_scenario_path("corridor_translation"), "mass", [1.0], tmp_path)

    def test_empty_values_rejected(self, tmp_path):
        with pytest.raises(ValueError, match="at least one"):
            sweep(bundled_scenario_path("corridor_translation"), "B", [], tmp_path)


class TestMain:
    def test_run_exit_zero(self, tmp_path, capsys):
        rc = main(["run", "corridor_translation", "--out", str(tmp_path / "t.csv")])
        assert rc == 0
        summary = json.loads(capsys.readouterr().out)
        assert summary["scenario_id"] == "corridor_translation"
        assert summary["collision"] is False

    def test_run_collision_exit_three(self, crash_file, tmp_path, capsys):
        rc = main(["run", str(crash_file), "--out", str(tmp_path / "c.csv")])
        assert rc == 3
        assert json.loads(capsys.readouterr().out)["collision"] is True

    def test_missing_file_exit_one(self, capsys):
        rc = main(["run", "nope.json"])
        assert rc == 1
        assert "not found" in capsys.readouterr().err

    def test_unknown_bundled_exit_one(self, capsys):
        rc = main(["run", "warehouse_9"])
        assert rc == 1
        assert "available" in capsys.readouterr().err

    def test_malformed_json_exit_one(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{")
        rc = main(["run", str(path)])
        assert rc == 1
        assert "invalid JSON" in capsys.readouterr().err

    def test_bad_sweep_param_is_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as exc_info:
            main(["sweep", "corridor_translation", "--param", "mass", "--values", "1"])
        assert exc_info.value.code == 2

    def test_empty_values_is_usage_error(self):
        with pytest.raises(SystemExit) as exc_info:
            main(["sweep", "corridor_translation", "--param", "B", "--values", " , "])
        assert exc_info.value.code == 2

    def test_sweep_writes_outputs(self, tmp_path, capsys):
        rc = main(
            [
                "sweep",
                "corridor_translation",
                "--param",
                "v_max",
                "--values",
                "0.2,0.35",
                "--out",
                str(tmp_path / "sw"),
            ]
        )
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["param"] == "v_max"
        assert [r["max_speed"] for r in payload["runs"]][0] <= 0.2 + 1e-9
        assert (tmp_path / "sw" / "corridor_translation_v_max_0.2.csv").exists()

    def test_missing_subcommand_is_usage_error(self):
        with pytest.raises(SystemExit) as exc_info:
            main([])
        assert exc_info.value.code == 2


class TestLogging:
    def test_level_from_environment(self, monkeypatch):
        monkeypatch.setenv("COMPANION_LOG", "debug")
        assert cli._configure_logging() == logging.DEBUG

    def test_garbage_level_falls_back(self, monkeypatch):
        monkeypatch.setenv("COMPANION_LOG", "chatty")
        assert cli._configure_logging() == logging.WARNING

    def test_default_level(self, monkeypatch):
        monkeypatch.delenv("COMPANION_LOG", raising=False)
        assert cli._configure_logging() == logging.WARNING


def test_package_exports():
    assert walkmate.__version__
    scenario = load_scenario(bundled_scenario_path("open_nonassisted"))
    rows, state, collision = simulate(scenario)
    assert not collision
    assert state.clock == pytest.approx(scenario.duration_s, abs=1e-9)
    summary = summarize(scenario.id, rows, scenario.dt, collision)
    assert summary.steps == scenario.step_count
