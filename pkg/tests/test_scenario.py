import json

import pytest

from walkmate.base import Pose
from walkmate.cli import bundled_scenario_path
from walkmate.control import LoopMode
from walkmate.intention import SideMotionMode
from walkmate.world import (
    Circle,
    ScenarioError,
    Segment,
    load_scenario,
    parse_scenario,
)

MINIMAL = {"duration_s": 1.0}


def parse(extra):
    data = dict(MINIMAL)
    data.update(extra)
    return parse_scenario(data)


class TestDefaults:
    def test_minimal_scenario(self):
        scenario = parse({})
        assert scenario.id == "scenario"
        assert scenario.dt == 0.02
        assert scenario.step_count == 50
        assert scenario.start_pose == Pose(0.0, 0.0, 0.0)
        assert scenario.world.obstacles == ()
        assert len(scenario.world.sensors) == 5  # stock sensor suite
        assert [s.name for s in scenario.joint_specs] == ["knee_pitch", "hip_pitch", "hip_roll"]

    def test_zero_duration_is_legal(self):
        assert parse({"duration_s": 0.0}).step_count == 0

    def test_fresh_states_per_build(self):
        scenario = parse({})
        a = scenario.build_state()
        b = scenario.build_state()
        assert a is not b
        assert a.rng is not b.rng


class TestParsing:
    def test_obstacles(self):
        scenario = parse(
            {
                "world": {
                    "obstacles": [
                        {"kind": "circle", "center": [1.0, 2.0], "radius": 0.5},
                        {"kind": "segment", "p1": [0.0, 0.0], "p2": [1.0, 0.0]},
                    ]
                }
            }
        )
        circle, wall = scenario.world.obstacles
        assert isinstance(circle, Circle) and circle.radius == 0.5
        assert isinstance(wall, Segment) and wall.p2 == (1.0, 0.0)

    def test_custom_sensor(self):
        scenario = parse(
            {"world": {"sensors": [{"kind": "sonar", "max_range": 2.0, "ray_count": 3}]}}
        )
        (sensor,) = scenario.world.sensors
        assert sensor.max_range == 2.0 and sensor.ray_count == 3

    def test_control_enums(self):
        scenario = parse(
            {"control": {"loop": "non_assisted", "side_motion": "lateral_translation"}}
        )
        assert scenario.control.loop is LoopMode.NON_ASSISTED
        assert scenario.control.side_motion is SideMotionMode.LATERAL_TRANSLATION

    def test_pushes_validated_against_chain(self):
        scenario = parse(
            {
                "pushes": [
                    {
                        "force": [10.0, 0.0],
                        "link_index": 2,
                        "application_distance": 0.225,
                        "start": 0.0,
                        "end": 1.0,
                    }
                ]
            }
        )
        assert scenario.pushes[0].force == (10.0, 0.0)


class TestRejections:
    def test_missing_duration(self):
        with pytest.raises(ScenarioError, match="duration_s"):
            parse_scenario({"dt": 0.02})

    def test_unknown_top_level_key(self):
        with pytest.raises(ScenarioError, match="unknown keys.*gravity"):
            parse({"gravity": 9.81})

    def test_bad_obstacle_kind(self):
        with pytest.raises(ScenarioError, match=r"obstacles\[0\].kind"):
            parse({"world": {"obstacles": [{"kind": "box"}]}})

    def test_obstacle_field_position_in_message(self):
        with pytest.raises(ScenarioError, match=r"obstacles\[1\]"):
            parse(
                {
                    "world": {
                        "obstacles": [
                            {"kind": "circle", "center": [0.0, 0.0], "radius": 1.0},
                            {"kind": "circle", "center": [0.0, 0.0], "radius": -1.0},
                        ]
                    }
                }
            )

    def test_push_off_the_chain(self):
        with pytest.raises(ScenarioError, match=r"pushes\[0\].link_index"):
            parse(
                {
                    "pushes": [
                        {
                            "force": [1.0, 0.0],
                            "link_index": 7,
                            "application_distance": 0.1,
                            "start": 0.0,
                            "end": 1.0,
                        }
                    ]
                }
            )

    def test_push_beyond_link_end(self):
        with pytest.raises(ScenarioError, match="application_distance"):
            parse(
                {
                    "pushes": [
                        {
                            "force": [1.0, 0.0],
                            "link_index": 0,
                            "application_distance": 0.9,
                            "start": 0.0,
                            "end": 1.0,
                        }
                    ]
                }
            )

    def test_bad_loop_enum_lists_choices(self):
        with pytest.raises(ScenarioError, match="assisted.*non_assisted"):
            parse({"control": {"loop": "manual"}})

    def test_estimator_joint_must_exist(self):
        with pytest.raises(ScenarioError, match="not in chain"):
            parse({"estimator": {"pitch_joint": "ankle"}})

    def test_dt_out_of_range(self):
        with pytest.raises(ScenarioError, match="dt"):
            parse({"dt": 0.5})

    def test_boolean_is_not_a_number(self):
        with pytest.raises(ScenarioError, match="expected a number"):
            parse({"duration_s": True})

    def test_bad_start_pose_shape(self):
        with pytest.raises(ScenarioError, match="start.pose"):
            parse({"start": {"pose": [1.0, 2.0]}})

    def test_limits_validation_is_surfaced(self):
        with pytest.raises(ScenarioError, match="v_max"):
            parse({"limits": {"v_max": 2.0}})


class TestFiles:
    def test_malformed_json_carries_position(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"duration_s": 1.0,\n  "dt": }\n')
        with pytest.raises(ScenarioError, match="line 2, column 9"):
            load_scenario(path)

    def test_id_defaults_to_file_stem(self, tmp_path):
        path = tmp_path / "hallway.json"
        path.write_text(json.dumps(MINIMAL))
        assert load_scenario(path).id == "hallway"

    def test_bundled_corpus_loads(self):
        scenario = load_scenario(bundled_scenario_path("corridor_translation"))
        assert scenario.id == "corridor_translation"
        assert scenario.duration_s > 0.0
        assert len(scenario.world.obstacles) == 2

    def test_unknown_bundled_name(self):
        with pytest.raises(ScenarioError, match="available"):
            bundled_scenario_path("does_not_exist")
