"""
Pruebas del sintetizador de trazos y del codec de escenarios
"""

import math

import pytest

from src.config.noise_presets import get_noise_preset, list_noise_presets
from src.core.actions import ActionKind
from src.core.ground_truth import (
    GroundTruthAction,
    GroundTruthScenario,
    InvalidScenarioError,
    NoiseModel,
    dump_scenario,
    load_scenario,
    parse_scenario,
)
from src.core.models import Opacity
from src.engines.scenario_generator import ScenarioGenerator
from src.engines.trace_synthesizer import TraceSynthesizer, indicator_bbox, synthesize_trace

from .builders import profile as build_profile


def still(start, frames, x, y):
    return tuple((start + k, float(x), float(y)) for k in range(frames))


def tap_scenario(profile, start=5, frames=10, x=100.0, y=200.0):
    return GroundTruthScenario(profile, (GroundTruthAction(ActionKind.TAP, (still(start, frames, x, y),)),))


class TestSynthesize:

    def test_single_tap_with_fade_tail(self, profile):
        trace, truth = synthesize_trace(tap_scenario(profile), NoiseModel(fade_frames=3))

        high = [d for d in trace.detections if d.opacity is Opacity.HIGH]
        low = [d for d in trace.detections if d.opacity is Opacity.LOW]
        assert [d.frame for d in high] == list(range(5, 15))
        assert [d.frame for d in low] == [15, 16, 17]
        assert all(d.center == (100.0, 200.0) for d in trace.detections)
        assert str(truth) == "T"
        assert trace.frame_count == 18

    def test_empty_scenario(self, profile):
        noise = NoiseModel(position_jitter_sigma=5.0, dropout_rate=0.3, rng_seed=4)
        trace, truth = synthesize_trace(GroundTruthScenario(profile), noise)
        assert trace.detections == ()
        assert len(truth) == 0

    def test_pinch_has_two_touches_per_overlap_frame(self, scenarios_dir):
        scenario = load_scenario(scenarios_dir / "pinch_then_tap.json")
        result = TraceSynthesizer(NoiseModel()).synthesize(scenario)

        counts = result.trace.frame_touch_counts()
        high_counts = {}
        for d in result.trace.detections:
            if d.is_high:
                high_counts[d.frame] = high_counts.get(d.frame, 0) + 1
        assert all(high_counts[f] == 2 for f in range(10, 30))
        assert all(counts[f] == 2 for f in range(30, 33))
        assert str(result.truth) == "GT"
        assert str(result.extended_truth) == "G2T"

    def test_fixture_truth(self, scenarios_dir):
        scenario = load_scenario(scenarios_dir / "tap_swipe_longtap.json")
        assert str(scenario.to_sequence()) == "TGL"

    def test_deterministic_for_same_seed(self, scenarios_dir):
        scenario = load_scenario(scenarios_dir / "tap_swipe_longtap.json")
        noise = get_noise_preset("emulator", rng_seed=7)
        first = TraceSynthesizer(noise).synthesize(scenario)
        second = TraceSynthesizer(noise).synthesize(scenario)
        assert first == second

    def test_other_seed_changes_noise(self, scenarios_dir):
        scenario = load_scenario(scenarios_dir / "tap_swipe_longtap.json")
        first = TraceSynthesizer(get_noise_preset("emulator", rng_seed=1)).synthesize(scenario)
        second = TraceSynthesizer(get_noise_preset("emulator", rng_seed=2)).synthesize(scenario)
        assert first.trace != second.trace

    def test_zero_noise_centers_are_path_points(self, profile):
        generator = ScenarioGenerator(profile, seed=11)
        for index in range(10):
            scenario = generator.generate(index)
            points = {(x, y) for action in scenario.actions for path in action.paths for _, x, y in path}
            trace, _ = synthesize_trace(scenario, NoiseModel())
            assert all(d.center in points for d in trace.detections if d.is_high)

    def test_jitter_is_coherent_for_a_still_finger(self, profile):
        result = TraceSynthesizer(NoiseModel(position_jitter_sigma=3.0, rng_seed=5)).synthesize(tap_scenario(profile))
        centers = {d.center for d in result.trace.detections}
        assert len(centers) == 1
        (cx, cy), = centers
        assert math.dist((cx, cy), (100.0, 200.0)) < 30

    def test_independent_jitter_moves_a_still_finger(self, profile):
        noise = NoiseModel(position_jitter_sigma=3.0, rng_seed=5, independent_jitter=True)
        result = TraceSynthesizer(noise).synthesize(tap_scenario(profile))

        high = [d for d in result.trace.detections if d.is_high]
        assert len(high) == 10
        assert len({d.center for d in high}) > 1
        fade = [d for d in result.trace.detections if not d.is_high]
        assert {d.center for d in fade} == {high[-1].center}

    def test_with_seed_keeps_jitter_mode(self):
        assert NoiseModel(independent_jitter=True).with_seed(9) == NoiseModel(independent_jitter=True, rng_seed=9)

    def test_full_dropout_removes_every_touch(self, profile):
        trace, _ = synthesize_trace(tap_scenario(profile), NoiseModel(dropout_rate=1.0))
        assert len(trace) == 0

    def test_false_positives_within_binomial_bounds(self, profile):
        frame_count, rate, seeds = 1000, 0.01, 20
        scenario = GroundTruthScenario(profile, (), frame_count=frame_count)

        total = 0
        for seed in range(seeds):
            result = TraceSynthesizer(NoiseModel(false_positive_rate=rate, rng_seed=seed)).synthesize(scenario)
            total += result.false_positives
            assert all(d.is_high for d in result.trace.detections)
            assert all(0.5 <= d.confidence <= 1.0 for d in result.trace.detections)

        trials = frame_count * seeds
        sigma = math.sqrt(trials * rate * (1 - rate))
        assert abs(total - trials * rate) <= 3 * sigma

    def test_frame_count_must_cover_detections(self, profile):
        scenario = GroundTruthScenario(
            profile,
            (GroundTruthAction(ActionKind.TAP, (still(5, 10, 100, 200),)),),
            frame_count=12,
        )
        with pytest.raises(InvalidScenarioError, match="frame_count"):
            TraceSynthesizer(NoiseModel()).synthesize(scenario)

    def test_indicator_shrinks_at_the_edge(self, profile):
        bbox = indicator_bbox(10.0, 500.0, profile)
        assert bbox.center == (10.0, 500.0)
        assert bbox.w == 20.0
        assert bbox.x == 0.0


class TestScenarioModel:

    def test_overlapping_frames_in_one_path(self):
        with pytest.raises(InvalidScenarioError):
            GroundTruthAction(ActionKind.TAP, (((3, 10.0, 10.0), (3, 10.0, 10.0)),))

    def test_tap_beyond_slop(self, profile):
        drifting = ((0, 100.0, 100.0), (1, 100.0, 120.0), (2, 100.0, 140.0))
        with pytest.raises(InvalidScenarioError, match="px"):
            GroundTruthScenario(profile, (GroundTruthAction(ActionKind.TAP, (drifting,)),))

    def test_point_off_screen(self, profile):
        with pytest.raises(InvalidScenarioError):
            GroundTruthScenario(profile, (GroundTruthAction(ActionKind.GESTURE, (((0, 2000.0, 10.0),),)),))

    def test_actions_out_of_order(self, profile):
        late = GroundTruthAction(ActionKind.TAP, (still(50, 5, 100, 100),))
        early = GroundTruthAction(ActionKind.TAP, (still(10, 5, 100, 100),))
        with pytest.raises(InvalidScenarioError):
            GroundTruthScenario(profile, (late, early))

    def test_fingers_must_match_paths(self):
        raw = (
            '{"device": {"name": "d", "width": 100, "height": 100, "fps": 30},'
            ' "actions": [{"kind": "tap", "fingers": 2, "paths": [[[0, 10, 10]]]}]}'
        )
        with pytest.raises(InvalidScenarioError, match="fingers"):
            parse_scenario(raw)

    def test_malformed_fixture(self):
        with pytest.raises(InvalidScenarioError):
            parse_scenario(b"{not json")

    def test_extended_symbols(self, profile):
        pinch = GroundTruthAction(
            ActionKind.GESTURE,
            (((0, 100.0, 100.0), (1, 80.0, 100.0)), ((0, 300.0, 100.0), (1, 320.0, 100.0))),
        )
        scenario = GroundTruthScenario(profile, (pinch,))
        assert str(scenario.to_sequence()) == "G"
        assert str(scenario.to_sequence(extended=True)) == "G2"

    def test_dump_then_load(self, tmp_path, scenarios_dir):
        scenario = load_scenario(scenarios_dir / "pinch_then_tap.json")
        path = dump_scenario(scenario, tmp_path / "copy.json")
        assert load_scenario(path) == scenario


class TestNoiseModel:

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"position_jitter_sigma": -1.0},
            {"false_positive_rate": 1.5},
            {"dropout_rate": -0.1},
            {"fade_frames": 0},
        ],
    )
    def test_invalid_parameters(self, kwargs):
        with pytest.raises(ValueError):
            NoiseModel(**kwargs)

    def test_presets(self):
        assert list_noise_presets() == ["clean", "emulator", "physical-device"]
        assert get_noise_preset("clean") == NoiseModel()
        assert get_noise_preset("emulator", rng_seed=9).rng_seed == 9

    def test_unknown_preset(self):
        with pytest.raises(KeyError, match="clean"):
            get_noise_preset("studio")


class TestScenarioGenerator:

    def test_same_seed_same_scenarios(self):
        device = build_profile()
        assert ScenarioGenerator(device, seed=3).generate(4) == ScenarioGenerator(device, seed=3).generate(4)

    def test_actions_are_separated(self):
        generator = ScenarioGenerator(build_profile(), seed=21)
        for scenario in generator.generate_batch(20):
            assert 5 <= len(scenario) <= 25
            for previous, current in zip(scenario.actions, scenario.actions[1:]):
                assert current.start_frame > previous.end_frame + 3

    def test_invalid_action_range(self):
        with pytest.raises(ValueError):
            ScenarioGenerator(build_profile(), min_actions=5, max_actions=2)
