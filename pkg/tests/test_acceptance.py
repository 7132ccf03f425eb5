"""
Pruebas de aceptación de lote: escenarios aleatorios, oráculos y rendimiento.

Lentas; se excluyen con `pytest -m "not slow"`.
"""

import random
import time
from functools import lru_cache

import pytest

from src.adapters.script_codec import parse_log, parse_runnable, serialize_script, translate_runnable
from src.adapters.sendevent_generator import assemble_script
from src.config import get_device_profile, get_noise_preset
from src.core.ground_truth import NoiseModel
from src.core.script import EV_SYN, validate_script
from src.engines.action_classifier import ActionClassifier, group_overlapping
from src.engines.scenario_generator import ScenarioGenerator
from src.engines.trace_synthesizer import synthesize_trace
from src.reporting import lcs_length, lcs_ratio, levenshtein

from .builders import interval, stationary, trace
from .test_action_classifier import overlap_components

pytestmark = pytest.mark.slow

SCENARIOS = 200
SEED = 2024


@pytest.fixture(scope="module")
def classifier():
    return ActionClassifier(enable_logging=False)


@pytest.fixture(scope="module")
def scenarios():
    return ScenarioGenerator(get_device_profile("nexus5"), seed=SEED).generate_batch(SCENARIOS)


class TestRoundTrip:

    def test_zero_noise_is_exact(self, scenarios, classifier):
        started = time.perf_counter()
        for index, scenario in enumerate(scenarios):
            trace_, truth = synthesize_trace(scenario, NoiseModel())
            predicted = classifier.classify_trace(trace_).to_sequence()
            assert levenshtein(predicted, truth) == 0, index
            assert lcs_ratio(predicted, truth) == 1.0
        assert time.perf_counter() - started < 10.0

    def test_scenarios_cover_every_kind(self, scenarios):
        symbols = set()
        for scenario in scenarios:
            assert 5 <= len(scenario.actions) <= 25
            symbols.update(scenario.to_sequence(extended=True))
        assert {"T", "L", "G", "G2", "T2"} <= symbols

    # Los presets mantienen el jitter coherente con el dedo inmóvil: un LongTap no acumula ruido por frame
    @pytest.mark.parametrize("preset,minimum", [("physical-device", 0.90), ("emulator", 0.80)])
    def test_noisy_lcs(self, scenarios, classifier, preset, minimum):
        ratios = []
        for index, scenario in enumerate(scenarios):
            trace_, truth = synthesize_trace(scenario, get_noise_preset(preset, SEED + index))
            ratios.append(lcs_ratio(classifier.classify_trace(trace_).to_sequence(), truth))
        assert sum(ratios) / len(ratios) >= minimum


class TestGroupingOracle:

    def test_ten_thousand_instances(self):
        rng = random.Random(7)
        for _ in range(10_000):
            actions = []
            for k in range(rng.randint(1, 10)):
                start = rng.randint(0, 120)
                actions.append(interval(start, start + rng.randint(2, 30), x=60 + 90 * k))
            groups = group_overlapping(actions)
            assert {frozenset(map(id, g)) for g in groups} == {
                frozenset(map(id, c)) for c in overlap_components(actions)
            }


def cadence_error_us(timestamp_us: int, fps: int) -> float:
    frame = round(timestamp_us * fps / 1_000_000)
    return abs(timestamp_us - frame * 1_000_000 / fps)


class TestCodegenFuzz:

    def test_thousand_scenarios(self, classifier):
        device = get_device_profile("nexus5")
        generator = ScenarioGenerator(device, seed=SEED + 1)
        for index in range(1000):
            clean, _ = synthesize_trace(generator.generate(index), NoiseModel())
            script = assemble_script(classifier.classify_trace(clean))

            validate_script(script)
            for event in script.events:
                if event.type == EV_SYN:
                    assert cadence_error_us(event.timestamp_us, device.fps) <= 500
            assert parse_log(serialize_script(script), script.profile) == script
            assert parse_runnable(translate_runnable(script)) == script.events


@lru_cache(maxsize=None)
def edit_distance_oracle(a, b):
    if not a or not b:
        return len(a) + len(b)
    return min(
        edit_distance_oracle(a[1:], b) + 1,
        edit_distance_oracle(a, b[1:]) + 1,
        edit_distance_oracle(a[1:], b[1:]) + (a[0] != b[0]),
    )


@lru_cache(maxsize=None)
def lcs_oracle(a, b):
    if not a or not b:
        return 0
    if a[0] == b[0]:
        return 1 + lcs_oracle(a[1:], b[1:])
    return max(lcs_oracle(a[1:], b), lcs_oracle(a, b[1:]))


class TestMetricOracles:

    def test_five_thousand_pairs(self):
        rng = random.Random(11)
        alphabet = "TLG"
        for _ in range(5000):
            a = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 12)))
            b = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 12)))
            assert levenshtein(a, b) == edit_distance_oracle(a, b)
            assert lcs_length(a, b) == lcs_oracle(a, b)
            assert levenshtein(a, b) == levenshtein(b, a)


class TestThroughput:

    def test_three_minute_trace_under_a_second(self, classifier):
        detections = []
        for k in range(36):
            detections += stationary(k * 150, 11, x=100 + 25 * k, y=900, fade=3)
        long_trace = trace(detections, frame_count=5400)
        assert len(long_trace.detections) == 504

        started = time.perf_counter()
        scenario = classifier.classify_trace(long_trace)
        elapsed = time.perf_counter() - started

        assert str(scenario.to_sequence()) == "T" * 36
        assert elapsed < 1.0
