"""
Pruebas de la factory del pipeline
"""

import pytest

from src.adapters.sendevent_generator import SendEventGenerator
from src.config import AppConfig, ConfigError, get_noise_preset
from src.adapters.script_codec import translate_runnable
from src.core.replay_driver import ABI_PROPERTY_COMMAND, DRY_RUN_AGENT_NAME, ReplayDriver
from src.core.script import DEFAULT_DEVICE_NODE, SendEventScript
from src.engines.action_classifier import ActionClassifier
from src.pipeline import PipelineFactory
from src.providers.adb_transport import AdbTransport
from src.providers.memory_transport import MemoryTransport

from .builders import profile


class TestComponents:

    def test_classifier_uses_confidence_threshold(self):
        classifier = PipelineFactory.create_classifier(AppConfig(min_confidence=0.5), enable_logging=False)
        assert isinstance(classifier, ActionClassifier)
        assert classifier.segmenter.min_confidence == 0.5

    def test_generator_uses_device_node(self):
        generator = PipelineFactory.create_generator(AppConfig(device_node="/dev/input/event5"))
        assert isinstance(generator, SendEventGenerator)
        assert generator.device_node == "/dev/input/event5"

    def test_synthesizer_noise(self):
        config = AppConfig(noise_preset="emulator", rng_seed=9)
        assert PipelineFactory.create_synthesizer(config).noise == get_noise_preset("emulator", 9)
        explicit = get_noise_preset("clean", 1)
        assert PipelineFactory.create_synthesizer(config, noise=explicit).noise is explicit

    def test_scenario_generator(self):
        generator = PipelineFactory.create_scenario_generator(AppConfig(device_profile="nexus6p", rng_seed=4))
        assert generator.profile.screen_width == 1440
        assert generator.seed == 4


class TestTransport:

    def test_dry_run_is_memory(self):
        transport = PipelineFactory.create_transport(AppConfig(), dry_run=True)
        assert isinstance(transport, MemoryTransport)
        assert transport.exec_results == {}

    def test_dry_run_answers_first_abi(self, tmp_path):
        config = AppConfig(agent_by_abi={"x86_64": tmp_path / "a", "arm64-v8a": tmp_path / "b"})
        transport = PipelineFactory.create_transport(config, dry_run=True)
        assert transport.exec(ABI_PROPERTY_COMMAND) == (0, "arm64-v8a\n")

    def test_adb_unavailable(self, mocker):
        mocker.patch("src.providers.adb_transport.shutil.which", return_value=None)
        with pytest.raises(ConfigError, match="TOUCH2REPLAY_ADB_PATH"):
            PipelineFactory.create_transport(AppConfig(adb_path="/missing/adb"))

    def test_adb_available(self, mocker):
        mocker.patch("src.providers.adb_transport.shutil.which", return_value="/usr/bin/adb")
        transport = PipelineFactory.create_transport(AppConfig(device_serial="abc"), enable_logging=False)
        assert isinstance(transport, AdbTransport)


class TestReplayDriver:

    def test_requires_agent_on_device(self):
        with pytest.raises(ConfigError, match="agent_path"):
            PipelineFactory.create_replay_driver(AppConfig())

    def test_dry_run_without_agent_sends_empty_stub(self):
        driver = PipelineFactory.create_replay_driver(AppConfig(), dry_run=True, enable_logging=False)

        report = driver.push_and_replay(translate_runnable(SendEventScript(DEFAULT_DEVICE_NODE, (), profile())))

        assert report.exit_code == 0
        assert [(c.operation, c.target, c.size) for c in report.transcript[:2]] == [
            ("push", f"/data/local/tmp/{DRY_RUN_AGENT_NAME}", 0),
            ("push", "/data/local/tmp/scenario.v2sr", 8),
        ]
        assert report.transcript[2].operation == "exec"

    def test_agent_must_exist(self, tmp_path):
        with pytest.raises(ConfigError, match="no existe"):
            PipelineFactory.create_replay_driver(AppConfig(agent_path=tmp_path / "agent"), dry_run=True)

    def test_dry_run_driver(self, agent_file):
        driver = PipelineFactory.create_replay_driver(AppConfig(agent_path=agent_file), dry_run=True)
        assert isinstance(driver, ReplayDriver)
        assert isinstance(driver.transport, MemoryTransport)
        assert driver.config.agent_path == str(agent_file)

    def test_explicit_transport(self, agent_file, memory_transport):
        driver = PipelineFactory.create_replay_driver(AppConfig(agent_path=agent_file), transport=memory_transport)
        assert driver.transport is memory_transport


class TestPipeline:

    def test_keys(self):
        pipeline = PipelineFactory.create_pipeline(AppConfig(device_profile="pixel3-60fps"), enable_logging=False)
        assert set(pipeline) == {"profile", "classifier", "generator"}
        assert pipeline["profile"].fps == 60

    def test_with_replay(self, agent_file):
        config = AppConfig(agent_path=agent_file, duration_based_tap=True)
        pipeline = PipelineFactory.create_pipeline(config, with_replay=True, dry_run=True)
        assert pipeline["driver"].config.profile == pipeline["profile"]
        assert pipeline["profile"].tap_cutoff_ms == 667.0
