"""
Pruebas del driver de reproducción y de los transportes
"""

import subprocess
from pathlib import Path

import pytest

from src.adapters.script_codec import translate_runnable
from src.core.replay_driver import (
    ABI_PROPERTY_COMMAND,
    NonZeroExitError,
    ReplayConfig,
    ReplayDriver,
    ReplayError,
    push_and_replay,
)
from src.core.script import (
    ABS_MT_POSITION_X,
    ABS_MT_POSITION_Y,
    EV_ABS,
    EV_SYN,
    SYN_REPORT,
    InputEvent,
    SendEventScript,
)
from src.interfaces.device_transport import (
    ExecResult,
    TransportCall,
    TransportError,
    TransportNotFoundError,
    TransportTimeoutError,
)
from src.providers.adb_transport import AdbTransport
from src.providers.memory_transport import MemoryTransport

from .builders import profile


def runnable(x=540, y=960):
    events = (
        InputEvent(0, EV_ABS, ABS_MT_POSITION_X, x),
        InputEvent(0, EV_ABS, ABS_MT_POSITION_Y, y),
        InputEvent(0, EV_SYN, SYN_REPORT, 0),
    )
    return translate_runnable(SendEventScript("/dev/input/event2", events, profile()))


class TestReplayDriver:

    def test_transcript_order(self, memory_transport, agent_file):
        config = ReplayConfig(agent_path=str(agent_file))

        report = push_and_replay(runnable(), memory_transport, config)

        agent_remote = "/data/local/tmp/replay-agent"
        script_remote = "/data/local/tmp/scenario.v2sr"
        command = f"chmod 755 {agent_remote} && {agent_remote} /dev/input/event2 {script_remote}"
        assert [(c.operation, c.target) for c in report.transcript] == [
            ("push", agent_remote),
            ("push", script_remote),
            ("exec", command),
        ]
        assert memory_transport.calls == list(report.transcript)
        assert memory_transport.files[agent_remote] == agent_file.read_bytes()
        assert memory_transport.files[script_remote] == runnable()
        assert report.exit_code == 0
        assert report.duration_ms >= 0

    def test_repeated_replay_same_calls(self, memory_transport, agent_file):
        driver = ReplayDriver(memory_transport, ReplayConfig(agent_path=str(agent_file)), enable_logging=False)

        first = driver.push_and_replay(runnable())
        second = driver.push_and_replay(runnable())

        assert first.transcript == second.transcript
        assert memory_transport.calls == list(first.transcript) * 2

    def test_report_serialization(self, memory_transport, agent_file):
        report = push_and_replay(runnable(), memory_transport, ReplayConfig(agent_path=str(agent_file)))
        data = report.to_dict()
        assert data["transcript"][0] == {"operation": "push", "target": "/data/local/tmp/replay-agent", "size": 10}
        assert "size" not in data["transcript"][2]

    def test_custom_remote_paths(self, memory_transport, agent_file):
        config = ReplayConfig(
            agent_path=str(agent_file), remote_dir="/sdcard/t2r", device_node="/dev/input/event7", script_name="s.bin"
        )
        ReplayDriver(memory_transport, config, enable_logging=False).push_and_replay(runnable())
        assert memory_transport.calls[-1].target.endswith("/sdcard/t2r/replay-agent /dev/input/event7 /sdcard/t2r/s.bin")

    def test_push_failure(self, agent_file):
        transport = MemoryTransport(fail_on_push=True)
        with pytest.raises(TransportError):
            push_and_replay(runnable(), transport, ReplayConfig(agent_path=str(agent_file)))
        assert [c.operation for c in transport.calls] == ["push"]

    def test_agent_failure(self, agent_file):
        transport = MemoryTransport(exec_results={"chmod": ExecResult(1, "segfault")})

        with pytest.raises(NonZeroExitError) as info:
            push_and_replay(runnable(), transport, ReplayConfig(agent_path=str(agent_file)))

        assert info.value.exit_code == 1
        assert "segfault" in str(info.value)
        assert info.value.report is not None
        assert len(info.value.report.transcript) == 3

    def test_agent_selected_by_abi(self, tmp_path, agent_file):
        arm = tmp_path / "agent-arm64"
        arm.write_bytes(b"arm64")
        transport = MemoryTransport(exec_results={ABI_PROPERTY_COMMAND: ExecResult(0, "arm64-v8a\n")})
        config = ReplayConfig(agent_by_abi={"arm64-v8a": str(arm), "x86_64": str(agent_file)})

        report = push_and_replay(runnable(), transport, config)

        assert report.transcript[0] == TransportCall("exec", ABI_PROPERTY_COMMAND)
        assert report.transcript[1] == TransportCall("push", "/data/local/tmp/agent-arm64", 5)

    def test_unknown_abi_falls_back_to_agent_path(self, agent_file):
        transport = MemoryTransport(exec_results={ABI_PROPERTY_COMMAND: ExecResult(0, "mips\n")})
        config = ReplayConfig(agent_path=str(agent_file), agent_by_abi={"arm64-v8a": "/nowhere"})
        report = push_and_replay(runnable(), transport, config)
        assert report.transcript[1].target.endswith("replay-agent")

    def test_unknown_abi_without_fallback(self):
        transport = MemoryTransport(exec_results={ABI_PROPERTY_COMMAND: ExecResult(0, "mips\n")})
        with pytest.raises(ReplayError, match="mips"):
            push_and_replay(runnable(), transport, ReplayConfig(agent_by_abi={"arm64-v8a": "/nowhere"}))

    def test_invalid_script_rejected_before_any_call(self, memory_transport, agent_file):
        config = ReplayConfig(agent_path=str(agent_file), profile=profile())
        with pytest.raises(ReplayError, match="inválido"):
            push_and_replay(runnable(x=5000), memory_transport, config)
        assert memory_transport.calls == []

    def test_corrupt_bytes_rejected(self, memory_transport, agent_file):
        with pytest.raises(ReplayError):
            push_and_replay(b"not a script", memory_transport, ReplayConfig(agent_path=str(agent_file)))
        assert memory_transport.calls == []

    def test_missing_agent(self, memory_transport, tmp_path):
        with pytest.raises(ReplayError, match="agente"):
            push_and_replay(runnable(), memory_transport, ReplayConfig(agent_path=str(tmp_path / "none")))

    def test_no_agent_configured(self, memory_transport):
        with pytest.raises(ReplayError):
            push_and_replay(runnable(), memory_transport, ReplayConfig())


def completed(code=0, stdout="", stderr=""):
    return subprocess.CompletedProcess(args=["adb"], returncode=code, stdout=stdout, stderr=stderr)


class TestAdbTransport:

    def test_exec_with_serial(self, mocker):
        run = mocker.patch("src.providers.adb_transport.subprocess.run", return_value=completed(0, "ok\n"))
        transport = AdbTransport(adb_path="/opt/adb", serial="emulator-5554", timeout=5.0, enable_logging=False)

        assert transport.exec("getprop ro.product.cpu.abi") == (0, "ok\n")

        args, kwargs = run.call_args
        assert args[0] == ["/opt/adb", "-s", "emulator-5554", "shell", "getprop ro.product.cpu.abi"]
        assert kwargs["timeout"] == 5.0

    def test_exec_without_serial(self, mocker):
        run = mocker.patch("src.providers.adb_transport.subprocess.run", return_value=completed(2, "", "err"))
        assert AdbTransport().exec("ls") == (2, "err")
        assert run.call_args[0][0] == ["adb", "shell", "ls"]

    def test_timeout(self, mocker):
        mocker.patch(
            "src.providers.adb_transport.subprocess.run",
            side_effect=subprocess.TimeoutExpired(cmd="adb", timeout=1),
        )
        with pytest.raises(TransportTimeoutError):
            AdbTransport(timeout=1).exec("sleep 10")

    def test_binary_not_found(self, mocker):
        mocker.patch("src.providers.adb_transport.subprocess.run", side_effect=FileNotFoundError("adb"))
        with pytest.raises(TransportNotFoundError, match="TOUCH2REPLAY_ADB_PATH"):
            AdbTransport(adb_path="/missing/adb").exec("ls")

    def test_push_retries_with_backoff(self, mocker):
        run = mocker.patch(
            "src.providers.adb_transport.subprocess.run",
            side_effect=[completed(1, "", "device offline"), completed(0)],
        )
        sleep = mocker.patch("src.providers.adb_transport.time.sleep")

        AdbTransport(retry_delay=0.5, enable_logging=False).push(b"data", "/data/local/tmp/x.v2sr")

        assert run.call_count == 2
        sleep.assert_called_once_with(0.5)
        local = run.call_args[0][0][2]
        assert run.call_args[0][0][:2] == ["adb", "push"]
        assert not Path(local).exists()

    def test_push_gives_up(self, mocker):
        run = mocker.patch("src.providers.adb_transport.subprocess.run", return_value=completed(1, "", "no space"))
        mocker.patch("src.providers.adb_transport.time.sleep")

        with pytest.raises(TransportError, match="no space"):
            AdbTransport(max_retries=3).push(b"data", "/data/local/tmp/x")
        assert run.call_count == 3

    def test_push_does_not_retry_missing_binary(self, mocker):
        run = mocker.patch("src.providers.adb_transport.subprocess.run", side_effect=FileNotFoundError("adb"))
        with pytest.raises(TransportNotFoundError):
            AdbTransport().push(b"data", "/data/local/tmp/x")
        assert run.call_count == 1

    def test_availability(self, mocker):
        mocker.patch("src.providers.adb_transport.shutil.which", return_value=None)
        assert AdbTransport().is_available() is False

    def test_invalid_retries(self):
        with pytest.raises(ValueError):
            AdbTransport(max_retries=0)


class TestMemoryTransport:

    def test_exec_by_prefix(self):
        transport = MemoryTransport(exec_results={"getprop": ExecResult(0, "x86_64\n")})
        assert transport.exec("getprop ro.product.cpu.abi") == (0, "x86_64\n")
        assert transport.exec("ls") == (0, "")

    def test_reset(self):
        transport = MemoryTransport()
        transport.push(b"a", "/x")
        transport.reset()
        assert transport.calls == [] and transport.files == {}

    def test_exec_failure(self):
        with pytest.raises(TransportError):
            MemoryTransport(fail_on_exec=True).exec("ls")
