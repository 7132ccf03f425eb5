"""
Fixtures compartidas de las pruebas
"""

from pathlib import Path

import pytest

from src.core.models import DeviceProfile
from src.providers.memory_transport import MemoryTransport

from .builders import profile as build_profile

REPO_ROOT = Path(__file__).resolve().parents[1]
SCENARIOS_DIR = REPO_ROOT / "config" / "scenarios"


@pytest.fixture
def profile() -> DeviceProfile:
    """Perfil 1080x1920 a 30 fps con los umbrales por defecto"""
    return build_profile()


@pytest.fixture
def scenarios_dir() -> Path:
    return SCENARIOS_DIR


@pytest.fixture
def memory_transport() -> MemoryTransport:
    return MemoryTransport()


@pytest.fixture
def agent_file(tmp_path: Path) -> Path:
    """Binario de agente ficticio"""
    agent = tmp_path / "agents" / "replay-agent"
    agent.parent.mkdir(parents=True)
    agent.write_bytes(b"\x7fELF-agent")
    return agent


@pytest.fixture
def isolated_env(monkeypatch, tmp_path: Path) -> Path:
    """Directorio de trabajo limpio y sin variables TOUCH2REPLAY_*"""
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("TOUCH2REPLAY_ADB_PATH", raising=False)
    monkeypatch.delenv("TOUCH2REPLAY_OUTPUT_DIR", raising=False)
    return tmp_path
