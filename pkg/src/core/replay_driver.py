"""
ReplayDriver - Envío y ejecución del script en el dispositivo

Secuencia de llamadas al transporte (idéntica en cada ejecución):
    [exec getprop ro.product.cpu.abi]   solo si hay agentes por ABI
    push agente  -> <remote_dir>/<nombre del agente>
    push script  -> <remote_dir>/<nombre del script>
    exec chmod 755 <agente> && <agente> <device_node> <script>

El script se valida antes de cualquier llamada al transporte.
"""

import logging
import time
from dataclasses import dataclass, field
from pathlib import Path, PurePosixPath
from typing import Any, Dict, List, Mapping, Optional, Tuple

from ..adapters.script_codec import parse_runnable
from ..interfaces.device_transport import IDeviceTransport, TransportCall
from .models import DeviceProfile
from .script import DEFAULT_DEVICE_NODE, CodegenError, validate_events

logger = logging.getLogger(__name__)

DEFAULT_REMOTE_DIR = "/data/local/tmp"
DEFAULT_SCRIPT_NAME = "scenario.v2sr"
DRY_RUN_AGENT_NAME = "replay-agent"
ABI_PROPERTY_COMMAND = "getprop ro.product.cpu.abi"


class ReplayError(Exception):
    """Excepción base para errores de reproducción"""
    pass


class NonZeroExitError(ReplayError):
    """El agente de reproducción terminó con código distinto de cero"""

    def __init__(self, exit_code: int, output: str, report: Optional["ReplayReport"] = None):
        self.exit_code = exit_code
        self.output = output
        self.report = report
        super().__init__(f"El agente de reproducción terminó con código {exit_code}: {output.strip()[:500]}")


@dataclass(frozen=True)
class ReplayConfig:
    """Rutas y parámetros de reproducción"""
    agent_path: Optional[str] = None
    agent_by_abi: Mapping[str, str] = field(default_factory=dict)
    remote_dir: str = DEFAULT_REMOTE_DIR
    device_node: str = DEFAULT_DEVICE_NODE
    script_name: str = DEFAULT_SCRIPT_NAME
    profile: Optional[DeviceProfile] = None
    # Contenido que se envía en lugar de leer agent_path (dry-run sin binario)
    agent_stub: Optional[bytes] = None

    def remote(self, name: str) -> str:
        return str(PurePosixPath(self.remote_dir) / name)


@dataclass(frozen=True)
class ReplayReport:
    """Resultado de una reproducción"""
    exit_code: int
    duration_ms: float
    transcript: Tuple[TransportCall, ...]
    output: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "exit_code": self.exit_code,
            "duration_ms": round(self.duration_ms, 3),
            "transcript": [call.to_dict() for call in self.transcript],
            "output": self.output,
        }


class ReplayDriver:
    """
    Driver de reproducción sobre un transporte.

    Una instancia por dispositivo. Ejemplo:
        >>> driver = ReplayDriver(MemoryTransport(), ReplayConfig(agent_path="bin/replay"))
        >>> report = driver.push_and_replay(runnable_bytes)
    """

    def __init__(self, transport: IDeviceTransport, config: ReplayConfig, enable_logging: bool = True):
        self.transport = transport
        self.config = config
        self.enable_logging = enable_logging

    def push_and_replay(self, script: bytes) -> ReplayReport:
        """
        Valida, envía y ejecuta un script en formato ejecutable.

        Raises:
            ReplayError: Si el script es inválido o no hay agente para el dispositivo
            TransportError: Si falla un push o exec
            NonZeroExitError: Si el agente termina con error
        """
        try:
            events = parse_runnable(script)
            validate_events(events, self.config.profile)
        except CodegenError as e:
            raise ReplayError(f"Script inválido, no se envía al dispositivo: {e}") from e

        transcript: List[TransportCall] = []
        start = time.monotonic()

        agent_local = self._select_agent(transcript)
        agent_bytes = self._read_agent(agent_local)
        agent_remote = self.config.remote(Path(agent_local).name)
        script_remote = self.config.remote(self.config.script_name)

        self._push(agent_bytes, agent_remote, transcript)
        self._push(script, script_remote, transcript)
        command = f"chmod 755 {agent_remote} && {agent_remote} {self.config.device_node} {script_remote}"
        transcript.append(TransportCall("exec", command))
        exit_code, output = self.transport.exec(command)

        report = ReplayReport(
            exit_code=exit_code,
            duration_ms=(time.monotonic() - start) * 1000,
            transcript=tuple(transcript),
            output=output,
        )
        if self.enable_logging:
            logger.info(
                f"[ReplayDriver] {len(events)} eventos reproducidos vía {self.transport.describe()} "
                f"en {report.duration_ms:.0f} ms (código {exit_code})"
            )
        if exit_code != 0:
            raise NonZeroExitError(exit_code, output, report)
        return report

    def _push(self, data: bytes, remote_path: str, transcript: List[TransportCall]) -> None:
        transcript.append(TransportCall("push", remote_path, len(data)))
        self.transport.push(data, remote_path)

    def _select_agent(self, transcript: List[TransportCall]) -> str:
        if not self.config.agent_by_abi:
            if not self.config.agent_path:
                raise ReplayError("No hay agente de reproducción configurado (agent_path o agent_by_abi)")
            return self.config.agent_path

        transcript.append(TransportCall("exec", ABI_PROPERTY_COMMAND))
        code, output = self.transport.exec(ABI_PROPERTY_COMMAND)
        abi = output.strip()
        if code != 0 or abi not in self.config.agent_by_abi:
            if self.config.agent_path:
                logger.warning(f"[ReplayDriver] ABI '{abi}' sin agente específico, se usa {self.config.agent_path}")
                return self.config.agent_path
            raise ReplayError(
                f"No hay agente para la ABI '{abi}' (disponibles: {', '.join(sorted(self.config.agent_by_abi))})"
            )
        return self.config.agent_by_abi[abi]

    def _read_agent(self, path: str) -> bytes:
        if self.config.agent_stub is not None:
            return self.config.agent_stub
        try:
            return Path(path).read_bytes()
        except OSError as e:
            raise ReplayError(f"No se pudo leer el agente de reproducción {path}: {e}") from e


def push_and_replay(script: bytes, transport: IDeviceTransport, config: ReplayConfig) -> ReplayReport:
    """Atajo funcional de ReplayDriver.push_and_replay"""
    return ReplayDriver(transport, config).push_and_replay(script)
