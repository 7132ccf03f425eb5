"""
MemoryTransport - Implementación en memoria de IDeviceTransport

Registra cada llamada para aserciones en pruebas y para `pipeline --dry-run`.
Permite programar respuestas y fallos por operación.
"""

import logging
from typing import Dict, List, Optional, Tuple

from ..interfaces.device_transport import ExecResult, TransportCall, TransportError

logger = logging.getLogger(__name__)


class MemoryTransport:
    """
    Transporte simulado.

    Ejemplo:
        >>> transport = MemoryTransport(exec_results={"getprop": ExecResult(0, "arm64-v8a\\n")})
        >>> transport.exec("getprop ro.product.cpu.abi")
        (0, 'arm64-v8a\\n')
    """

    def __init__(
        self,
        exec_results: Optional[Dict[str, ExecResult]] = None,
        fail_on_push: bool = False,
        fail_on_exec: bool = False,
    ):
        """
        Args:
            exec_results: Resultado por prefijo de comando; por defecto (0, "")
            fail_on_push: Lanzar TransportError en cada push
            fail_on_exec: Lanzar TransportError en cada exec
        """
        self.exec_results = dict(exec_results or {})
        self.fail_on_push = fail_on_push
        self.fail_on_exec = fail_on_exec
        self.calls: List[TransportCall] = []
        self.files: Dict[str, bytes] = {}

    def describe(self) -> str:
        return "memoria (sin dispositivo)"

    def push(self, data: bytes, remote_path: str) -> None:
        self.calls.append(TransportCall("push", remote_path, len(data)))
        logger.info(f"[MemoryTransport] push {len(data)} bytes -> {remote_path}")
        if self.fail_on_push:
            raise TransportError(f"Fallo simulado en push a {remote_path}")
        self.files[remote_path] = bytes(data)

    def exec(self, command: str) -> Tuple[int, str]:
        self.calls.append(TransportCall("exec", command))
        logger.info(f"[MemoryTransport] shell {command}")
        if self.fail_on_exec:
            raise TransportError(f"Fallo simulado en exec: {command}")
        for prefix, result in self.exec_results.items():
            if command.startswith(prefix):
                return result.exit_code, result.output
        return 0, ""

    def reset(self) -> None:
        self.calls.clear()
        self.files.clear()
