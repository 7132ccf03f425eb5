"""
Interface para transportes hacia el dispositivo (debug bridge)

Implementa el principio de Inversión de Dependencias (DIP):
- El driver de reproducción depende de esta interfaz
- Las implementaciones concretas (adb real, transporte en memoria) la cumplen
- Permite probar la reproducción sin dispositivos
"""

from dataclasses import dataclass
from typing import Any, Dict, Protocol, Tuple


@dataclass(frozen=True)
class TransportCall:
    """Registro de una llamada al transporte"""
    operation: str  # "push" | "exec"
    target: str     # ruta remota o comando
    size: int = 0   # bytes enviados (push)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"operation": self.operation, "target": self.target}
        if self.operation == "push":
            data["size"] = self.size
        return data


@dataclass(frozen=True)
class ExecResult:
    """Resultado de un comando remoto"""
    exit_code: int
    output: str = ""


class IDeviceTransport(Protocol):
    """
    Interface para transportes hacia un dispositivo.

    Ejemplos de implementaciones:
    - AdbTransport (binario adb como subproceso)
    - MemoryTransport (registro en memoria para pruebas y dry-run)
    """

    def push(self, data: bytes, remote_path: str) -> None:
        """
        Copia bytes locales a una ruta del dispositivo.

        Raises:
            TransportError: Si la copia falla
        """
        ...

    def exec(self, command: str) -> Tuple[int, str]:
        """
        Ejecuta un comando de shell en el dispositivo.

        Returns:
            (código de salida, salida combinada)

        Raises:
            TransportError: Si el comando no se pudo lanzar
        """
        ...

    def describe(self) -> str:
        """Descripción legible del transporte para logs"""
        ...


# ==========================================
# EXCEPCIONES
# ==========================================

class TransportError(Exception):
    """Excepción base para errores de transporte"""
    pass


class TransportTimeoutError(TransportError):
    """El comando del transporte excedió el timeout"""
    pass


class TransportNotFoundError(TransportError):
    """No se encontró el binario del debug bridge"""
    pass
