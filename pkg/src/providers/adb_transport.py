"""
AdbTransport - Implementación de IDeviceTransport con el binario adb

Ejecuta `adb [-s serial] push` y `adb [-s serial] shell` como subprocesos.
Incluye timeout, reintentos con backoff y registro de cada invocación.
"""

import logging
import os
import shutil
import subprocess
import tempfile
import time
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from ..interfaces.device_transport import TransportError, TransportNotFoundError, TransportTimeoutError

logger = logging.getLogger(__name__)


class AdbTransport:
    """
    Transporte sobre el debug bridge de Android.

    Características:
    - Selección de dispositivo con -s cuando hay serial
    - Timeout por invocación
    - Reintentos con backoff exponencial solo para push (idempotente)
    """

    def __init__(
        self,
        adb_path: str = "adb",
        serial: Optional[str] = None,
        timeout: float = 60.0,
        max_retries: int = 3,
        retry_delay: float = 1.0,
        enable_logging: bool = True,
    ):
        """
        Inicializa el transporte.

        Args:
            adb_path: Ruta o nombre del binario adb
            serial: Serial del dispositivo destino (opcional)
            timeout: Timeout en segundos por invocación
            max_retries: Intentos máximos de push
            retry_delay: Espera base entre reintentos (segundos)
            enable_logging: Habilitar logging de invocaciones
        """
        if max_retries < 1:
            raise ValueError(f"max_retries debe ser >= 1, recibido: {max_retries}")
        self.adb_path = adb_path
        self.serial = serial
        self.timeout = timeout
        self.max_retries = max_retries
        self.retry_delay = retry_delay
        self.enable_logging = enable_logging

    def is_available(self) -> bool:
        """True si el binario adb existe en el PATH o en la ruta dada"""
        return shutil.which(self.adb_path) is not None

    def describe(self) -> str:
        target = f" -s {self.serial}" if self.serial else ""
        return f"adb ({self.adb_path}{target})"

    def push(self, data: bytes, remote_path: str) -> None:
        """
        Copia bytes al dispositivo a través de un archivo temporal.

        Raises:
            TransportError: Si todos los intentos fallan
        """
        fd, local = tempfile.mkstemp(prefix="touch2replay-", suffix=Path(remote_path).suffix)
        try:
            with os.fdopen(fd, "wb") as handle:
                handle.write(data)

            last_error: Optional[TransportError] = None
            for attempt in range(self.max_retries):
                try:
                    code, output = self._run(["push", local, remote_path])
                    if code == 0:
                        return
                    last_error = TransportError(f"adb push a {remote_path} falló (código {code}): {output.strip()}")
                except TransportNotFoundError:
                    raise
                except TransportError as e:
                    last_error = e

                if attempt < self.max_retries - 1:
                    wait_time = self.retry_delay * 2 ** attempt
                    logger.warning(
                        f"[AdbTransport] Error en intento {attempt + 1} de push, reintentando en {wait_time:.1f}s..."
                    )
                    time.sleep(wait_time)

            raise last_error or TransportError(f"adb push a {remote_path} falló")
        except OSError as e:
            raise TransportError(f"No se pudo preparar el archivo temporal para push: {e}") from e
        finally:
            Path(local).unlink(missing_ok=True)

    def exec(self, command: str) -> Tuple[int, str]:
        """Ejecuta un comando con `adb shell` y devuelve (código, salida)"""
        return self._run(["shell", command])

    def _command(self, args: Sequence[str]) -> List[str]:
        command = [self.adb_path]
        if self.serial:
            command += ["-s", self.serial]
        return command + list(args)

    def _run(self, args: Sequence[str]) -> Tuple[int, str]:
        command = self._command(args)
        if self.enable_logging:
            logger.info(f"[AdbTransport] {' '.join(command)}")

        try:
            completed = subprocess.run(
                command,
                capture_output=True,
                text=True,
                timeout=self.timeout,
                check=False,
            )
        except FileNotFoundError as e:
            raise TransportNotFoundError(
                f"No se encontró el binario adb en '{self.adb_path}'. "
                "Configurar adb_path o TOUCH2REPLAY_ADB_PATH"
            ) from e
        except subprocess.TimeoutExpired as e:
            raise TransportTimeoutError(f"Timeout de {self.timeout}s en: {' '.join(command)}") from e
        except OSError as e:
            raise TransportError(f"No se pudo ejecutar {' '.join(command)}: {e}") from e

        output = (completed.stdout or "") + (completed.stderr or "")
        logger.debug(f"[AdbTransport] código {completed.returncode}: {output.strip()[:200]}")
        return completed.returncode, output
