"""
Configuración del logging de la aplicación

Las bibliotecas del paquete solo crean loggers por módulo; el handler raíz
lo configura una única vez el punto de entrada (CLI).
"""

import logging
from typing import Optional, Union

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def configure_logging(level: Union[str, int] = "WARNING", log_file: Optional[str] = None) -> None:
    """
    Configura el handler raíz.

    Args:
        level: Nivel por nombre ("INFO") o valor numérico
        log_file: Archivo adicional de log (opcional)

    Raises:
        ValueError: Si el nombre de nivel es desconocido
    """
    if isinstance(level, str):
        name = level.strip().upper()
        if name not in LOG_LEVELS:
            raise ValueError(f"Nivel de log desconocido: {level} (válidos: {', '.join(LOG_LEVELS)})")
        level = getattr(logging, name)

    handlers: list = [logging.StreamHandler()]
    if log_file:
        handlers.append(logging.FileHandler(log_file, encoding="utf-8"))

    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers, force=True)
