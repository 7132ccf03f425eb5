"""
Utils - Utilidades compartidas

- logging_setup: configuración única del handler raíz
"""

from .logging_setup import LOG_FORMAT, LOG_LEVELS, configure_logging

__version__ = '1.0.0'
__all__ = ['LOG_FORMAT', 'LOG_LEVELS', 'configure_logging']
