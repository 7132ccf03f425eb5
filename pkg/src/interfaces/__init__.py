"""
Interfaces abstractas de touch2replay

Este módulo define los contratos (interfaces) que deben cumplir
las implementaciones concretas. Siguiendo el principio de Inversión
de Dependencias (DIP), los módulos de alto nivel dependen de estas
abstracciones, no de implementaciones concretas.
"""

from .device_transport import (
    ExecResult,
    IDeviceTransport,
    TransportCall,
    TransportError,
    TransportNotFoundError,
    TransportTimeoutError,
)
from .event_converter import IEventConverter

__all__ = [
    'IDeviceTransport',
    'IEventConverter',
    'ExecResult',
    'TransportCall',
    'TransportError',
    'TransportNotFoundError',
    'TransportTimeoutError',
]

__version__ = '1.0.0'
