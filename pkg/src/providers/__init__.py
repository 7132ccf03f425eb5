"""
Providers - Implementaciones concretas de las interfaces de transporte

- AdbTransport: debug bridge real (subproceso)
- MemoryTransport: transporte en memoria para pruebas y dry-run
"""

from .adb_transport import AdbTransport
from .memory_transport import MemoryTransport

__version__ = '1.0.0'
__all__ = ['AdbTransport', 'MemoryTransport']
