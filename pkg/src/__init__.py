"""
touch2replay

Compila trazos de detecciones de indicadores de toque (uno por frame de una
grabación de pantalla) en scripts sendevent reproducibles en Android.

Arquitectura en capas:
- interfaces: Contratos abstractos (IDeviceTransport, IEventConverter)
- core: Modelo de datos, codecs y driver de reproducción
- filters: Filtros intercambiables (patrón Strategy)
- engines: Segmentación, clasificación, síntesis y generación de escenarios
- adapters: Generación y serialización de scripts sendevent
- providers: Transportes concretos (adb, memoria)
- reporting: Métricas y reportes de evaluación
- config: Perfiles, presets de ruido y configuración
- pipeline: Fábrica con inyección de dependencias
- cli: Punto de entrada de línea de comandos
"""

__version__ = '1.0.0'
__license__ = 'MIT'

from src.interfaces import IDeviceTransport, IEventConverter

__all__ = [
    'IDeviceTransport',
    'IEventConverter',
]
