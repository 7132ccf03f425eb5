"""
Pipeline - Orquestación del flujo completo

Compone las etapas:
1. Clasificación del trazo de detecciones
2. Generación del script sendevent
3. Reproducción en el dispositivo (opcional)

Utiliza Dependency Injection para máxima flexibilidad y testabilidad.
"""

from .pipeline_factory import PipelineFactory

__version__ = '1.0.0'
__all__ = ['PipelineFactory']
