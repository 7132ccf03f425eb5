"""
Interface para conversores de escenario a eventos de entrada

Implementa el principio de Inversión de Dependencias (DIP):
- El pipeline depende de esta interfaz, no del generador concreto
- Permite sustituir el protocolo de eventos sin modificar el pipeline
"""

from typing import Optional, Protocol

from ..core.actions import ClassifiedScenario
from ..core.models import DeviceProfile
from ..core.script import SendEventScript


class IEventConverter(Protocol):
    """
    Interface para conversores escenario -> script.

    Ejemplos de implementaciones:
    - SendEventGenerator (multi-touch tipo B)
    """

    def convert(self, scenario: ClassifiedScenario, profile: Optional[DeviceProfile] = None) -> SendEventScript:
        """
        Compila un escenario clasificado a un script de eventos.

        Args:
            scenario: SFAs y MFAs en orden cronológico
            profile: Perfil de reproducción (por defecto el del escenario)

        Returns:
            SendEventScript que cumple sus invariantes

        Raises:
            CodegenError: Si el escenario no se puede compilar
        """
        ...

    def get_protocol_info(self) -> str:
        """Descripción legible del protocolo emitido"""
        ...
