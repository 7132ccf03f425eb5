"""
Perfiles de Dispositivo

Dispositivos de grabación y reproducción conocidos. Los valores de
pantalla y fps corresponden a la grabación de pantalla nativa de cada
dispositivo; el touch slop es el valor por defecto de AOSP.

Los perfiles con API levels antiguos pueden declarar tripletas
(type, code, value) de prólogo y epílogo para el script.
"""

from typing import Dict, List

from ..core.models import DeviceProfile

DEFAULT_PROFILE = "nexus5"

# 667 ms equivale a 20 frames a 30 fps
DURATION_TAP_CUTOFF_MS = 667.0


DEVICE_PROFILES: Dict[str, DeviceProfile] = {
    # Nexus 5: dispositivo físico de referencia
    "nexus5": DeviceProfile(name="nexus5", screen_width=1080, screen_height=1920, fps=30),
    "nexus6p": DeviceProfile(name="nexus6p", screen_width=1440, screen_height=2560, fps=30),
    "pixel3-60fps": DeviceProfile(name="pixel3-60fps", screen_width=1080, screen_height=2160, fps=60),
    "emulator": DeviceProfile(name="emulator", screen_width=1080, screen_height=1920, fps=30),
}


def get_device_profile(name: str) -> DeviceProfile:
    """
    Obtiene un perfil por nombre.

    Raises:
        KeyError: Si el perfil no existe (el mensaje lista los disponibles)
    """
    key = name.strip().lower()
    if key not in DEVICE_PROFILES:
        raise KeyError(f"Perfil de dispositivo desconocido '{name}'. Disponibles: {', '.join(list_device_profiles())}")
    return DEVICE_PROFILES[key]


def list_device_profiles() -> List[str]:
    return sorted(DEVICE_PROFILES)
