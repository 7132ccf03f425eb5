"""
Configuración: perfiles de dispositivo, presets de ruido y ajustes de la aplicación.
"""

from .device_profiles import DEFAULT_PROFILE, DEVICE_PROFILES, get_device_profile, list_device_profiles
from .noise_presets import DEFAULT_NOISE_PRESET, NOISE_PRESETS, get_noise_preset, list_noise_presets
from .settings import ENV_ADB_PATH, ENV_OUTPUT_DIR, AppConfig, ConfigError, load_config

__version__ = '1.0.0'
__all__ = [
    'DEFAULT_PROFILE',
    'DEVICE_PROFILES',
    'get_device_profile',
    'list_device_profiles',
    'DEFAULT_NOISE_PRESET',
    'NOISE_PRESETS',
    'get_noise_preset',
    'list_noise_presets',
    'ENV_ADB_PATH',
    'ENV_OUTPUT_DIR',
    'AppConfig',
    'ConfigError',
    'load_config',
]
