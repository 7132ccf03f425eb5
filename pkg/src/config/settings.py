"""
Configuración de la Aplicación

Un único archivo JSON (o YAML) con sobrescritura por variables de entorno
y por flags de línea de comandos.

Precedencia: flags > variables de entorno > archivo > valores por defecto

Variables de entorno (también desde un .env):
- TOUCH2REPLAY_ADB_PATH: ruta del binario adb
- TOUCH2REPLAY_OUTPUT_DIR: directorio de salida
"""

import json
import logging
import os
from dataclasses import replace
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union

import yaml
from dotenv import find_dotenv, load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from ..core.ground_truth import NoiseModel
from ..core.models import DeviceProfile
from ..core.replay_driver import DEFAULT_REMOTE_DIR, ReplayConfig
from ..core.script import DEFAULT_DEVICE_NODE
from ..core.trace_codec import describe_validation_error
from ..filters import DEFAULT_MIN_CONFIDENCE
from .device_profiles import DEFAULT_PROFILE, DURATION_TAP_CUTOFF_MS, get_device_profile, list_device_profiles
from .noise_presets import DEFAULT_NOISE_PRESET, NOISE_PRESETS, get_noise_preset, list_noise_presets

logger = logging.getLogger(__name__)

ENV_ADB_PATH = "TOUCH2REPLAY_ADB_PATH"
ENV_OUTPUT_DIR = "TOUCH2REPLAY_OUTPUT_DIR"

# Claves de documentación permitidas en el archivo y que no son configuración
_DOC_KEYS = ("$schema", "title", "description", "version")


class ConfigError(Exception):
    """Configuración inválida o incompleta"""
    pass


class AppConfig(BaseModel):
    """Configuración validada de touch2replay"""
    model_config = ConfigDict(frozen=True, extra="forbid")

    # Entradas
    traces: List[Path] = Field(default_factory=list)
    scenario: Optional[Path] = None

    # Dispositivo y reproducción
    device_profile: str = DEFAULT_PROFILE
    adb_path: str = "adb"
    device_serial: Optional[str] = None
    agent_path: Optional[Path] = None
    agent_by_abi: Dict[str, Path] = Field(default_factory=dict)
    remote_dir: str = DEFAULT_REMOTE_DIR
    device_node: str = DEFAULT_DEVICE_NODE
    transport_timeout: float = Field(60.0, gt=0)

    # Síntesis
    noise_preset: str = DEFAULT_NOISE_PRESET
    rng_seed: int = 0

    # Salida y clasificación
    output_dir: Path = Path("output")
    extended_alphabet: bool = False
    duration_based_tap: bool = False
    min_confidence: float = Field(DEFAULT_MIN_CONFIDENCE, ge=0.0, le=1.0)
    workers: int = Field(1, ge=1, le=64)

    @field_validator("device_profile")
    @classmethod
    def _known_profile(cls, value: str) -> str:
        if value.strip().lower() not in list_device_profiles():
            raise ValueError(f"perfil desconocido '{value}' (disponibles: {', '.join(list_device_profiles())})")
        return value.strip().lower()

    @field_validator("noise_preset")
    @classmethod
    def _known_preset(cls, value: str) -> str:
        if value not in NOISE_PRESETS:
            raise ValueError(f"preset desconocido '{value}' (disponibles: {', '.join(list_noise_presets())})")
        return value

    def profile(self) -> DeviceProfile:
        """Perfil seleccionado con el corte de Tap por duración si está activo"""
        return self.apply_tap_rule(get_device_profile(self.device_profile))

    def apply_tap_rule(self, profile: DeviceProfile) -> DeviceProfile:
        if self.duration_based_tap and profile.tap_cutoff_ms is None:
            return replace(profile, tap_cutoff_ms=DURATION_TAP_CUTOFF_MS)
        return profile

    def noise(self) -> NoiseModel:
        return get_noise_preset(self.noise_preset, self.rng_seed)

    def replay_config(self, profile: Optional[DeviceProfile] = None) -> ReplayConfig:
        return ReplayConfig(
            agent_path=str(self.agent_path) if self.agent_path else None,
            agent_by_abi={abi: str(path) for abi, path in self.agent_by_abi.items()},
            remote_dir=self.remote_dir,
            device_node=self.device_node,
            profile=profile,
        )

    def require_paths(self, *names: str) -> None:
        """
        Verifica que las rutas de entrada indicadas existan.

        Raises:
            ConfigError: Con el nombre del campo y la ruta faltante
        """
        for name in names:
            value = getattr(self, name)
            if isinstance(value, dict):
                paths = list(value.values())
            elif isinstance(value, list):
                paths = value
            else:
                paths = [value] if value else []
            if not paths:
                raise ConfigError(f"Falta '{name}' en la configuración o en los argumentos")
            for path in paths:
                if not Path(path).exists():
                    raise ConfigError(f"'{name}': no existe {path}")


def _read_file(path: Path) -> Dict[str, Any]:
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise ConfigError(f"No se pudo leer el archivo de configuración {path}: {e}") from e

    try:
        if path.suffix.lower() in (".yaml", ".yml"):
            data = yaml.safe_load(text) or {}
        else:
            data = json.loads(text)
    except (json.JSONDecodeError, yaml.YAMLError) as e:
        raise ConfigError(f"Archivo de configuración mal formado {path}: {e}") from e

    if not isinstance(data, dict):
        raise ConfigError(f"El archivo de configuración {path} debe contener un objeto")
    return {k: v for k, v in data.items() if k not in _DOC_KEYS}


def _env_overrides(environ: Mapping[str, str]) -> Dict[str, Any]:
    overrides: Dict[str, Any] = {}
    if environ.get(ENV_ADB_PATH):
        overrides["adb_path"] = environ[ENV_ADB_PATH]
    if environ.get(ENV_OUTPUT_DIR):
        overrides["output_dir"] = environ[ENV_OUTPUT_DIR]
    return overrides


def load_config(
    path: Optional[Union[str, Path]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
    environ: Optional[Mapping[str, str]] = None,
    load_env_file: bool = True,
) -> AppConfig:
    """
    Construye la configuración combinando todas las fuentes.

    Args:
        path: Archivo JSON/YAML (opcional)
        overrides: Valores de flags; los None se ignoran
        environ: Entorno a usar (por defecto os.environ)
        load_env_file: Cargar un .env del directorio actual antes de leer el entorno

    Raises:
        ConfigError: Si el archivo o algún valor es inválido
    """
    if environ is None:
        if load_env_file:
            load_dotenv(find_dotenv(usecwd=True))
        environ = os.environ

    values: Dict[str, Any] = {}
    if path is not None:
        values.update(_read_file(Path(path)))
    values.update(_env_overrides(environ))
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})

    try:
        config = AppConfig.model_validate(values)
    except ValidationError as e:
        raise ConfigError(f"Configuración inválida: {describe_validation_error(e)}") from e

    logger.debug(f"[Settings] Configuración cargada (perfil {config.device_profile}, salida {config.output_dir})")
    return config
