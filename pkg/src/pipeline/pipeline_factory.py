"""
PipelineFactory - Factory para crear pipelines con Dependency Injection

Implementa Factory Pattern para facilitar la creación de los componentes
configurados: clasificador, generador de scripts, sintetizador, transporte
y driver de reproducción.
"""

import logging
from dataclasses import replace
from typing import Any, Dict, Optional

from ..adapters.sendevent_generator import SendEventGenerator
from ..config.settings import AppConfig, ConfigError
from ..core.ground_truth import NoiseModel
from ..core.models import DeviceProfile
from ..core.replay_driver import ABI_PROPERTY_COMMAND, DRY_RUN_AGENT_NAME, ReplayConfig, ReplayDriver
from ..engines.action_classifier import ActionClassifier
from ..engines.scenario_generator import ScenarioGenerator
from ..engines.trace_synthesizer import TraceSynthesizer
from ..interfaces.device_transport import ExecResult, IDeviceTransport
from ..interfaces.event_converter import IEventConverter
from ..providers.adb_transport import AdbTransport
from ..providers.memory_transport import MemoryTransport

logger = logging.getLogger(__name__)


class PipelineFactory:
    """
    Factory para crear componentes del pipeline con DI.

    Todos los métodos aceptan una AppConfig; los componentes no leen
    configuración por su cuenta.
    """

    @staticmethod
    def create_classifier(config: Optional[AppConfig] = None, enable_logging: bool = True) -> ActionClassifier:
        """
        Crea el clasificador de acciones.

        Args:
            config: Configuración (si None, valores por defecto)
            enable_logging: Habilitar logging
        """
        config = config or AppConfig()
        return ActionClassifier(min_confidence=config.min_confidence, enable_logging=enable_logging)

    @staticmethod
    def create_generator(config: Optional[AppConfig] = None, enable_logging: bool = True) -> IEventConverter:
        config = config or AppConfig()
        return SendEventGenerator(device_node=config.device_node, enable_logging=enable_logging)

    @staticmethod
    def create_synthesizer(
        config: Optional[AppConfig] = None,
        noise: Optional[NoiseModel] = None,
    ) -> TraceSynthesizer:
        """
        Crea el sintetizador de trazos.

        Args:
            config: Configuración con el preset de ruido y la semilla
            noise: Modelo de ruido explícito (tiene prioridad sobre config)
        """
        config = config or AppConfig()
        return TraceSynthesizer(noise if noise is not None else config.noise())

    @staticmethod
    def create_scenario_generator(
        config: Optional[AppConfig] = None,
        profile: Optional[DeviceProfile] = None,
    ) -> ScenarioGenerator:
        config = config or AppConfig()
        return ScenarioGenerator(profile or config.profile(), seed=config.rng_seed)

    @staticmethod
    def create_transport(
        config: Optional[AppConfig] = None,
        dry_run: bool = False,
        enable_logging: bool = True,
    ) -> IDeviceTransport:
        """
        Crea el transporte hacia el dispositivo.

        Args:
            config: Configuración con ruta de adb, serial y timeout
            dry_run: Usar MemoryTransport (ningún dispositivo involucrado)
            enable_logging: Habilitar logging de invocaciones

        Raises:
            ConfigError: Si no es dry-run y el binario adb no está disponible
        """
        config = config or AppConfig()
        if dry_run:
            # Con agentes por ABI, la consulta simulada responde la primera ABI configurada
            exec_results: Dict[str, ExecResult] = {}
            if config.agent_by_abi:
                first_abi = sorted(config.agent_by_abi)[0]
                exec_results[ABI_PROPERTY_COMMAND] = ExecResult(0, f"{first_abi}\n")
            return MemoryTransport(exec_results=exec_results)

        transport = AdbTransport(
            adb_path=config.adb_path,
            serial=config.device_serial,
            timeout=config.transport_timeout,
            enable_logging=enable_logging,
        )
        if not transport.is_available():
            raise ConfigError(
                f"No se encontró el binario adb '{config.adb_path}'. "
                f"Configurar adb_path o la variable de entorno TOUCH2REPLAY_ADB_PATH"
            )
        return transport

    @staticmethod
    def create_replay_driver(
        config: Optional[AppConfig] = None,
        transport: Optional[IDeviceTransport] = None,
        profile: Optional[DeviceProfile] = None,
        dry_run: bool = False,
        enable_logging: bool = True,
    ) -> ReplayDriver:
        """
        Crea el driver de reproducción con su transporte.

        Args:
            config: Configuración con agentes y rutas remotas
            transport: Transporte (si None, se crea según config y dry_run)
            profile: Perfil para validar coordenadas antes de enviar
            dry_run: Ver create_transport
            enable_logging: Habilitar logging

        Raises:
            ConfigError: Si no hay agente de reproducción configurado o no existe
                (en dry-run sin agente se envía un agente vacío)
        """
        config = config or AppConfig()
        has_agent = config.agent_path is not None or bool(config.agent_by_abi)
        if not has_agent and not dry_run:
            raise ConfigError("Falta 'agent_path' (o 'agent_by_abi') para reproducir en el dispositivo")
        config.require_paths(*[name for name in ("agent_path", "agent_by_abi") if getattr(config, name)])

        if transport is None:
            transport = PipelineFactory.create_transport(config, dry_run=dry_run, enable_logging=enable_logging)
        replay_config: ReplayConfig = config.replay_config(profile)
        if not has_agent:
            replay_config = replace(replay_config, agent_path=DRY_RUN_AGENT_NAME, agent_stub=b"")
            if enable_logging:
                logger.info("[PipelineFactory] Dry-run sin agente configurado: se simula un agente vacío")
        return ReplayDriver(transport, replay_config, enable_logging=enable_logging)

    @staticmethod
    def create_pipeline(
        config: Optional[AppConfig] = None,
        with_replay: bool = False,
        dry_run: bool = False,
        enable_logging: bool = True,
    ) -> Dict[str, Any]:
        """
        Crea el pipeline clasificar -> generar (-> reproducir).

        Returns:
            Dict con 'profile', 'classifier', 'generator' y opcionalmente 'driver'

        Example:
            >>> pipeline = PipelineFactory.create_pipeline(config, with_replay=True, dry_run=True)
            >>> scenario = pipeline['classifier'].classify_trace(trace)
            >>> script = pipeline['generator'].convert(scenario)
        """
        config = config or AppConfig()
        profile = config.profile()
        result: Dict[str, Any] = {
            'profile': profile,
            'classifier': PipelineFactory.create_classifier(config, enable_logging),
            'generator': PipelineFactory.create_generator(config, enable_logging),
        }
        if with_replay:
            result['driver'] = PipelineFactory.create_replay_driver(
                config, profile=profile, dry_run=dry_run, enable_logging=enable_logging
            )
        logger.debug(f"[PipelineFactory] Pipeline creado (perfil {profile.name}, reproducción={with_replay})")
        return result
