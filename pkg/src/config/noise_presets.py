"""
Presets del Modelo de Ruido

Perillas de calibración del sintetizador de trazos:
- clean: sin ruido (solo la cola de desvanecimiento)
- physical-device: grabación de un dispositivo físico
- emulator: grabación de un emulador (más jitter, más falsos positivos)
"""

from typing import Dict, List

from ..core.ground_truth import NoiseModel

DEFAULT_NOISE_PRESET = "clean"

NOISE_PRESETS: Dict[str, NoiseModel] = {
    "clean": NoiseModel(),
    "physical-device": NoiseModel(
        position_jitter_sigma=2.0,
        false_positive_rate=0.005,
        dropout_rate=0.01,
    ),
    "emulator": NoiseModel(
        position_jitter_sigma=4.0,
        false_positive_rate=0.01,
        dropout_rate=0.03,
    ),
}


def get_noise_preset(name: str, rng_seed: int = 0) -> NoiseModel:
    """
    Preset por nombre con la semilla dada.

    Raises:
        KeyError: Si el preset no existe
    """
    if name not in NOISE_PRESETS:
        raise KeyError(f"Preset de ruido desconocido '{name}'. Disponibles: {', '.join(list_noise_presets())}")
    return NOISE_PRESETS[name].with_seed(rng_seed)


def list_noise_presets() -> List[str]:
    return sorted(NOISE_PRESETS)
