"""
Archivos de secuencias de tipos de acción

Formato: una línea por escenario, `<scenario_id> <símbolos>`; las líneas
vacías y las que empiezan con `#` se ignoran. Un escenario sin acciones
se escribe solo con su identificador.

    # verdad de referencia
    scenario-001 TTGL
    scenario-002 G2T

Los juicios humanos (éxito de reproducción) se registran en JSON:
    {"scenario-001": {"reproduced": true, "faithful_actions": 4}}
"""

import json
from collections import OrderedDict
from pathlib import Path
from typing import Dict, Iterable, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ..core.action_sequence import ActionTypeSequence, MetricsError, SequenceFormatError
from .metrics import HumanJudgment

SEQUENCE_SUFFIX = ".txt"


def parse_sequences(text: str) -> "OrderedDict[str, ActionTypeSequence]":
    """
    Parsea el contenido de un archivo de secuencias.

    Raises:
        SequenceFormatError: Si una línea es inválida o un identificador se repite
    """
    sequences: "OrderedDict[str, ActionTypeSequence]" = OrderedDict()
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) > 2:
            raise SequenceFormatError(f"Línea {number}: se esperaba '<id> <símbolos>', recibido {line!r}")
        scenario_id = parts[0]
        if scenario_id in sequences:
            raise SequenceFormatError(f"Línea {number}: identificador repetido {scenario_id!r}")
        try:
            sequences[scenario_id] = ActionTypeSequence.parse(parts[1] if len(parts) == 2 else "")
        except SequenceFormatError as e:
            raise SequenceFormatError(f"Línea {number}: {e}") from e
    return sequences


def format_sequences(entries: Iterable[Tuple[str, ActionTypeSequence]]) -> str:
    lines = []
    for scenario_id, sequence in entries:
        if not scenario_id or any(c.isspace() for c in scenario_id):
            raise SequenceFormatError(f"Identificador de escenario inválido: {scenario_id!r}")
        lines.append(f"{scenario_id} {sequence}".rstrip())
    return "\n".join(lines) + "\n"


def read_sequences(path: Union[str, Path]) -> "OrderedDict[str, ActionTypeSequence]":
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise SequenceFormatError(f"No se pudo leer el archivo de secuencias {path}: {e}") from e
    return parse_sequences(text)


def write_sequences(entries: Iterable[Tuple[str, ActionTypeSequence]], path: Union[str, Path]) -> Path:
    path = Path(path)
    content = format_sequences(entries)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(content, encoding="utf-8")
    except OSError as e:
        raise MetricsError(f"No se pudo escribir el archivo de secuencias {path}: {e}") from e
    return path


class JudgmentRecord(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    reproduced: bool
    faithful_actions: int = Field(0, ge=0)


def read_judgments(path: Union[str, Path]) -> Dict[str, HumanJudgment]:
    """
    Lee los juicios humanos por escenario.

    Raises:
        SequenceFormatError: Si el archivo no existe o no cumple el formato
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
        records = {str(k): JudgmentRecord.model_validate(v) for k, v in dict(data).items()}
    except (OSError, UnicodeDecodeError, json.JSONDecodeError, TypeError, ValueError, ValidationError) as e:
        raise SequenceFormatError(f"Archivo de juicios inválido {path}: {e}") from e
    return {k: HumanJudgment(r.reproduced, r.faithful_actions) for k, r in records.items()}
