"""
Secuencias de tipos de acción

Representación compacta de un escenario como cadena de símbolos:
T = Tap, L = LongTap, G = Gesture. Con el alfabeto extendido los MFAs
llevan el número de dedos (G2, T3).
"""

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Tuple

from .models import MAX_FINGERS

_SYMBOL = re.compile(r"([TLG])(\d*)")


class MetricsError(Exception):
    """Excepción base para errores de evaluación"""
    pass


class SequenceFormatError(MetricsError):
    """Cadena o archivo de secuencias mal formado"""
    pass


def _check_symbol(symbol: str) -> None:
    match = _SYMBOL.fullmatch(symbol)
    if match is None:
        raise SequenceFormatError(f"Símbolo de acción inválido: {symbol!r}")
    digits = match.group(2)
    if digits and not 1 <= int(digits) <= MAX_FINGERS:
        raise SequenceFormatError(f"Número de dedos fuera de [1, {MAX_FINGERS}] en {symbol!r}")


@dataclass(frozen=True)
class ActionTypeSequence:
    """Secuencia ordenada de símbolos de tipo de acción"""
    symbols: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        for symbol in self.symbols:
            _check_symbol(symbol)

    @classmethod
    def parse(cls, text: str) -> "ActionTypeSequence":
        """
        Parsea una cadena como "TTG2L".

        Raises:
            SequenceFormatError: Si hay caracteres fuera del alfabeto
        """
        text = text.strip()
        symbols = []
        position = 0
        for match in _SYMBOL.finditer(text):
            if match.start() != position:
                break
            symbols.append(match.group(0))
            position = match.end()
        if position != len(text):
            raise SequenceFormatError(f"Secuencia inválida {text!r}: carácter inesperado en posición {position}")
        return cls(tuple(symbols))

    def basic(self) -> "ActionTypeSequence":
        """Misma secuencia sin número de dedos"""
        return ActionTypeSequence(tuple(s[0] for s in self.symbols))

    def counts(self) -> Counter:
        return Counter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    def __getitem__(self, index: int) -> str:
        return self.symbols[index]

    def __str__(self) -> str:
        return "".join(self.symbols)
