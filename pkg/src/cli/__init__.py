"""
CLI - Punto de entrada de línea de comandos (python -m src.cli)
"""

from .main import EXIT_INPUT, EXIT_OK, EXIT_RUNTIME, StageError, build_parser, main

__version__ = '1.0.0'
__all__ = ['EXIT_INPUT', 'EXIT_OK', 'EXIT_RUNTIME', 'StageError', 'build_parser', 'main']
