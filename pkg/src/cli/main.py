"""
Punto de entrada de línea de comandos

    python -m src.cli [opciones globales] <subcomando> [argumentos]

Subcomandos:
- classify:   trazo JSON -> <stem>.classified.json + <stem>.pred.txt
- generate:   escenario clasificado -> <stem>.sendevent.log + <stem>.v2sr
- replay:     <stem>.v2sr -> dispositivo (o MemoryTransport con --dry-run)
- synthesize: fixture de escenario (o --random N) -> <stem>.trace.json + <stem>.truth.txt
- evaluate:   secuencias predichas + de referencia -> metrics.json + metrics.txt
- pipeline:   classify -> generate (-> replay con --device o --dry-run)

Códigos de salida: 0 éxito, 1 fallo en tiempo de ejecución, 2 error de entrada o configuración.
"""

import argparse
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import replace
from pathlib import Path
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple, TypeVar

from ..adapters.script_codec import LOG_SUFFIX, RUNNABLE_SUFFIX, read_runnable, write_script_files
from ..config.device_profiles import list_device_profiles
from ..config.noise_presets import list_noise_presets
from ..config.settings import AppConfig, ConfigError, load_config
from ..core.action_sequence import ActionTypeSequence, MetricsError
from ..core.actions import ClassifiedScenario
from ..core.ground_truth import GroundTruthScenario, ScenarioError, load_scenario
from ..core.models import DeviceProfile, TraceError
from ..core.replay_driver import NonZeroExitError, ReplayDriver, ReplayError, ReplayReport
from ..core.scenario_codec import dump_classified, load_classified
from ..core.script import CodegenError, ScriptFormatError
from ..core.trace_codec import load_trace, save_trace
from ..interfaces.device_transport import TransportError
from ..pipeline.pipeline_factory import PipelineFactory
from ..reporting.batch_reporter import BatchReporter
from ..reporting.metrics import evaluate_batch
from ..reporting.sequences import read_judgments, read_sequences, write_sequences
from ..utils.logging_setup import LOG_LEVELS, configure_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_INPUT = 2

CLASSIFIED_SUFFIX = ".classified.json"
PRED_SUFFIX = ".pred.txt"
TRACE_SUFFIX = ".trace.json"
TRUTH_SUFFIX = ".truth.txt"
REPLAY_SUFFIX = ".replay.json"
METRICS_JSON = "metrics.json"
METRICS_TEXT = "metrics.txt"
METRICS_EXCEL = "metrics.xlsx"

# Sufijos que se quitan para obtener el nombre base de un artefacto
_KNOWN_SUFFIXES = (CLASSIFIED_SUFFIX, TRACE_SUFFIX, LOG_SUFFIX, RUNNABLE_SUFFIX, ".json")

# Errores de entrada o configuración (código 2); el resto son fallos de ejecución (código 1)
_INPUT_ERRORS = (ConfigError, TraceError, ScenarioError, MetricsError, ScriptFormatError)
_RUNTIME_ERRORS = (CodegenError, ReplayError, TransportError, OSError)

T = TypeVar("T")
R = TypeVar("R")


class StageError(Exception):
    """Error de una etapa del CLI con su código de salida"""

    def __init__(self, stage: str, error: Exception):
        self.stage = stage
        self.error = error
        self.exit_code = EXIT_INPUT if isinstance(error, _INPUT_ERRORS) else EXIT_RUNTIME
        super().__init__(f"[{stage}] {type(error).__name__}: {error}")


@contextmanager
def stage(name: str) -> Iterator[None]:
    """Etiqueta con el nombre de la etapa los errores conocidos que escapen del bloque"""
    try:
        yield
    except StageError:
        raise
    except _INPUT_ERRORS + _RUNTIME_ERRORS as e:
        raise StageError(name, e) from e


def artifact_stem(path: Path) -> str:
    """Nombre base de un archivo sin los sufijos de artefacto conocidos"""
    name = path.name
    for suffix in _KNOWN_SUFFIXES:
        if name.endswith(suffix) and len(name) > len(suffix):
            return name[: -len(suffix)]
    return path.stem


def map_ordered(function: Callable[[T], R], items: Sequence[T], workers: int) -> List[R]:
    """Aplica function a cada elemento con un pool acotado; el resultado conserva el orden de entrada"""
    if workers <= 1 or len(items) <= 1:
        return [function(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as executor:
        return list(executor.map(function, items))


def require_files(paths: Sequence[Path], what: str) -> None:
    if not paths:
        raise ConfigError(f"No se indicó ningún {what}")
    for path in paths:
        if not path.is_file():
            raise ConfigError(f"No existe el {what}: {path}")


def _write_json(data: Dict[str, Any], path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
    return path


# ==========================================
# ETAPAS
# ==========================================

def classify_file(path: Path, config: AppConfig) -> Tuple[ClassifiedScenario, Path, Path]:
    """Clasifica un trazo y escribe <stem>.classified.json y <stem>.pred.txt"""
    with stage("classify"):
        trace = load_trace(path)
        trace = replace(trace, profile=config.apply_tap_rule(trace.profile))
        scenario = PipelineFactory.create_classifier(config).classify_trace(trace)

        stem = artifact_stem(path)
        classified_path = dump_classified(scenario, config.output_dir / f"{stem}{CLASSIFIED_SUFFIX}")
        pred_path = write_sequences(
            [(stem, scenario.to_sequence(config.extended_alphabet))],
            config.output_dir / f"{stem}{PRED_SUFFIX}",
        )
    return scenario, classified_path, pred_path


def generate_file(
    scenario: ClassifiedScenario,
    stem: str,
    config: AppConfig,
) -> Tuple[Path, Path]:
    """Compila un escenario clasificado y escribe el log y el ejecutable"""
    with stage("generate"):
        script = PipelineFactory.create_generator(config).convert(scenario)
        return write_script_files(script, config.output_dir, stem)


def replay_file(runnable_path: Path, driver: ReplayDriver, config: AppConfig) -> ReplayReport:
    """Reproduce un ejecutable y escribe <stem>.replay.json (también si el agente falla)"""
    stem = artifact_stem(runnable_path)
    report_path = config.output_dir / f"{stem}{REPLAY_SUFFIX}"
    with stage("replay"):
        script = read_runnable(runnable_path)
        try:
            report = driver.push_and_replay(script)
        except NonZeroExitError as e:
            if e.report is not None:
                _write_json(e.report.to_dict(), report_path)
            raise
        _write_json(report.to_dict(), report_path)
    return report


def _script_profile(runnable_path: Path, config: AppConfig) -> DeviceProfile:
    """Perfil del escenario clasificado hermano del ejecutable; si no existe, el de la configuración"""
    classified_path = runnable_path.with_name(f"{artifact_stem(runnable_path)}{CLASSIFIED_SUFFIX}")
    if not classified_path.is_file():
        return config.profile()
    with stage("replay"):
        return load_classified(classified_path).profile


def synthesize_one(item: Tuple[str, GroundTruthScenario, int], config: AppConfig) -> Tuple[Path, Path]:
    """Sintetiza un escenario y escribe <stem>.trace.json y <stem>.truth.txt"""
    stem, scenario, index = item
    with stage("synthesize"):
        noise = config.noise().with_seed(config.rng_seed + index)
        result = PipelineFactory.create_synthesizer(config, noise=noise).synthesize(scenario)
        truth = result.extended_truth if config.extended_alphabet else result.truth
        trace_path = save_trace(result.trace, config.output_dir / f"{stem}{TRACE_SUFFIX}")
        truth_path = write_sequences([(stem, truth)], config.output_dir / f"{stem}{TRUTH_SUFFIX}")
    logger.info(f"[CLI] {stem}: {len(result.trace)} detecciones, {result.false_positives} falsos positivos")
    return trace_path, truth_path


def _merge_sequences(paths: Sequence[Path]) -> Dict[str, ActionTypeSequence]:
    merged: Dict[str, ActionTypeSequence] = {}
    for path in paths:
        for scenario_id, sequence in read_sequences(path).items():
            if scenario_id in merged:
                raise MetricsError(f"Escenario '{scenario_id}' repetido en {path}")
            merged[scenario_id] = sequence
    return merged


# ==========================================
# SUBCOMANDOS
# ==========================================

def _trace_inputs(args: argparse.Namespace, config: AppConfig) -> List[Path]:
    paths = [Path(p) for p in args.inputs] or list(config.traces)
    require_files(paths, "trazo de detecciones")
    return paths


def cmd_classify(args: argparse.Namespace, config: AppConfig) -> int:
    paths = _trace_inputs(args, config)
    results = map_ordered(lambda path: classify_file(path, config), paths, config.workers)
    for path, (scenario, classified_path, _) in zip(paths, results):
        print(f"{artifact_stem(path)} {scenario.to_sequence(config.extended_alphabet)} -> {classified_path}")
    return EXIT_OK


def cmd_generate(args: argparse.Namespace, config: AppConfig) -> int:
    paths = [Path(p) for p in args.inputs]
    require_files(paths, "escenario clasificado")

    def generate(path: Path) -> Tuple[Path, Path]:
        with stage("generate"):
            scenario = load_classified(path)
        return generate_file(scenario, artifact_stem(path), config)

    for log_path, runnable_path in map_ordered(generate, paths, config.workers):
        print(f"{log_path}\n{runnable_path}")
    return EXIT_OK


def cmd_replay(args: argparse.Namespace, config: AppConfig) -> int:
    paths = [Path(p) for p in args.inputs]
    require_files(paths, "script ejecutable")
    # Un dispositivo, un script a la vez
    for path in paths:
        profile = _script_profile(path, config)
        with stage("replay"):
            driver = PipelineFactory.create_replay_driver(config, profile=profile, dry_run=args.dry_run)
        report = replay_file(path, driver, config)
        print(f"{path}: código {report.exit_code}, {report.duration_ms:.0f} ms, {len(report.transcript)} llamadas")
    return EXIT_OK


def cmd_synthesize(args: argparse.Namespace, config: AppConfig) -> int:
    items: List[Tuple[str, GroundTruthScenario, int]] = []
    if args.random is not None:
        if args.random < 1:
            raise StageError("synthesize", ConfigError("--random requiere un número de escenarios >= 1"))
        generator = PipelineFactory.create_scenario_generator(config)
        with stage("synthesize"):
            for index in range(args.random):
                items.append((f"random-{index:04d}", generator.generate(index), index))
    else:
        paths = [Path(p) for p in args.inputs] or ([config.scenario] if config.scenario else [])
        require_files(paths, "fixture de escenario")
        with stage("synthesize"):
            for index, path in enumerate(paths):
                items.append((artifact_stem(path), load_scenario(path), index))

    for trace_path, truth_path in map_ordered(lambda item: synthesize_one(item, config), items, config.workers):
        print(f"{trace_path}\n{truth_path}")
    return EXIT_OK


def cmd_evaluate(args: argparse.Namespace, config: AppConfig) -> int:
    pred_paths = [Path(p) for p in args.pred]
    truth_paths = [Path(p) for p in args.truth]
    require_files(pred_paths, "archivo de predicciones")
    require_files(truth_paths, "archivo de referencia")

    with stage("evaluate"):
        predictions = _merge_sequences(pred_paths)
        truths = _merge_sequences(truth_paths)
        missing = [scenario_id for scenario_id in truths if scenario_id not in predictions]
        if missing:
            raise MetricsError(f"Sin predicción para: {', '.join(missing)}")
        extra = [scenario_id for scenario_id in predictions if scenario_id not in truths]
        if extra:
            logger.warning(f"[CLI] Predicciones sin referencia ignoradas: {', '.join(extra)}")

        judgments = read_judgments(args.judgments) if args.judgments else None
        ids = list(truths)
        pairs = [(predictions[i], truths[i]) for i in ids]
        if not config.extended_alphabet:
            pairs = [(pred.basic(), truth.basic()) for pred, truth in pairs]
        metrics = evaluate_batch(pairs, ids, judgments, workers=config.workers)

        reporter = BatchReporter(metrics)
        reporter.generar_reporte_json(config.output_dir / METRICS_JSON)
        reporter.generar_resumen_texto(config.output_dir / METRICS_TEXT)
        if args.excel:
            reporter.generar_reporte_excel(config.output_dir / METRICS_EXCEL)

    print(reporter.generar_tabla_texto(), end="")
    return EXIT_OK


def cmd_pipeline(args: argparse.Namespace, config: AppConfig) -> int:
    paths = _trace_inputs(args, config)
    with_replay = args.device or args.dry_run

    def compile_trace(path: Path) -> Tuple[ClassifiedScenario, Path]:
        scenario, _, _ = classify_file(path, config)
        _, runnable_path = generate_file(scenario, artifact_stem(path), config)
        return scenario, runnable_path

    compiled = map_ordered(compile_trace, paths, config.workers)
    for path, (scenario, runnable_path) in zip(paths, compiled):
        print(f"{artifact_stem(path)} {scenario.to_sequence(config.extended_alphabet)} -> {runnable_path}")

    if with_replay:
        for scenario, runnable_path in compiled:
            with stage("replay"):
                driver = PipelineFactory.create_replay_driver(
                    config, profile=scenario.profile, dry_run=args.dry_run
                )
            report = replay_file(runnable_path, driver, config)
            print(f"{runnable_path}: código {report.exit_code}, {len(report.transcript)} llamadas")
    return EXIT_OK


# ==========================================
# PARSER
# ==========================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="touch2replay",
        description="Compila trazos de indicadores de toque en scripts sendevent reproducibles.",
        epilog="Códigos de salida: 0 éxito, 1 fallo de ejecución, 2 error de entrada o configuración.",
    )
    parser.add_argument("--config", metavar="FILE", help="archivo de configuración JSON o YAML")
    parser.add_argument("--output-dir", metavar="DIR", help="directorio de artefactos (por defecto: output)")
    parser.add_argument(
        "--profile",
        choices=list_device_profiles(),
        help="perfil de dispositivo para synthesize --random y replay sin escenario clasificado",
    )
    parser.add_argument("--log-level", default="WARNING", choices=LOG_LEVELS, help="nivel de log (por defecto: WARNING)")
    parser.add_argument("--workers", type=int, metavar="N", help="hilos para procesar entradas en lote")

    subparsers = parser.add_subparsers(dest="command", required=True, metavar="<subcomando>")

    classify = subparsers.add_parser("classify", help="trazo de detecciones -> escenario clasificado")
    classify.add_argument("inputs", nargs="*", metavar="TRACE", help="trazos JSON (por defecto: 'traces' de la configuración)")
    _add_classification_flags(classify)
    classify.set_defaults(handler=cmd_classify)

    generate = subparsers.add_parser("generate", help="escenario clasificado -> script sendevent")
    generate.add_argument("inputs", nargs="+", metavar="CLASSIFIED", help="archivos <stem>.classified.json")
    generate.add_argument("--device-node", help="nodo de entrada del dispositivo (por defecto: /dev/input/event2)")
    generate.set_defaults(handler=cmd_generate)

    replay = subparsers.add_parser("replay", help="reproduce scripts ejecutables en el dispositivo")
    replay.add_argument("inputs", nargs="+", metavar="RUNNABLE", help="archivos <stem>.v2sr")
    _add_device_flags(replay)
    replay.set_defaults(handler=cmd_replay)

    synthesize = subparsers.add_parser("synthesize", help="fixture de escenario -> trazo sintético + verdad")
    synthesize.add_argument("inputs", nargs="*", metavar="SCENARIO", help="fixtures JSON (por defecto: 'scenario')")
    synthesize.add_argument("--random", type=int, metavar="N", help="generar N escenarios aleatorios en lugar de fixtures")
    synthesize.add_argument("--noise", dest="noise_preset", choices=list_noise_presets(), help="preset de ruido")
    synthesize.add_argument("--seed", dest="rng_seed", type=int, help="semilla de generación y ruido")
    synthesize.add_argument("--extended", action="store_true", default=None, help="verdad con conteo de dedos (G2)")
    synthesize.set_defaults(handler=cmd_synthesize)

    evaluate = subparsers.add_parser("evaluate", help="métricas entre secuencias predichas y de referencia")
    evaluate.add_argument("--pred", nargs="+", required=True, metavar="FILE", help="archivos de predicciones")
    evaluate.add_argument("--truth", nargs="+", required=True, metavar="FILE", help="archivos de referencia")
    evaluate.add_argument("--judgments", metavar="FILE", help="juicios humanos de reproducción (JSON)")
    evaluate.add_argument("--extended", action="store_true", default=None, help="comparar con conteo de dedos")
    evaluate.add_argument("--excel", action="store_true", help="exportar además metrics.xlsx")
    evaluate.set_defaults(handler=cmd_evaluate)

    pipeline = subparsers.add_parser("pipeline", help="classify -> generate (-> replay)")
    pipeline.add_argument("inputs", nargs="*", metavar="TRACE", help="trazos JSON (por defecto: 'traces')")
    _add_classification_flags(pipeline)
    pipeline.add_argument("--device", action="store_true", help="reproducir en el dispositivo al terminar")
    _add_device_flags(pipeline)
    pipeline.set_defaults(handler=cmd_pipeline)

    return parser


def _add_classification_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--extended", action="store_true", default=None, help="alfabeto con conteo de dedos (G2)")
    parser.add_argument(
        "--duration-tap", dest="duration_based_tap", action="store_true", default=None,
        help="corte Tap/LongTap por duración en lugar de 20 frames",
    )
    parser.add_argument("--min-confidence", type=float, metavar="C", help="confianza mínima de detección")


def _add_device_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dry-run", action="store_true", help="usar un transporte en memoria; no se toca ningún dispositivo")
    parser.add_argument("--serial", dest="device_serial", help="serial del dispositivo (adb -s)")
    parser.add_argument("--agent", dest="agent_path", metavar="FILE", help="binario del agente de reproducción")
    parser.add_argument("--adb", dest="adb_path", metavar="PATH", help="ruta del binario adb")


# Destinos de argparse que son campos de AppConfig
_OVERRIDE_FIELDS = (
    "output_dir", "workers", "extended_alphabet", "duration_based_tap", "min_confidence",
    "noise_preset", "rng_seed", "device_serial", "agent_path", "adb_path", "device_node",
)


def config_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    """Valores de flags a sobrescribir en la configuración (los ausentes quedan en None)"""
    values = vars(args)
    overrides = {name: values.get(name) for name in _OVERRIDE_FIELDS}
    overrides["extended_alphabet"] = values.get("extended")
    if values.get("profile"):
        overrides["device_profile"] = values["profile"]
    return overrides


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)

    try:
        config = load_config(args.config, overrides=config_overrides(args))
        return args.handler(args, config)
    except ConfigError as e:
        print(f"error [config]: {e}", file=sys.stderr)
        return EXIT_INPUT
    except StageError as e:
        logger.debug("[CLI] Detalle del error", exc_info=e.error)
        print(f"error {e}", file=sys.stderr)
        return e.exit_code
