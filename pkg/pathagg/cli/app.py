"""
pathagg - Interface de linha de comando

Este módulo reúne os comandos para gerar instâncias, resolver, verificar,
calcular o ótimo exato, rodar a linha de base em árvores, executar lotes e
ajustar as configurações.

Códigos de saída: 0 sucesso, 1 falha de verificação, 2 entrada inválida,
3 limite de recursos, 4 falha de leitura ou escrita.
"""
import argparse
import json
import logging
import os
import sys
from dataclasses import replace
from pathlib import Path
from typing import List, Optional

from colorama import Fore, Style, init as colorama_init

from pathagg import __version__
from pathagg.config import settings
from pathagg.core.aggregation import solve
from pathagg.core.errors import (
    BaselineError,
    InstanceFormatError,
    InvalidInstanceError,
    NotTreeInstanceError,
    PathAggError,
    SearchLimitError,
    TraceFormatError,
    TraceMismatchError,
)
from pathagg.core.generators import FAMILIES, GenSpec, generate
from pathagg.core.heavy_paths import (
    heavy_path_decomposition,
    is_tree_instance,
    root_path_crossings,
    solve_tree_instance,
)
from pathagg.core.instance import Instance, instance_digest, parse_instance, serialize_instance, validate_instance
from pathagg.core.oracle import SearchLimits, brute_force_opt
from pathagg.core.runner import rows_to_csv, run_batch
from pathagg.core.settings_manager import settings_manager
from pathagg.core.trace_io import dump_solution, dump_trace, load_solution, load_trace
from pathagg.core.verification import check_arborescence, check_trace, switching_costs
from pathagg.utils.bounds import (
    ceil_log2,
    exceeds_paper_bound,
    paper_switch_bound,
    safe_switch_bound,
)
from pathagg.utils.rendering import as_graphviz

# Configurar logging
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID_INPUT = 2
EXIT_RESOURCE_LIMIT = 3
EXIT_IO_ERROR = 4


def _ok(message: str) -> None:
    print(f"{Fore.GREEN}{message}{Style.RESET_ALL}")


def _fail(message: str) -> None:
    print(f"{Fore.RED}{message}{Style.RESET_ALL}")


def _write(path: str, data: bytes) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_bytes(data)
    logger.info(f"Arquivo gravado: {path}")


def _load_instance(path: str) -> Instance:
    instance = parse_instance(Path(path).read_bytes())
    logger.info(f"Instância carregada de {path}: n={instance.vertex_count}, m={len(instance.arcs)}, k={instance.k}")
    return instance


def parse_seed_range(text: str) -> range:
    """Converte 'A..B' (inclusivo) ou um único inteiro em um intervalo de sementes."""
    try:
        if ".." in text:
            start, stop = text.split("..", 1)
            seeds = range(int(start), int(stop) + 1)
        else:
            seeds = range(int(text), int(text) + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"Intervalo de sementes inválido: {text} (use A..B)")
    if not seeds:
        raise argparse.ArgumentTypeError(f"Intervalo de sementes vazio: {text}")
    return seeds


def _spec_from_args(args: argparse.Namespace, seed: Optional[int] = None) -> GenSpec:
    return GenSpec(
        family=args.family,
        depth=args.depth,
        n=args.n,
        k=args.k,
        layers=args.layers,
        extra_arcs=args.extra_arcs,
        max_parallel=args.max_parallel,
        seed=settings.DEFAULT_SEED if seed is None else seed,
    )


def _summary_line(inst: Instance, iterations: int, max_switching: int) -> str:
    return (
        f"n={inst.vertex_count} m={len(inst.arcs)} k={inst.k} iterações={iterations} "
        f"trocas={max_switching} limite_seguro={safe_switch_bound(inst.k)} "
        f"2·log_(4/3) k={paper_switch_bound(inst.k):.3f}"
    )


def cmd_generate(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args, args.seed)
    try:
        instance = generate(spec)
    except ValueError as e:
        _fail(f"Parâmetros inválidos: {str(e)}")
        return EXIT_INVALID_INPUT

    out = args.out or os.path.join(settings.INSTANCES_DIR, f"{spec.instance_id}.json")
    _write(out, serialize_instance(instance))
    print(f"{spec.instance_id}: n={instance.vertex_count} m={len(instance.arcs)} k={instance.k} -> {out}")
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    instance = _load_instance(args.instance)
    solution, trace = solve(instance)

    out = args.out or os.path.join(settings.RUNS_DIR, f"{Path(args.instance).stem}.solution.json")
    _write(out, dump_solution(solution))
    if args.trace:
        _write(args.trace, dump_trace(trace))
    if args.dot:
        _write(args.dot, as_graphviz(instance, solution).encode("utf-8"))

    print(_summary_line(instance, solution.iterations, solution.max_switching))
    if exceeds_paper_bound(solution.max_switching, instance.k):
        logger.warning("Custo máximo acima de 2·log_(4/3) k")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    instance = _load_instance(args.instance)
    solution = load_solution(Path(args.solution).read_bytes())
    digest = instance_digest(instance)
    if solution.instance_digest != digest:
        raise TraceMismatchError(f"Solução de {solution.instance_digest[:12]} não corresponde à instância {digest[:12]}")

    report = {"instance_sha256": digest}
    arborescence = check_arborescence(solution, instance)
    report["arborescence"] = arborescence.to_dict()
    passed = arborescence.ok

    if arborescence.ok:
        costs = switching_costs(solution, instance)
        claimed = {t: solution.switching_costs.get(t) for t in instance.terminals}
        report["max_switching"] = costs.max_cost
        report["costs_match"] = claimed == dict(costs.costs) and solution.max_switching == costs.max_cost
        report["within_safe_bound"] = costs.max_cost <= safe_switch_bound(instance.k)
        passed = passed and report["costs_match"] and report["within_safe_bound"]

    if args.trace:
        invariants = check_trace(load_trace(Path(args.trace).read_bytes()), instance)
        report["invariants"] = invariants.to_dict()
        passed = passed and invariants.ok

    report["ok"] = passed
    text = json.dumps(report, indent=2, ensure_ascii=False)
    if args.report:
        _write(args.report, (text + "\n").encode("utf-8"))
    else:
        print(text)

    if passed:
        _ok("Verificação aprovada")
        return EXIT_OK
    _fail("Verificação reprovada")
    return EXIT_VERIFY_FAILED


def cmd_oracle(args: argparse.Namespace) -> int:
    instance = _load_instance(args.instance)
    limits = SearchLimits(args.max_states) if args.max_states else SearchLimits()
    result = brute_force_opt(instance, limits)
    if args.out:
        _write(args.out, dump_solution(result.witness))
    print(f"ótimo={result.optimum} espaço={result.search_space} exploradas={result.explored}")
    return EXIT_OK


def cmd_baseline(args: argparse.Namespace) -> int:
    instance = _load_instance(args.instance)
    report = validate_instance(instance)
    if not report.ok:
        raise InvalidInstanceError(report)
    tree = is_tree_instance(instance)
    if tree is None:
        raise NotTreeInstanceError("is_tree_instance rejeitou a instância: o grafo não é uma árvore dirigida para a raiz")

    decomposition = heavy_path_decomposition(tree)
    solution = solve_tree_instance(instance, tree, decomposition)
    crossings = root_path_crossings(tree, decomposition)
    if args.out:
        _write(args.out, dump_solution(solution))
    print(
        f"caminhos_pesados={len(decomposition.paths)} cruzamentos_max={max(crossings.values(), default=0)} "
        f"trocas={solution.max_switching} ⌈log2 n⌉={ceil_log2(instance.vertex_count)}"
    )
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    template = _spec_from_args(args, 0)
    try:
        generate(replace(template, seed=args.seeds[0]))
    except ValueError as e:
        _fail(f"Parâmetros inválidos: {str(e)}")
        return EXIT_INVALID_INPUT

    result = run_batch(
        template,
        args.seeds,
        jobs=args.jobs,
        check_invariants=args.check_trace,
        with_oracle=args.with_oracle,
    )
    csv_text = rows_to_csv(result["rows"])
    if args.out:
        _write(args.out, csv_text.encode("utf-8"))
    else:
        sys.stdout.write(csv_text)

    if result["failures"]:
        _fail(f"{result['summary']} (primeira falha: {result['failures'][0].instance_id})")
        return EXIT_VERIFY_FAILED
    _ok(result["summary"])
    return EXIT_OK


def cmd_config(args: argparse.Namespace) -> int:
    updaters = {
        "PATHAGG_SEED": settings_manager.update_default_seed,
        "ORACLE_MAX_STATES": settings_manager.update_oracle_limit,
        "BENCH_JOBS": settings_manager.update_bench_jobs,
    }
    for assignment in args.set or []:
        key, _, value = assignment.partition("=")
        if key not in updaters:
            _fail(f"Configuração desconhecida: {key}. Use uma de {', '.join(updaters)}")
            return EXIT_INVALID_INPUT
        try:
            accepted = updaters[key](int(value))
        except ValueError:
            accepted = False
        if not accepted:
            _fail(f"Valor rejeitado para {key}: {value}")
            return EXIT_INVALID_INPUT

    for key, value in settings_manager.get_current_settings().items():
        print(f"{key}={value}")
    return EXIT_OK


def _add_family_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", choices=FAMILIES, required=True, help="Família de instâncias")
    parser.add_argument("--depth", type=int, default=2, help="Profundidade (lb-tree)")
    parser.add_argument("--n", type=int, default=50, help="Número de vértices")
    parser.add_argument("--k", type=int, default=10, help="Número de terminais")
    parser.add_argument("--layers", type=int, default=8, help="Máximo de vértices intermediários por caminho")
    parser.add_argument("--extra-arcs", type=int, default=0, help="Arcos-isca (planted-dag)")
    parser.add_argument("--max-parallel", type=int, default=4, help="Cópias por arco da árvore (rand-tree)")


def create_parser() -> argparse.ArgumentParser:
    """
    Cria o parser de argumentos com todos os subcomandos.

    Returns:
        argparse.ArgumentParser configurado
    """
    parser = argparse.ArgumentParser(prog=settings.APP_NAME, description=settings.APP_DESCRIPTION)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    generate_parser = commands.add_parser("generate", help="Gerar uma instância")
    _add_family_flags(generate_parser)
    generate_parser.add_argument("--seed", type=int, default=None, help="Semente (padrão: PATHAGG_SEED)")
    generate_parser.add_argument("--out", help="Arquivo de saída")
    generate_parser.set_defaults(handler=cmd_generate)

    solve_parser = commands.add_parser("solve", help="Resolver uma instância")
    solve_parser.add_argument("instance", help="Arquivo de instância")
    solve_parser.add_argument("--out", help="Arquivo da solução")
    solve_parser.add_argument("--trace", help="Arquivo do traço (JSON Lines)")
    solve_parser.add_argument("--dot", help="Arquivo graphviz da solução")
    solve_parser.set_defaults(handler=cmd_solve)

    verify_parser = commands.add_parser("verify", help="Verificar uma solução (e opcionalmente o traço)")
    verify_parser.add_argument("instance", help="Arquivo de instância")
    verify_parser.add_argument("solution", help="Arquivo da solução")
    verify_parser.add_argument("--trace", help="Arquivo do traço")
    verify_parser.add_argument("--report", help="Arquivo do relatório JSON")
    verify_parser.set_defaults(handler=cmd_verify)

    oracle_parser = commands.add_parser("oracle", help="Calcular o ótimo por força bruta")
    oracle_parser.add_argument("instance", help="Arquivo de instância")
    oracle_parser.add_argument("--max-states", type=int, default=None, help="Limite do espaço de busca")
    oracle_parser.add_argument("--out", help="Arquivo da solução testemunha")
    oracle_parser.set_defaults(handler=cmd_oracle)

    baseline_parser = commands.add_parser("baseline", help="Linha de base por caminhos pesados (somente árvores)")
    baseline_parser.add_argument("instance", help="Arquivo de instância")
    baseline_parser.add_argument("--out", help="Arquivo da solução")
    baseline_parser.set_defaults(handler=cmd_baseline)

    bench_parser = commands.add_parser("bench", help="Executar uma família para várias sementes")
    _add_family_flags(bench_parser)
    bench_parser.add_argument("--seeds", type=parse_seed_range, default=range(0, 1), help="Intervalo A..B")
    bench_parser.add_argument("--jobs", type=int, default=None, help="Número de processos (padrão: BENCH_JOBS)")
    bench_parser.add_argument("--out", help="Arquivo CSV (padrão: saída padrão)")
    bench_parser.add_argument("--check-trace", action="store_true", help="Verificar o traço de cada execução")
    bench_parser.add_argument("--with-oracle", action="store_true", help="Calcular o ótimo quando possível")
    bench_parser.set_defaults(handler=cmd_bench)

    config_parser = commands.add_parser("config", help="Mostrar ou alterar configurações")
    config_parser.add_argument("--set", action="append", metavar="KEY=VALUE", help="Alterar e salvar no .env")
    config_parser.set_defaults(handler=cmd_config)

    return parser


def launch_app(argv: Optional[List[str]] = None) -> int:
    """
    Executa um comando e devolve o código de saída.

    Args:
        argv: Argumentos (padrão: sys.argv[1:])

    Returns:
        int: Código de saída
    """
    colorama_init()
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INVALID_INPUT

    try:
        return args.handler(args)
    except SearchLimitError as e:
        logger.error(str(e))
        _fail(f"Recusado: {str(e)}")
        return EXIT_RESOURCE_LIMIT
    except InvalidInstanceError as e:
        logger.error(str(e))
        for violation in e.report.violations:
            _fail(f"[{violation.rule}] {violation.message}")
        return EXIT_INVALID_INPUT
    except (InstanceFormatError, TraceFormatError, TraceMismatchError, NotTreeInstanceError, BaselineError) as e:
        logger.error(str(e))
        _fail(str(e))
        return EXIT_INVALID_INPUT
    except PathAggError as e:
        logger.error(f"Erro interno: {str(e)}")
        _fail(str(e))
        return EXIT_VERIFY_FAILED
    except OSError as e:
        logger.error(f"Erro de leitura ou escrita: {str(e)}")
        _fail(str(e))
        return EXIT_IO_ERROR
