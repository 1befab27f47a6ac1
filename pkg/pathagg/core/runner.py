"""
Execução de lotes de instâncias e resumo por execução.

Cada semente gera uma instância, resolve, verifica a arborescência e (opcionalmente)
o traço e o ótimo do oráculo. Lotes podem rodar em vários processos; a ordem
das linhas no CSV segue sempre a ordem das sementes.
"""
import csv
import io
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields, replace
from typing import Any, Dict, Iterable, List, Optional, Tuple

from tqdm import tqdm

from pathagg.config import settings
from pathagg.core.aggregation import solve
from pathagg.core.errors import SearchLimitError
from pathagg.core.generators import GenSpec, generate
from pathagg.core.oracle import SearchLimits, brute_force_opt
from pathagg.core.verification import check_arborescence, check_trace
from pathagg.utils.bounds import exceeds_paper_bound, paper_switch_bound, safe_switch_bound

# Configurar logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunSummary:
    instance_id: str
    family: str
    seed: int
    n: int
    m: int
    k: int
    iterations: int
    max_switching: int
    paper_bound: float
    safe_bound: int
    exceeds_paper_bound: bool
    arborescence_ok: bool
    invariants_ok: Optional[bool]
    oracle_optimum: Optional[int]
    wall_time: float

    @property
    def violates_safe_bound(self) -> bool:
        return self.max_switching > self.safe_bound

    @property
    def failed(self) -> bool:
        return self.violates_safe_bound or not self.arborescence_ok or self.invariants_ok is False


CSV_COLUMNS = [f.name for f in fields(RunSummary)]


def run_instance(spec: GenSpec, check_invariants: bool = False, with_oracle: bool = False) -> RunSummary:
    """
    Gera, resolve e verifica uma instância.

    Args:
        spec: Parâmetros da instância
        check_invariants: Se True, reproduz o traço e verifica as condições por iteração
        with_oracle: Se True, calcula o ótimo quando o espaço de busca permitir

    Returns:
        RunSummary da execução
    """
    inst = generate(spec)
    started = time.perf_counter()
    solution, trace = solve(inst)
    wall_time = time.perf_counter() - started

    invariants_ok = check_trace(trace, inst).ok if check_invariants else None

    optimum = None
    if with_oracle:
        try:
            optimum = brute_force_opt(inst, SearchLimits()).optimum
        except SearchLimitError as e:
            logger.debug(f"Oráculo ignorado para {spec.instance_id}: {str(e)}")

    if wall_time > settings.BENCH_TIME_BUDGET:
        logger.warning(f"{spec.instance_id} levou {wall_time:.2f}s (orçamento {settings.BENCH_TIME_BUDGET}s)")

    return RunSummary(
        instance_id=spec.instance_id,
        family=spec.family,
        seed=spec.seed,
        n=inst.vertex_count,
        m=len(inst.arcs),
        k=inst.k,
        iterations=solution.iterations,
        max_switching=solution.max_switching,
        paper_bound=paper_switch_bound(inst.k),
        safe_bound=safe_switch_bound(inst.k),
        exceeds_paper_bound=exceeds_paper_bound(solution.max_switching, inst.k),
        arborescence_ok=check_arborescence(solution, inst).ok,
        invariants_ok=invariants_ok,
        oracle_optimum=optimum,
        wall_time=wall_time,
    )


def _run_job(job: Tuple[GenSpec, bool, bool]) -> RunSummary:
    spec, check_invariants, with_oracle = job
    return run_instance(spec, check_invariants, with_oracle)


def run_batch(
    template: GenSpec,
    seeds: Iterable[int],
    jobs: Optional[int] = None,
    check_invariants: bool = False,
    with_oracle: bool = False,
) -> Dict[str, Any]:
    """
    Executa uma família para várias sementes.

    Args:
        template: Parâmetros comuns; a semente é substituída por cada valor de `seeds`
        seeds: Sementes a executar
        jobs: Número de processos (padrão: BENCH_JOBS)
        check_invariants: Verificar o traço de cada execução
        with_oracle: Calcular o ótimo quando possível

    Returns:
        Dict com as linhas, contagens de falhas e um resumo textual
    """
    jobs = jobs or settings.BENCH_JOBS
    work = [(replace(template, seed=seed), check_invariants, with_oracle) for seed in seeds]
    logger.info(f"Executando {len(work)} instâncias da família {template.family} com {jobs} processos")

    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            rows = list(tqdm(executor.map(_run_job, work), total=len(work), desc=template.family))
    else:
        rows = [_run_job(job) for job in tqdm(work, desc=template.family)]

    failures = [row for row in rows if row.failed]
    exceeded = sum(1 for row in rows if row.exceeds_paper_bound)
    summary = (
        f"{len(rows)} instâncias; custo máximo {max((r.max_switching for r in rows), default=0)}; "
        f"{len(failures)} falhas; {exceeded} acima de 2·log_(4/3) k"
    )
    logger.info(summary)
    return {"rows": rows, "failures": failures, "paper_exceed_count": exceeded, "summary": summary}


def rows_to_csv(rows: List[RunSummary]) -> str:
    """CSV com uma linha por execução, colunas na ordem de RunSummary."""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        record = asdict(row)
        record["paper_bound"] = f"{row.paper_bound:.3f}"
        record["wall_time"] = f"{row.wall_time:.6f}"
        writer.writerow({key: "" if value is None else value for key, value in record.items()})
    return buffer.getvalue()
