"""
Leitura e escrita de traços (JSON Lines) e de soluções (JSON).

Cada linha do traço é um registro de iteração; a última linha é o registro
da solução, que leva o hash da instância. Campos em ordem fixa e separadores
compactos tornam a saída estável byte a byte para a mesma entrada.
"""
import json
import logging
from typing import Annotated, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError

from pathagg.core.aggregation import IterationRecord, Solution, Trace
from pathagg.core.errors import TraceFormatError

# Configurar logging
logger = logging.getLogger(__name__)


class IterationDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    record: Literal["iteration"]
    iteration: int = Field(ge=1)
    active_before: List[int]
    prefix_before: Dict[int, int]
    prefix_after: Dict[int, int]
    dependency_edges: List[Tuple[int, int]]
    coloring: Dict[int, int]
    selected: List[int]
    reaches_root: Optional[int]
    arcs_added: List[int]
    arcs_removed: List[int]
    active_after: List[int]


class SolutionDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    record: Literal["solution"] = "solution"
    instance_sha256: str
    arcs: List[int]
    iterations: int = Field(ge=0)
    switching_costs: Dict[int, int]
    max_switching: int = Field(ge=0)


TraceLine = TypeAdapter(
    Annotated[Union[IterationDocument, SolutionDocument], Field(discriminator="record")]
)


def _int_map(mapping) -> Dict[str, int]:
    return {str(key): mapping[key] for key in sorted(mapping)}


def _record_payload(record: IterationRecord) -> dict:
    return {
        "record": "iteration",
        "iteration": record.iteration,
        "active_before": list(record.active_before),
        "prefix_before": _int_map(record.prefix_before),
        "prefix_after": _int_map(record.prefix_after),
        "dependency_edges": [list(edge) for edge in record.dependency_edges],
        "coloring": _int_map(record.coloring),
        "selected": list(record.selected),
        "reaches_root": record.reaches_root,
        "arcs_added": list(record.arcs_added),
        "arcs_removed": list(record.arcs_removed),
        "active_after": list(record.active_after),
    }


def _solution_payload(solution: Solution) -> dict:
    return {
        "record": "solution",
        "instance_sha256": solution.instance_digest,
        "arcs": list(solution.arcs),
        "iterations": solution.iterations,
        "switching_costs": _int_map(solution.switching_costs),
        "max_switching": solution.max_switching,
    }


def _compact(payload: dict) -> str:
    return json.dumps(payload, separators=(",", ":"))


def _to_record(doc: IterationDocument) -> IterationRecord:
    return IterationRecord(
        iteration=doc.iteration,
        active_before=tuple(doc.active_before),
        prefix_before=dict(doc.prefix_before),
        prefix_after=dict(doc.prefix_after),
        dependency_edges=tuple(tuple(edge) for edge in doc.dependency_edges),
        coloring=dict(doc.coloring),
        selected=tuple(doc.selected),
        reaches_root=doc.reaches_root,
        arcs_added=tuple(doc.arcs_added),
        arcs_removed=tuple(doc.arcs_removed),
        active_after=tuple(doc.active_after),
    )


def _to_solution(doc: SolutionDocument) -> Solution:
    return Solution(
        arcs=tuple(doc.arcs),
        iterations=doc.iterations,
        switching_costs=dict(doc.switching_costs),
        max_switching=doc.max_switching,
        instance_digest=doc.instance_sha256,
    )


def dump_trace(trace: Trace) -> bytes:
    """Serializa o traço: um registro por linha, terminando pelo registro da solução."""
    lines = [_compact(_record_payload(record)) for record in trace.records]
    lines.append(_compact(_solution_payload(trace.solution)))
    return ("\n".join(lines) + "\n").encode("utf-8")


def load_trace(data: Union[bytes, str]) -> Trace:
    """
    Lê um traço JSON Lines.

    Args:
        data: Conteúdo do arquivo de traço

    Returns:
        Trace com registros e solução

    Raises:
        TraceFormatError: linha malformada, registro desconhecido ou solução ausente
    """
    try:
        text = data.decode("utf-8") if isinstance(data, bytes) else data
    except UnicodeDecodeError as e:
        raise TraceFormatError(f"Traço não está em UTF-8: {e.reason} na posição {e.start}") from e
    records: List[IterationRecord] = []
    solution: Optional[Solution] = None

    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        if solution is not None:
            raise TraceFormatError(f"Linha {number} após o registro da solução")
        try:
            doc = TraceLine.validate_json(line)
        except ValidationError as e:
            raise TraceFormatError(f"Linha {number} do traço inválida: {e.errors()[0]['msg']}") from e
        if isinstance(doc, SolutionDocument):
            solution = _to_solution(doc)
        else:
            records.append(_to_record(doc))

    if solution is None:
        raise TraceFormatError("Traço sem registro de solução")
    logger.debug(f"Traço carregado com {len(records)} iterações")
    return Trace(solution.instance_digest, tuple(records), solution)


def dump_solution(solution: Solution) -> bytes:
    """Documento de solução; mesmo conteúdo do registro final do traço."""
    return (json.dumps(_solution_payload(solution), indent=2) + "\n").encode("utf-8")


def load_solution(data: Union[bytes, str]) -> Solution:
    """
    Lê um documento de solução.

    Raises:
        TraceFormatError: documento malformado
    """
    try:
        if isinstance(data, bytes):
            data = data.decode("utf-8")
        doc = SolutionDocument.model_validate_json(data)
    except ValidationError as e:
        raise TraceFormatError(f"Documento de solução inválido: {e.errors()[0]['msg']}") from e
    except UnicodeDecodeError as e:
        raise TraceFormatError(f"Documento de solução não está em UTF-8: {e.reason}") from e
    return _to_solution(doc)
