"""
Modelo de dados das instâncias de agregação de caminhos

Este módulo define o multigrafo dirigido colorido com raiz, terminais e
caminhos propostos monocromáticos, a validação das invariantes, o reparo
explícito de passeios com laços e o formato de arquivo (JSON legível).
"""
import hashlib
import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from pathagg.core.errors import InstanceFormatError, WalkError

# Configurar logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Arc:
    """Arco colorido; `color` é o índice do token no vocabulário da instância."""

    tail: int
    head: int
    color: int


@dataclass(frozen=True)
class Instance:
    """
    Instância imutável do problema.

    Vértices e arcos são índices densos; os caminhos propostos são listas de ids
    de arcos, já que arcos paralelos tornam listas de vértices ambíguas.
    """

    vertex_count: int
    root: int
    arcs: Tuple[Arc, ...]
    terminals: Tuple[int, ...]
    proposed_paths: Mapping[int, Tuple[int, ...]] = field(hash=False)
    colors: Tuple[str, ...] = ()

    @classmethod
    def from_arcs(
        cls,
        vertex_count: int,
        root: int,
        arcs: Sequence[Tuple[int, int, str]],
        paths: Mapping[int, Sequence[int]],
        terminals: Optional[Sequence[int]] = None,
    ) -> "Instance":
        """
        Constrói uma instância a partir de triplas (cauda, cabeça, token de cor).

        Args:
            vertex_count: Número de vértices
            root: Vértice raiz
            arcs: Arcos na ordem dos ids
            paths: Mapa terminal -> ids de arcos do caminho proposto
            terminals: Ordem dos terminais (padrão: ordem das chaves de `paths`)

        Returns:
            Instance com as cores internadas por ordem de primeira aparição
        """
        palette: Dict[str, int] = {}
        interned = []
        for tail, head, token in arcs:
            color = palette.setdefault(token, len(palette))
            interned.append(Arc(tail, head, color))
        order = tuple(terminals) if terminals is not None else tuple(paths)
        return cls(
            vertex_count=vertex_count,
            root=root,
            arcs=tuple(interned),
            terminals=order,
            proposed_paths={v: tuple(p) for v, p in paths.items()},
            colors=tuple(palette),
        )

    @property
    def k(self) -> int:
        return len(self.terminals)

    def color_name(self, arc_id: int) -> str:
        return self.colors[self.arcs[arc_id].color]

    @cached_property
    def _out_arcs(self) -> Dict[int, Tuple[int, ...]]:
        adjacency: Dict[int, List[int]] = {}
        for arc_id, arc in enumerate(self.arcs):
            adjacency.setdefault(arc.tail, []).append(arc_id)
        return {tail: tuple(ids) for tail, ids in adjacency.items()}

    def out_arcs(self, vertex: int) -> Tuple[int, ...]:
        """Ids dos arcos que saem de `vertex`, em ordem crescente."""
        return self._out_arcs.get(vertex, ())

    @cached_property
    def _path_vertices(self) -> Dict[int, Tuple[int, ...]]:
        sequences = {}
        for terminal, path in self.proposed_paths.items():
            if path:
                sequences[terminal] = (self.arcs[path[0]].tail,) + tuple(
                    self.arcs[a].head for a in path
                )
            else:
                sequences[terminal] = (terminal,)
        return sequences

    def path_vertices(self, terminal: int) -> Tuple[int, ...]:
        """Sequência de vértices v ... r do caminho proposto de `terminal`."""
        return self._path_vertices[terminal]


@dataclass(frozen=True)
class Violation:
    rule: str
    message: str
    ids: Tuple[int, ...] = ()


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def rules(self) -> List[str]:
        return [v.rule for v in self.violations]


def validate_instance(inst: Instance) -> ValidationReport:
    """
    Verifica todas as invariantes de uma instância.

    Opera sobre dados não confiáveis: nunca lança exceção e enumera todas as
    regras violadas, não apenas a primeira.

    Args:
        inst: Instância a verificar

    Returns:
        ValidationReport com as violações encontradas
    """
    violations: List[Violation] = []

    def report(rule: str, message: str, *ids: int) -> None:
        violations.append(Violation(rule, message, tuple(ids)))

    n = inst.vertex_count
    m = len(inst.arcs)

    def in_range(vertex: int) -> bool:
        return 0 <= vertex < n

    if not in_range(inst.root):
        report("vertex-range", f"Raiz {inst.root} fora do intervalo 0..{n - 1}", inst.root)

    for arc_id, arc in enumerate(inst.arcs):
        if not (in_range(arc.tail) and in_range(arc.head)):
            report("vertex-range", f"Arco {arc_id} com extremidade fora do intervalo", arc_id)
        if arc.tail == arc.head:
            report("self-loop", f"Arco {arc_id} é um laço em {arc.tail}", arc_id)

    seen = set()
    for terminal in inst.terminals:
        if not in_range(terminal):
            report("vertex-range", f"Terminal {terminal} fora do intervalo", terminal)
        if terminal == inst.root:
            report("root-terminal", f"A raiz {terminal} não pode ser terminal", terminal)
        if terminal in seen:
            report("duplicate-terminal", f"Terminal {terminal} repetido", terminal)
        seen.add(terminal)

    for terminal in dict.fromkeys(inst.terminals):
        if terminal not in inst.proposed_paths:
            report("missing-path", f"Terminal {terminal} sem caminho proposto", terminal)
    for owner in inst.proposed_paths:
        if owner not in seen:
            report("orphan-path", f"Caminho proposto para o não terminal {owner}", owner)

    for terminal in dict.fromkeys(inst.terminals):
        path = inst.proposed_paths.get(terminal)
        if path is None:
            continue
        dangling = [a for a in path if not 0 <= a < m]
        if dangling:
            report("dangling-arc", f"Caminho de {terminal} cita arcos inexistentes", terminal, *dangling)
            continue
        if not path:
            report("path-endpoints", f"Caminho de {terminal} é vazio", terminal)
            continue

        arcs = [inst.arcs[a] for a in path]
        if arcs[0].tail != terminal or arcs[-1].head != inst.root:
            report(
                "path-endpoints",
                f"Caminho de {terminal} vai de {arcs[0].tail} a {arcs[-1].head}, esperado {terminal} a {inst.root}",
                terminal,
            )
        for position in range(len(arcs) - 1):
            if arcs[position].head != arcs[position + 1].tail:
                report(
                    "discontiguous-path",
                    f"Caminho de {terminal} quebra entre os arcos {path[position]} e {path[position + 1]}",
                    terminal, path[position], path[position + 1],
                )
        if len({arc.color for arc in arcs}) > 1:
            report("non-monochromatic-path", f"Caminho de {terminal} mistura cores", terminal)

        vertices = [arcs[0].tail] + [arc.head for arc in arcs]
        repeated = sorted(v for v, times in Counter(vertices).items() if times > 1)
        if repeated:
            report("non-simple-path", f"Caminho de {terminal} revisita vértices {repeated}", terminal, *repeated)

    if violations:
        logger.debug(f"Validação encontrou {len(violations)} violações")
    return ValidationReport(tuple(violations))


def simplify_walk(walk: Sequence[int], inst: Instance) -> List[int]:
    """
    Remove os laços de um passeio monocromático até a raiz.

    Percorre da esquerda para a direita; ao revisitar um vértice, descarta o
    trecho de ciclo desde a visita anterior.

    Args:
        walk: Ids de arcos do passeio
        inst: Instância que define os arcos

    Returns:
        Lista de ids de arcos de um caminho simples com as mesmas extremidades
    """
    if not walk:
        return []
    if any(not 0 <= a < len(inst.arcs) for a in walk):
        raise WalkError("Passeio cita arcos inexistentes")

    arcs = [inst.arcs[a] for a in walk]
    for previous, current in zip(arcs, arcs[1:]):
        if previous.head != current.tail:
            raise WalkError("Passeio não contíguo")
    if len({arc.color for arc in arcs}) > 1:
        raise WalkError("Passeio não monocromático")
    if arcs[-1].head != inst.root:
        raise WalkError(f"Passeio termina em {arcs[-1].head}, não na raiz {inst.root}")

    kept: List[int] = []
    order = [arcs[0].tail]
    position = {arcs[0].tail: 0}
    for arc_id, arc in zip(walk, arcs):
        if arc.head in position:
            cut = position[arc.head]
            for vertex in order[cut + 1:]:
                del position[vertex]
            del order[cut + 1:]
            del kept[cut:]
        else:
            kept.append(arc_id)
            order.append(arc.head)
            position[arc.head] = len(order) - 1
    return kept


# Esquema do documento de instância

class ArcDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: int = Field(ge=0)
    tail: int = Field(ge=0)
    head: int = Field(ge=0)
    color: str

    @model_validator(mode="after")
    def _reject_self_loop(self) -> "ArcDocument":
        if self.tail == self.head:
            raise ValueError(f"arco {self.id} é um laço em {self.tail}")
        return self


class InstanceDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    vertices: int = Field(ge=0)
    root: int = Field(ge=0)
    arcs: List[ArcDocument]
    terminals: List[int]
    paths: Dict[int, List[int]]


def parse_instance(data: Union[bytes, str]) -> Instance:
    """
    Lê um documento de instância.

    Args:
        data: Conteúdo do arquivo (UTF-8)

    Returns:
        Instance correspondente

    Raises:
        InstanceFormatError: documento malformado, campo desconhecido ou id pendente
    """
    try:
        if isinstance(data, bytes):
            data = data.decode("utf-8")
        doc = InstanceDocument.model_validate_json(data)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise InstanceFormatError(
            f"Documento de instância malformado ({e.error_count()} erros; {location}: {first['msg']})"
        ) from e
    except UnicodeDecodeError as e:
        raise InstanceFormatError(f"Documento de instância não está em UTF-8: {e.reason}") from e

    n = doc.vertices
    problems = []
    if doc.root >= n:
        problems.append(f"raiz {doc.root}")
    for position, arc in enumerate(doc.arcs):
        if arc.id != position:
            problems.append(f"arco na posição {position} com id {arc.id}")
        if arc.tail >= n or arc.head >= n:
            problems.append(f"arco {arc.id} com vértice inexistente")
    problems.extend(f"terminal {t}" for t in doc.terminals if not 0 <= t < n)
    for terminal, path in doc.paths.items():
        problems.extend(f"arco {a} no caminho de {terminal}" for a in path if not 0 <= a < len(doc.arcs))
    if problems:
        raise InstanceFormatError(f"Ids pendentes no documento: {'; '.join(problems[:5])}")

    return Instance.from_arcs(
        vertex_count=n,
        root=doc.root,
        arcs=[(arc.tail, arc.head, arc.color) for arc in doc.arcs],
        paths=doc.paths,
        terminals=doc.terminals,
    )


def serialize_instance(inst: Instance) -> bytes:
    """
    Escreve a instância no formato de arquivo (um arco por linha, ordem fixa de campos).

    Args:
        inst: Instância a serializar

    Returns:
        Documento JSON em UTF-8
    """
    def dump(value) -> str:
        return json.dumps(value, ensure_ascii=False)

    lines = ["{", f'  "vertices": {inst.vertex_count},', f'  "root": {inst.root},']

    arc_lines = [
        f'    {{"id": {arc_id}, "tail": {arc.tail}, "head": {arc.head}, "color": {dump(inst.colors[arc.color])}}}'
        for arc_id, arc in enumerate(inst.arcs)
    ]
    lines.append('  "arcs": [' if arc_lines else '  "arcs": [],')
    if arc_lines:
        lines.append(",\n".join(arc_lines))
        lines.append("  ],")

    lines.append(f'  "terminals": {dump(list(inst.terminals))},')

    owners = list(dict.fromkeys(list(inst.terminals) + list(inst.proposed_paths)))
    path_lines = [
        f'    "{owner}": {dump(list(inst.proposed_paths[owner]))}'
        for owner in owners
        if owner in inst.proposed_paths
    ]
    if path_lines:
        lines.append('  "paths": {')
        lines.append(",\n".join(path_lines))
        lines.append("  }")
    else:
        lines.append('  "paths": {}')
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def instance_digest(inst: Instance) -> str:
    """Hash SHA-256 do documento serializado; identifica a instância em traços e soluções."""
    return hashlib.sha256(serialize_instance(inst)).hexdigest()
