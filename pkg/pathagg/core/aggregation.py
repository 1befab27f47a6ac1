"""
Agregação de caminhos (resolvedor principal)

Este módulo mantém uma ramificação B, um conjunto de representantes ativos S
e, para cada ativo, o comprimento do seu caminho ativo. Em cada iteração:

1. estende os caminhos ativos a prefixos disjuntos maximais (ordem crescente de id);
2. monta o grafo de dependências entre os prefixos bloqueados;
3. escolhe a maior classe de uma 3-coloração desse grafo;
4. estende cada escolhido por um arco, juntando-o a outro prefixo;
5. funde os prefixos em B, removendo os arcos antigos que saem de vértices dos prefixos.

Cada iteração produz um IterationRecord; o traço completo permite reproduzir
e verificar as invariantes de forma independente.
"""
import logging
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from pathagg.core.coloring import Coloring, SparseGraph, largest_color_class, three_color
from pathagg.core.errors import InvalidInstanceError, SolverInvariantError
from pathagg.core.instance import Instance, instance_digest, validate_instance
from pathagg.utils.bounds import exceeds_paper_bound, safe_iteration_bound

# Configurar logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Branching:
    """Arco de saída de cada vértice (no máximo um, garantido pelo mapa)."""

    out_arc: Mapping[int, int] = field(default_factory=dict, hash=False)

    def arcs(self) -> Tuple[int, ...]:
        return tuple(sorted(self.out_arc.values()))


@dataclass(frozen=True)
class AlgorithmState:
    branching: Branching
    active: Tuple[int, ...]
    active_prefix_len: Mapping[int, int] = field(hash=False)
    iteration: int = 0

    @classmethod
    def initial(cls, inst: Instance) -> "AlgorithmState":
        """S = R, B vazio e caminhos ativos de comprimento 0."""
        active = tuple(sorted(inst.terminals))
        return cls(Branching({}), active, {v: 0 for v in active}, 0)


@dataclass(frozen=True)
class Prefix:
    prefix_len: int
    extended: bool = False
    reaches_root: bool = False


@dataclass(frozen=True)
class PrefixSet:
    """
    Prefixos P'_v por ativo, mais o dono de cada vértice coberto.

    O mapa `owner` descreve os prefixos antes da extensão do passo 7; a cabeça
    do arco extra de um escolhido continua pertencendo ao prefixo em que ele entra.
    """

    entries: Mapping[int, Prefix] = field(hash=False)
    owner: Mapping[int, int] = field(hash=False)

    def __getitem__(self, terminal: int) -> Prefix:
        return self.entries[terminal]

    def lengths(self) -> Dict[int, int]:
        return {v: prefix.prefix_len for v, prefix in self.entries.items()}

    @property
    def selected(self) -> FrozenSet[int]:
        return frozenset(v for v, prefix in self.entries.items() if prefix.extended)

    @property
    def root_reacher(self) -> Optional[int]:
        reachers = [v for v, prefix in self.entries.items() if prefix.reaches_root]
        if len(reachers) > 1:
            raise SolverInvariantError(f"Mais de um prefixo alcança a raiz: {reachers}")
        return reachers[0] if reachers else None


@dataclass(frozen=True)
class DependencyGraph:
    """Arestas (u, w): o próximo vértice de P_u está em P'_w."""

    vertices: Tuple[int, ...]
    edges: Tuple[Tuple[int, int], ...]

    def undirected(self) -> SparseGraph:
        return SparseGraph.from_edges(self.vertices, self.edges)

    @cached_property
    def coloring(self) -> Coloring:
        return three_color(self.undirected())


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    active_before: Tuple[int, ...]
    prefix_before: Mapping[int, int] = field(hash=False)
    prefix_after: Mapping[int, int] = field(hash=False)
    dependency_edges: Tuple[Tuple[int, int], ...] = ()
    coloring: Mapping[int, int] = field(default_factory=dict, hash=False)
    selected: Tuple[int, ...] = ()
    reaches_root: Optional[int] = None
    arcs_added: Tuple[int, ...] = ()
    arcs_removed: Tuple[int, ...] = ()
    active_after: Tuple[int, ...] = ()


@dataclass(frozen=True)
class Solution:
    """Arborescência T (conjunto de arcos) e custos de troca por terminal."""

    arcs: Tuple[int, ...]
    iterations: int
    switching_costs: Mapping[int, int] = field(hash=False)
    max_switching: int = 0
    instance_digest: str = ""

    def out_arc_map(self, inst: Instance) -> Dict[int, int]:
        return {inst.arcs[a].tail: a for a in self.arcs}


@dataclass(frozen=True)
class Trace:
    instance_digest: str
    records: Tuple[IterationRecord, ...]
    solution: Solution


def terminals_without_root_path(branching: Branching, inst: Instance) -> List[int]:
    """
    Lista os terminais cuja cadeia de arcos de saída não termina na raiz.

    Raises:
        SolverInvariantError: se alguma cadeia entrar em ciclo
    """
    reaches: Dict[int, bool] = {inst.root: True}
    for terminal in inst.terminals:
        walk: List[int] = []
        on_walk = set()
        x = terminal
        while x not in reaches:
            if x in on_walk:
                raise SolverInvariantError(f"Ciclo na ramificação passando por {x}")
            on_walk.add(x)
            walk.append(x)
            arc_id = branching.out_arc.get(x)
            if arc_id is None:
                reaches[x] = False
                break
            x = inst.arcs[arc_id].head
        outcome = reaches[x]
        for vertex in walk:
            reaches[vertex] = outcome
    return [t for t in inst.terminals if not reaches[t]]


def root_switch_costs(out_arc: Mapping[int, int], inst: Instance) -> Dict[int, int]:
    """
    Número de trocas de cor no caminho de cada terminal até a raiz.

    Args:
        out_arc: Arco de saída por vértice (arborescência)
        inst: Instância

    Returns:
        Mapa terminal -> trocas de cor
    """
    # vértice -> (trocas até a raiz, cor do primeiro arco)
    memo: Dict[int, Tuple[int, Optional[int]]] = {inst.root: (0, None)}
    for terminal in inst.terminals:
        walk: List[int] = []
        x = terminal
        while x not in memo:
            arc_id = out_arc.get(x)
            if arc_id is None or len(walk) > inst.vertex_count:
                raise SolverInvariantError(f"Terminal {terminal} não alcança a raiz")
            walk.append(arc_id)
            x = inst.arcs[arc_id].head
        switches, color = memo[x]
        for arc_id in reversed(walk):
            arc = inst.arcs[arc_id]
            if color is not None and arc.color != color:
                switches += 1
            color = arc.color
            memo[arc.tail] = (switches, color)
    return {t: memo[t][0] for t in inst.terminals}


def extend_maximal_prefixes(state: AlgorithmState, inst: Instance) -> PrefixSet:
    """
    Estende gulosamente cada caminho ativo a um prefixo disjunto maximal.

    Os ativos são processados em ordem crescente; cada P'_v avança arco a arco
    enquanto o próximo vértice não pertence a outro caminho ativo nem a um
    prefixo já construído.

    Args:
        state: Estado atual (caminhos ativos disjuntos)
        inst: Instância

    Returns:
        PrefixSet disjunto e maximal, ainda sem extensões
    """
    owner: Dict[int, int] = {}
    for v in state.active:
        for x in inst.path_vertices(v)[: state.active_prefix_len[v] + 1]:
            owner[x] = v

    entries: Dict[int, Prefix] = {}
    for v in state.active:
        sequence = inst.path_vertices(v)
        length = state.active_prefix_len[v]
        while length + 1 < len(sequence) and sequence[length + 1] not in owner:
            length += 1
            owner[sequence[length]] = v
        entries[v] = Prefix(prefix_len=length, reaches_root=length == len(sequence) - 1)
    return PrefixSet(entries, owner)


def build_dependency_graph(p: PrefixSet, inst: Instance) -> DependencyGraph:
    """
    Monta o grafo de dependências dos prefixos bloqueados.

    O prefixo que alcança a raiz (se houver) fica fora do grafo, e as arestas
    que apontariam para ele são descartadas.

    Raises:
        SolverInvariantError: prefixo bloqueado por um vértice sem dono
    """
    reacher = p.root_reacher
    vertices = tuple(v for v in sorted(p.entries) if not p[v].reaches_root)
    edges = []
    for v in vertices:
        blocked_at = inst.path_vertices(v)[p[v].prefix_len + 1]
        blocker = p.owner.get(blocked_at)
        if blocker is None or blocker == v:
            raise SolverInvariantError(
                f"Prefixo de {v} parou em {blocked_at}, que não pertence a outro prefixo"
            )
        if blocker != reacher:
            edges.append((v, blocker))
    return DependencyGraph(vertices, tuple(edges))


def select_inactivation_set(h: DependencyGraph) -> FrozenSet[int]:
    """Maior classe da 3-coloração do grafo de dependências (S_H)."""
    return largest_color_class(h.coloring)


def extend_selected(p: PrefixSet, s_h: Iterable[int], inst: Instance) -> PrefixSet:
    """
    Estende cada prefixo escolhido por um arco, juntando-o a um prefixo não escolhido.

    Raises:
        SolverInvariantError: escolhido que alcança a raiz ou cujo novo vértice
            não está num prefixo não estendido
    """
    chosen = frozenset(s_h)
    if not chosen:
        return p

    entries = dict(p.entries)
    for v in sorted(chosen):
        prefix = entries[v]
        if prefix.reaches_root:
            raise SolverInvariantError(f"Prefixo de {v} já alcança a raiz e não pode ser estendido")
        target = inst.path_vertices(v)[prefix.prefix_len + 1]
        joined = p.owner.get(target)
        if joined is None or joined in chosen:
            raise SolverInvariantError(f"Extensão de {v} chega a {target}, fora de um prefixo não estendido")
        entries[v] = replace(prefix, prefix_len=prefix.prefix_len + 1, extended=True)
    return PrefixSet(entries, p.owner)


def prefix_arcs(p: PrefixSet, inst: Instance) -> List[int]:
    """A_P: todos os arcos de todos os prefixos."""
    arcs: List[int] = []
    for v, prefix in p.entries.items():
        arcs.extend(inst.proposed_paths[v][: prefix.prefix_len])
    return arcs


def prefix_vertices(p: PrefixSet, inst: Instance) -> set:
    vertices = set()
    for v, prefix in p.entries.items():
        vertices.update(inst.path_vertices(v)[: prefix.prefix_len + 1])
    return vertices


def merge_update(state: AlgorithmState, p: PrefixSet, inst: Instance) -> AlgorithmState:
    """
    Funde os prefixos na ramificação e atualiza os ativos.

    B' = B menos os arcos que saem de vértices dos prefixos; novo B = A_P ∪ B'.
    Os escolhidos deixam S; os demais ativos adotam P'_v como caminho ativo.

    Raises:
        SolverInvariantError: se algum vértice ficasse com grau de saída 2
    """
    out_arc = dict(state.branching.out_arc)
    for x in prefix_vertices(p, inst):
        out_arc.pop(x, None)
    for arc_id in prefix_arcs(p, inst):
        tail = inst.arcs[arc_id].tail
        if out_arc.get(tail, arc_id) != arc_id:
            raise SolverInvariantError(f"Vértice {tail} ficaria com dois arcos de saída")
        out_arc[tail] = arc_id

    survivors = tuple(v for v in state.active if not p[v].extended)
    return AlgorithmState(
        branching=Branching(out_arc),
        active=survivors,
        active_prefix_len={v: p[v].prefix_len for v in survivors},
        iteration=state.iteration + 1,
    )


def solve(inst: Instance) -> Tuple[Solution, Trace]:
    """
    Calcula uma arborescência em que todo terminal alcança a raiz com poucas trocas de cor.

    Args:
        inst: Instância válida

    Returns:
        Tupla (Solution, Trace)

    Raises:
        InvalidInstanceError: se a instância violar alguma invariante
        SolverInvariantError: se alguma contradição interna for detectada
    """
    report = validate_instance(inst)
    if not report.ok:
        raise InvalidInstanceError(report)

    digest = instance_digest(inst)
    limit = safe_iteration_bound(inst.k)
    state = AlgorithmState.initial(inst)
    records: List[IterationRecord] = []

    logger.info(f"Resolvendo instância com {inst.vertex_count} vértices, {len(inst.arcs)} arcos e {inst.k} terminais")

    while terminals_without_root_path(state.branching, inst):
        if state.iteration >= limit:
            raise SolverInvariantError(f"Iterações excederam o limite {limit} para k={inst.k}")

        prefixes = extend_maximal_prefixes(state, inst)
        dependencies = build_dependency_graph(prefixes, inst)
        s_h = select_inactivation_set(dependencies)
        extended = extend_selected(prefixes, s_h, inst)
        next_state = merge_update(state, extended, inst)

        before = set(state.branching.out_arc.values())
        after = set(next_state.branching.out_arc.values())
        records.append(IterationRecord(
            iteration=next_state.iteration,
            active_before=state.active,
            prefix_before=prefixes.lengths(),
            prefix_after=extended.lengths(),
            dependency_edges=dependencies.edges,
            coloring=dependencies.coloring,
            selected=tuple(sorted(s_h)),
            reaches_root=prefixes.root_reacher,
            arcs_added=tuple(sorted(after - before)),
            arcs_removed=tuple(sorted(before - after)),
            active_after=next_state.active,
        ))
        logger.debug(
            f"Iteração {next_state.iteration}: |S|={len(state.active)}, |V(H)|={len(dependencies.vertices)}, "
            f"|S_H|={len(s_h)}, arcos removidos={len(before - after)}"
        )
        state = next_state

    costs = root_switch_costs(state.branching.out_arc, inst)
    solution = Solution(
        arcs=state.branching.arcs(),
        iterations=state.iteration,
        switching_costs=costs,
        max_switching=max(costs.values(), default=0),
        instance_digest=digest,
    )

    if solution.max_switching > 2 * solution.iterations:
        logger.warning(
            f"Custo máximo {solution.max_switching} acima de 2 x {solution.iterations} iterações"
        )
    if exceeds_paper_bound(solution.max_switching, inst.k):
        logger.warning(f"Custo máximo {solution.max_switching} acima de 2·log_(4/3) {inst.k}")
    logger.info(f"Solução com {solution.iterations} iterações e custo máximo {solution.max_switching}")

    return solution, Trace(digest, tuple(records), solution)
