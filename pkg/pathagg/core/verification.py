"""
Verificação independente de soluções e traços

As verificações recalculam tudo a partir da instância e dos arcos da solução
(ou dos registros do traço), sem usar o estado interno do resolvedor.
Falhas são devolvidas como relatórios com testemunhas; apenas um traço de
outra instância gera exceção.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Set, Tuple

import networkx as nx

from pathagg.core.aggregation import Solution, Trace
from pathagg.core.errors import TraceMismatchError
from pathagg.core.instance import Instance, instance_digest
from pathagg.utils.bounds import exceeds_paper_bound, safe_iteration_bound

# Configurar logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ArborescenceReport:
    ok: bool
    reason: str = ""
    witness: Tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {"ok": self.ok, "reason": self.reason, "witness": list(self.witness)}


@dataclass(frozen=True)
class SwitchReport:
    costs: Mapping[int, int] = field(hash=False)
    max_cost: int = 0
    root_paths: Mapping[int, Tuple[int, ...]] = field(default_factory=dict, hash=False)


@dataclass(frozen=True)
class ConditionFailure:
    iteration: int
    condition: str
    detail: str
    witness: Tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {
            "iteration": self.iteration,
            "condition": self.condition,
            "detail": self.detail,
            "witness": list(self.witness),
        }


@dataclass(frozen=True)
class IterationCheck:
    iteration: int
    c1: bool
    c2: bool
    c3: bool
    c4: bool

    @property
    def ok(self) -> bool:
        return self.c1 and self.c2 and self.c3 and self.c4


@dataclass(frozen=True)
class InvariantReport:
    """Resultado por iteração (incluindo o estado inicial i = 0) e verificação final."""

    checks: Tuple[IterationCheck, ...]
    failure: Optional[ConditionFailure]
    final_bound_ok: bool
    exceeds_paper_bound: bool

    @property
    def ok(self) -> bool:
        return self.failure is None and self.final_bound_ok and all(c.ok for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "iterations": [
                {"iteration": c.iteration, "c1": c.c1, "c2": c.c2, "c3": c.c3, "c4": c.c4}
                for c in self.checks
            ],
            "failure": self.failure.to_dict() if self.failure else None,
            "final_bound_ok": self.final_bound_ok,
            "exceeds_paper_bound": self.exceeds_paper_bound,
        }


def _follow(start: int, tails: Mapping[int, int], inst: Instance) -> Tuple[int, List[int]]:
    """Segue os arcos de saída a partir de `start`; devolve o vértice final e os arcos usados."""
    used: List[int] = []
    x = start
    while x in tails and len(used) <= inst.vertex_count:
        arc_id = tails[x]
        used.append(arc_id)
        x = inst.arcs[arc_id].head
    return x, used


def check_arborescence(sol: Solution, inst: Instance) -> ArborescenceReport:
    """
    Verifica se os arcos da solução formam uma arborescência para a raiz.

    Condições: ids conhecidos, grau de saída no máximo 1, raiz sem arco de
    saída, ausência de ciclos e todo terminal (e todo vértice com arco de
    saída) alcançando a raiz.

    Args:
        sol: Solução a verificar
        inst: Instância

    Returns:
        ArborescenceReport com a primeira condição violada e sua testemunha
    """
    unknown = tuple(a for a in sol.arcs if not 0 <= a < len(inst.arcs))
    if unknown:
        return ArborescenceReport(False, "unknown-arc", unknown)

    tails: Dict[int, int] = {}
    for arc_id in sol.arcs:
        tail = inst.arcs[arc_id].tail
        if tail in tails:
            return ArborescenceReport(False, "out-degree", (tail, tails[tail], arc_id))
        tails[tail] = arc_id

    if inst.root in tails:
        return ArborescenceReport(False, "root-out-arc", (inst.root, tails[inst.root]))

    graph = nx.DiGraph()
    graph.add_edges_from((inst.arcs[a].tail, inst.arcs[a].head) for a in sol.arcs)
    try:
        cycle = nx.find_cycle(graph)
        return ArborescenceReport(False, "cycle", tuple(u for u, _ in cycle))
    except nx.NetworkXNoCycle:
        pass

    for terminal in inst.terminals:
        end, _ = _follow(terminal, tails, inst)
        if end != inst.root:
            return ArborescenceReport(False, "stranded-terminal", (terminal, end))
    for vertex in sorted(tails):
        end, _ = _follow(vertex, tails, inst)
        if end != inst.root:
            return ArborescenceReport(False, "stranded-vertex", (vertex, end))

    return ArborescenceReport(True)


def count_switches(arc_ids: Iterable[int], inst: Instance) -> int:
    """Número de pares de arcos consecutivos com cores diferentes."""
    colors = [inst.arcs[a].color for a in arc_ids]
    return sum(1 for previous, current in zip(colors, colors[1:]) if previous != current)


def switching_costs(sol: Solution, inst: Instance) -> SwitchReport:
    """
    Recalcula o custo de troca de cada terminal na arborescência da solução.

    Pré-condição: check_arborescence(sol, inst).ok.
    """
    tails = sol.out_arc_map(inst)
    costs: Dict[int, int] = {}
    root_paths: Dict[int, Tuple[int, ...]] = {}
    for terminal in inst.terminals:
        _, used = _follow(terminal, tails, inst)
        root_paths[terminal] = tuple(used)
        costs[terminal] = count_switches(used, inst)
    return SwitchReport(costs, max(costs.values(), default=0), root_paths)


class _TraceReplay:
    """Reproduz (B, S, P^A) registro a registro e avalia as condições de cada iteração."""

    def __init__(self, inst: Instance):
        self.inst = inst
        self.branching: Set[int] = set()
        self.active: Tuple[int, ...] = tuple(sorted(inst.terminals))
        self.active_len: Dict[int, int] = {v: 0 for v in self.active}

    # c1: arborescência (grau de saída <= 1 e acíclica)
    def forest_failure(self, i: int) -> Optional[ConditionFailure]:
        tails: Dict[int, int] = {}
        for arc_id in sorted(self.branching):
            tail = self.inst.arcs[arc_id].tail
            if tail in tails:
                return ConditionFailure(i, "c1", f"vértice {tail} com dois arcos de saída", (tail, tails[tail], arc_id))
            tails[tail] = arc_id
        graph = nx.DiGraph()
        graph.add_edges_from((self.inst.arcs[a].tail, self.inst.arcs[a].head) for a in self.branching)
        try:
            cycle = nx.find_cycle(graph)
            return ConditionFailure(i, "c1", "ciclo na ramificação", tuple(u for u, _ in cycle))
        except nx.NetworkXNoCycle:
            return None

    # c2: exatamente um ativo por componente não trivial, com o caminho ativo contido nela
    def component_failure(self, i: int) -> Optional[ConditionFailure]:
        inst = self.inst
        graph = nx.DiGraph()
        graph.add_nodes_from(range(inst.vertex_count))
        graph.add_edges_from((inst.arcs[a].tail, inst.arcs[a].head) for a in self.branching)
        active = set(self.active)
        terminals = set(inst.terminals)

        for component in nx.weakly_connected_components(graph):
            representatives = sorted(v for v in component if v in active)
            if not representatives:
                if len(component) > 1:
                    return ConditionFailure(i, "c2", "componente sem ativo", (min(component),))
                (vertex,) = component
                if vertex in terminals:
                    return ConditionFailure(i, "c2", "terminal inativo isolado", (vertex,))
                continue
            if len(representatives) > 1:
                return ConditionFailure(i, "c2", "componente com mais de um ativo", tuple(representatives))

            v = representatives[0]
            length = self.active_len.get(v, -1)
            if length < 0:
                return ConditionFailure(i, "c2", "ativo sem comprimento de caminho", (v,))
            vertices = inst.path_vertices(v)[: length + 1]
            arcs = inst.proposed_paths[v][:length]
            if any(x not in component for x in vertices) or any(a not in self.branching for a in arcs):
                return ConditionFailure(i, "c2", "caminho ativo fora da componente", (v,))
        return None

    # c3: L_u chega ao caminho ativo da componente com no máximo 2i trocas
    def witness_failure(self, i: int) -> Optional[ConditionFailure]:
        inst = self.inst
        on_active = set()
        for v in self.active:
            on_active.update(inst.path_vertices(v)[: self.active_len.get(v, 0) + 1])
        tails: Dict[int, int] = {}
        for arc_id in sorted(self.branching):
            tails.setdefault(inst.arcs[arc_id].tail, arc_id)

        for terminal in inst.terminals:
            used: List[int] = []
            seen = set()
            x = terminal
            while x not in on_active:
                if x in seen or x not in tails:
                    return ConditionFailure(i, "c3", "terminal não alcança caminho ativo", (terminal, x))
                seen.add(x)
                used.append(tails[x])
                x = inst.arcs[tails[x]].head
            switches = count_switches(used, inst)
            if switches > 2 * i:
                return ConditionFailure(i, "c3", f"L_u com {switches} trocas", (terminal, *used))
        return None


def _reduction_failure(record, active: Tuple[int, ...], inst: Instance) -> Optional[ConditionFailure]:
    """c4: conjunto de vértices de H, coloração própria, S_H maximal e redução de S."""
    i = record.iteration
    coloring = dict(record.coloring)
    expected = set(active) - ({record.reaches_root} if record.reaches_root is not None else set())
    if set(coloring) != expected:
        return ConditionFailure(i, "c4", "vértices de H diferentes de S menos o ativo na raiz", tuple(sorted(set(coloring) ^ expected)))

    for u, w in record.dependency_edges:
        if u not in coloring or w not in coloring or coloring[u] == coloring[w]:
            return ConditionFailure(i, "c4", "coloração imprópria", (u, w))
    if any(c not in (0, 1, 2) for c in coloring.values()):
        return ConditionFailure(i, "c4", "cor fora de {0, 1, 2}", ())

    selected = set(record.selected)
    classes: Dict[int, int] = {}
    for c in coloring.values():
        classes[c] = classes.get(c, 0) + 1
    largest = max(classes.values(), default=0)
    if not selected <= set(coloring) or len({coloring[v] for v in selected}) > 1 or len(selected) != largest:
        return ConditionFailure(i, "c4", "S_H não é a maior classe de cor", tuple(sorted(selected)))

    if len(record.active_after) > len(active) - math.ceil(len(coloring) / 3):
        return ConditionFailure(i, "c4", "redução insuficiente de S", (len(active), len(record.active_after)))
    return None


def check_trace(trace: Trace, inst: Instance) -> InvariantReport:
    """
    Reproduz o traço e verifica as condições de cada iteração.

    c1: B é uma arborescência; c2: cada componente não trivial tem exatamente
    um ativo, cujo caminho ativo está nela; c3: o caminho de cada terminal até o
    caminho ativo da sua componente tem no máximo 2i trocas; c4: S diminui de
    pelo menos |V(H)|/3 e S_H é a maior classe de uma coloração própria.

    Args:
        trace: Traço a verificar
        inst: Instância do traço

    Returns:
        InvariantReport com a primeira falha (se houver)

    Raises:
        TraceMismatchError: se o hash do traço não corresponder à instância
    """
    digest = instance_digest(inst)
    if trace.instance_digest != digest:
        raise TraceMismatchError(f"Traço de {trace.instance_digest[:12]} não corresponde à instância {digest[:12]}")

    replay = _TraceReplay(inst)
    checks: List[IterationCheck] = []
    failure: Optional[ConditionFailure] = None

    def evaluate(i: int, *extra: Optional[ConditionFailure]) -> None:
        nonlocal failure
        found = {
            "c1": replay.forest_failure(i),
            "c2": replay.component_failure(i),
            "c3": replay.witness_failure(i),
            "c4": None,
        }
        for problem in extra:
            if problem is not None and found[problem.condition] is None:
                found[problem.condition] = problem
        checks.append(IterationCheck(i, *(found[c] is None for c in ("c1", "c2", "c3", "c4"))))
        if failure is None:
            failure = next((found[c] for c in ("c1", "c2", "c3", "c4") if found[c] is not None), None)

    evaluate(0)
    for record in trace.records:
        i = record.iteration
        problems: List[Optional[ConditionFailure]] = []
        if tuple(record.active_before) != replay.active:
            problems.append(ConditionFailure(i, "c2", "ativos antes da iteração divergem", tuple(record.active_before)))

        unknown = [a for a in (*record.arcs_added, *record.arcs_removed) if not 0 <= a < len(inst.arcs)]
        absent = [a for a in record.arcs_removed if a not in replay.branching]
        if unknown or absent:
            problems.append(ConditionFailure(i, "c1", "arcos desconhecidos ou removidos sem estar em B", tuple(unknown + absent)))

        problems.append(_reduction_failure(record, replay.active, inst))

        selected = set(record.selected)
        expected_after = tuple(v for v in replay.active if v not in selected)
        if tuple(record.active_after) != expected_after:
            problems.append(ConditionFailure(i, "c2", "ativos após a iteração divergem", tuple(record.active_after)))

        valid = [a for a in record.arcs_added if 0 <= a < len(inst.arcs)]
        replay.branching = (replay.branching - set(record.arcs_removed)) | set(valid)
        replay.active = tuple(record.active_after)
        replay.active_len = {v: record.prefix_after.get(v, -1) for v in replay.active}

        for v, length in record.prefix_after.items():
            path = inst.proposed_paths.get(v, ())
            if not 0 <= length <= len(path) or any(a not in replay.branching for a in path[:length]):
                problems.append(ConditionFailure(i, "c1", "arco de prefixo ausente de B", (v,)))
                break

        evaluate(i, *problems)

    solution = trace.solution
    iterations = len(trace.records)
    if failure is None:
        if tuple(sorted(replay.branching)) != tuple(sorted(solution.arcs)):
            failure = ConditionFailure(iterations, "final", "solução difere da ramificação reproduzida")
        elif solution.iterations != iterations or iterations > safe_iteration_bound(inst.k):
            failure = ConditionFailure(iterations, "final", f"{solution.iterations} iterações declaradas, {iterations} registradas")

    arborescence = check_arborescence(solution, inst)
    if arborescence.ok:
        max_cost = switching_costs(solution, inst).max_cost
    else:
        max_cost = solution.max_switching
        if failure is None:
            failure = ConditionFailure(iterations, "final", f"solução não é arborescência ({arborescence.reason})", arborescence.witness)
    final_bound_ok = max_cost <= 2 * iterations

    report = InvariantReport(tuple(checks), failure, final_bound_ok, exceeds_paper_bound(max_cost, inst.k))
    if not report.ok:
        logger.warning(f"Traço reprovado: {failure.detail if failure else 'limite final'}")
    return report
