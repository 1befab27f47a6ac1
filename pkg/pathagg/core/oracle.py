"""
Oráculo de força bruta para instâncias pequenas

Enumera as funções de escolha mínimas: para cada terminal (em ordem
crescente), segue os arcos já escolhidos e ramifica sobre os arcos de saída
dos vértices ainda sem escolha, até a raiz. Ramos com ciclo são descartados e
ramos cujo custo parcial já supera o melhor conhecido são podados; empates
continuam sendo explorados para que a testemunha seja a menor em ordem
lexicográfica.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Set, Tuple

from pathagg.config import settings
from pathagg.core.aggregation import Solution, root_switch_costs
from pathagg.core.errors import InvalidInstanceError, PathAggError, SearchLimitError
from pathagg.core.instance import Instance, instance_digest, validate_instance

# Configurar logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchLimits:
    max_states: int = field(default_factory=lambda: settings.ORACLE_MAX_STATES)


@dataclass(frozen=True)
class OptResult:
    optimum: int
    witness: Solution
    search_space: int
    explored: int


def search_space_size(inst: Instance) -> int:
    """Produto, sobre os vértices, de (grau de saída + 1)."""
    return math.prod(len(inst.out_arcs(v)) + 1 for v in range(inst.vertex_count))


class _ChoiceSearch:
    def __init__(self, inst: Instance):
        self.inst = inst
        self.terminals = sorted(inst.terminals)
        self.choice: Dict[int, int] = {}
        self.best_cost = math.inf
        self.best_key: Optional[Tuple[int, ...]] = None
        self.best_choice: Optional[Dict[int, int]] = None
        self.explored = 0

    def run(self) -> None:
        self._next_terminal(0, 0)

    def _next_terminal(self, index: int, partial_max: int) -> None:
        if index == len(self.terminals):
            self._complete(partial_max)
            return
        terminal = self.terminals[index]
        self._walk(index, terminal, None, 0, partial_max, {terminal})

    def _walk(self, index: int, x: int, color: Optional[int], switches: int, partial_max: int, on_path: Set[int]) -> None:
        cost = max(partial_max, switches)
        if cost > self.best_cost:
            return
        if x == self.inst.root:
            self._next_terminal(index + 1, cost)
            return

        decided = x in self.choice
        candidates = (self.choice[x],) if decided else self.inst.out_arcs(x)
        for arc_id in candidates:
            arc = self.inst.arcs[arc_id]
            if arc.head in on_path:
                continue
            step = switches + (color is not None and arc.color != color)
            if not decided:
                self.choice[x] = arc_id
            on_path.add(arc.head)
            self._walk(index, arc.head, arc.color, step, partial_max, on_path)
            on_path.discard(arc.head)
            if not decided:
                del self.choice[x]

    def _complete(self, cost: int) -> None:
        self.explored += 1
        key = tuple(self.choice.get(v, -1) for v in range(self.inst.vertex_count))
        if cost < self.best_cost or (cost == self.best_cost and key < self.best_key):
            self.best_cost = cost
            self.best_key = key
            self.best_choice = dict(self.choice)


def brute_force_opt(inst: Instance, limits: Optional[SearchLimits] = None) -> OptResult:
    """
    Calcula o menor custo máximo de troca entre todas as arborescências.

    Args:
        inst: Instância válida
        limits: Limite do espaço de busca nominal

    Returns:
        OptResult com o ótimo, a testemunha lexicograficamente mínima e o esforço

    Raises:
        InvalidInstanceError: instância inválida
        SearchLimitError: espaço de busca nominal acima do limite
    """
    limits = limits or SearchLimits()
    report = validate_instance(inst)
    if not report.ok:
        raise InvalidInstanceError(report)

    space = search_space_size(inst)
    if space > limits.max_states:
        raise SearchLimitError(space, limits.max_states)

    search = _ChoiceSearch(inst)
    search.run()
    if search.best_choice is None:
        raise PathAggError("Nenhuma arborescência encontrada para uma instância válida")

    costs = root_switch_costs(search.best_choice, inst)
    witness = Solution(
        arcs=tuple(sorted(search.best_choice.values())),
        iterations=0,
        switching_costs=costs,
        max_switching=max(costs.values(), default=0),
        instance_digest=instance_digest(inst),
    )
    logger.info(f"Ótimo {search.best_cost} após {search.explored} soluções mínimas (espaço nominal {space})")
    return OptResult(int(search.best_cost), witness, space, search.explored)
