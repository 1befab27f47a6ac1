"""
Linha de base para instâncias em árvore (decomposição em caminhos pesados)

Quando o grafo subjacente é uma árvore orientada para a raiz, o arco (v, pai(v))
é pesado se a subárvore de v tem mais da metade dos vértices da subárvore do
pai. Cada caminho da decomposição é uma sequência maximal de arcos pesados mais
o arco leve logo acima; a solução usa, em cada caminho, os arcos do caminho
proposto do seu nó mais baixo. Todo caminho até a raiz cruza no máximo
⌊log2(n/2)⌋ + 1 caminhos da decomposição.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

from pathagg.core.aggregation import Solution, root_switch_costs
from pathagg.core.errors import BaselineError
from pathagg.core.instance import Instance, instance_digest

# Configurar logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InTree:
    root: int
    parent: Mapping[int, Optional[int]] = field(hash=False)

    def depth_order(self) -> List[int]:
        """Vértices em ordem crescente de profundidade (empates por id)."""
        depth: Dict[int, int] = {self.root: 0}
        for vertex in self.parent:
            walk = []
            x = vertex
            while x not in depth:
                walk.append(x)
                x = self.parent[x]
            for step in reversed(walk):
                depth[step] = depth[x] + 1
                x = step
        return sorted(depth, key=lambda v: (depth[v], v))


@dataclass(frozen=True)
class HeavyPathDecomposition:
    """
    Caminhos da decomposição.

    Cada caminho é a tupla das caudas dos seus arcos, de baixo para cima; o
    primeiro elemento é o nó mais baixo.
    """

    paths: Tuple[Tuple[int, ...], ...]
    heavy: Mapping[int, bool] = field(hash=False)
    path_of: Mapping[int, int] = field(hash=False)
    subtree_size: Mapping[int, int] = field(hash=False)


def is_tree_instance(inst: Instance) -> Optional[InTree]:
    """
    Reconhece instâncias cujo grafo é uma árvore dirigida para a raiz.

    Arcos paralelos de cores diferentes são permitidos; todo vértice fora a raiz
    precisa de exatamente um vértice de saída e todos alcançam a raiz.

    Returns:
        InTree ou None se a instância não for uma árvore
    """
    parent: Dict[int, int] = {}
    for arc in inst.arcs:
        if parent.setdefault(arc.tail, arc.head) != arc.head:
            return None
    if inst.root in parent:
        return None
    if any(v != inst.root and v not in parent for v in range(inst.vertex_count)):
        return None

    reaches = {inst.root}
    for vertex in range(inst.vertex_count):
        walk = []
        seen = set()
        x = vertex
        while x not in reaches:
            if x in seen:
                return None
            seen.add(x)
            walk.append(x)
            x = parent[x]
        reaches.update(walk)

    full: Dict[int, Optional[int]] = {v: parent.get(v) for v in range(inst.vertex_count)}
    return InTree(inst.root, full)


def heavy_path_decomposition(t: InTree) -> HeavyPathDecomposition:
    """
    Decompõe os arcos da árvore em caminhos pesados.

    Args:
        t: Árvore dirigida para a raiz

    Returns:
        HeavyPathDecomposition com cada arco em exatamente um caminho
    """
    order = t.depth_order()
    size = {v: 1 for v in order}
    for vertex in reversed(order):
        up = t.parent[vertex]
        if up is not None:
            size[up] += size[vertex]

    heavy = {v: 2 * size[v] > size[t.parent[v]] for v in order if t.parent[v] is not None}
    has_heavy_child = {t.parent[v] for v, is_heavy in heavy.items() if is_heavy}

    paths: List[Tuple[int, ...]] = []
    path_of: Dict[int, int] = {}
    for start in sorted(v for v in heavy if v not in has_heavy_child):
        chain = []
        x = start
        while True:
            chain.append(x)
            path_of[x] = len(paths)
            if not heavy[x]:
                break
            x = t.parent[x]
            if x == t.root:
                break
        paths.append(tuple(chain))

    logger.debug(f"Decomposição com {len(paths)} caminhos pesados")
    return HeavyPathDecomposition(tuple(paths), heavy, path_of, size)


def root_path_crossings(t: InTree, d: HeavyPathDecomposition) -> Dict[int, int]:
    """Número de caminhos da decomposição cruzados no caminho de cada vértice até a raiz."""
    crossings: Dict[int, int] = {}
    for vertex in t.depth_order():
        up = t.parent[vertex]
        if up is None:
            crossings[vertex] = 0
        elif up == t.root:
            crossings[vertex] = 1
        else:
            crossings[vertex] = crossings[up] + (d.path_of[vertex] != d.path_of[up])
    return crossings


def solve_tree_instance(inst: Instance, t: InTree, d: HeavyPathDecomposition) -> Solution:
    """
    Monta a solução da linha de base: em cada caminho pesado, os arcos do caminho
    proposto do seu nó mais baixo.

    Raises:
        BaselineError: nó mais baixo sem caminho proposto ou cujo caminho não cobre o caminho pesado
    """
    out_arc: Dict[int, int] = {}
    for chain in d.paths:
        lowest = chain[0]
        proposed = inst.proposed_paths.get(lowest)
        if proposed is None:
            raise BaselineError(f"Nó mais baixo {lowest} não é terminal", lowest)
        by_tail = {inst.arcs[a].tail: a for a in proposed}
        for vertex in chain:
            arc_id = by_tail.get(vertex)
            if arc_id is None:
                raise BaselineError(f"Caminho proposto de {lowest} não passa por {vertex}", lowest)
            out_arc[vertex] = arc_id

    costs = root_switch_costs(out_arc, inst)
    return Solution(
        arcs=tuple(sorted(out_arc.values())),
        iterations=0,
        switching_costs=costs,
        max_switching=max(costs.values(), default=0),
        instance_digest=instance_digest(inst),
    )
