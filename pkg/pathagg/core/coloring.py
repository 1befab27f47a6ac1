"""
Coloração com 3 cores de pseudoflorestas

Cada componente conexa tem no máximo tantas arestas quanto vértices, portanto
no máximo um ciclo. A coloração é determinística: busca em largura a partir do
menor id de cada componente (vizinhos em ordem crescente), cores 0/1 ao longo
da árvore de busca e, se a única aresta fora da árvore ficar monocromática, a
extremidade de maior id recebe a cor 2.
"""
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Tuple

import networkx as nx

from pathagg.core.errors import ColoringError

# Configurar logging
logger = logging.getLogger(__name__)

Coloring = Dict[int, int]


@dataclass(frozen=True)
class SparseGraph:
    """Grafo não dirigido sem arestas repetidas."""

    vertices: Tuple[int, ...]
    edges: Tuple[Tuple[int, int], ...]

    @classmethod
    def from_edges(cls, vertices: Iterable[int], edges: Iterable[Tuple[int, int]]) -> "SparseGraph":
        """Descarta a orientação e colapsa u->w e w->u numa única aresta."""
        pairs = sorted({(min(u, w), max(u, w)) for u, w in edges if u != w})
        return cls(tuple(sorted(set(vertices))), tuple(pairs))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.edges)
        return graph


def three_color(g: SparseGraph) -> Coloring:
    """
    Colore com 3 cores um grafo cujas componentes têm no máximo um ciclo.

    Args:
        g: Pseudofloresta a colorir

    Returns:
        Mapa vértice -> cor em {0, 1, 2}, própria e total

    Raises:
        ColoringError: se alguma componente tiver mais arestas que vértices
    """
    graph = g.to_networkx()
    coloring: Coloring = {}

    for component in sorted((sorted(c) for c in nx.connected_components(graph)), key=lambda c: c[0]):
        edge_count = sum(degree for _, degree in graph.degree(component)) // 2
        if edge_count > len(component):
            raise ColoringError(
                f"Componente com {edge_count} arestas e {len(component)} vértices a partir de {component[0]}"
            )

        start = component[0]
        coloring[start] = 0
        if edge_count == 0:
            continue
        tree = set()
        for parent, child in nx.bfs_edges(graph, start, sort_neighbors=sorted):
            coloring[child] = 1 - coloring[parent]
            tree.add((min(parent, child), max(parent, child)))

        closing = sorted({(min(a, b), max(a, b)) for a, b in graph.edges(component)} - tree)
        for a, b in closing:
            if coloring[a] == coloring[b]:
                coloring[b] = 2

    return {v: coloring[v] for v in sorted(coloring)}


def largest_color_class(c: Coloring) -> FrozenSet[int]:
    """
    Retorna a maior classe de cor; empates favorecem o menor índice de cor.

    Args:
        c: Coloração total

    Returns:
        Conjunto de vértices da classe escolhida (vazio para coloração vazia)
    """
    if not c:
        return frozenset()
    classes: Dict[int, list] = {}
    for vertex, color in c.items():
        classes.setdefault(color, []).append(vertex)
    chosen = min(classes, key=lambda color: (-len(classes[color]), color))
    return frozenset(classes[chosen])
