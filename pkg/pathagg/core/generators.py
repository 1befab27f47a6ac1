"""
Geradores de instâncias determinísticos

Todas as famílias usam um SeededStream (Philox-4x64 do numpy) consumido
apenas por saídas brutas de 64 bits, de modo que a mesma semente gera o mesmo
documento byte a byte em qualquer plataforma.

Famílias:
- lb-tree: árvore binária completa, um caminho de cor própria por vértice
- rand-tree: árvore aleatória com reuso de caminhos de descendentes
- planted-dag: DAG com caminhos plantados e arcos-isca
- tangled: caminhos monocromáticos entrelaçados sobre vértices em ordem aleatória
- crossing: par de caminhos que se bloqueiam mutuamente
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Set

import numpy as np

from pathagg.core.instance import Instance

# Configurar logging
logger = logging.getLogger(__name__)

FAMILIES = ("lb-tree", "rand-tree", "planted-dag", "tangled", "crossing")


class SeededStream:
    """Fluxo Philox-4x64 determinístico; a chave combina semente e número do fluxo."""

    BUFFER = 1024

    def __init__(self, seed: int, stream: int = 0):
        if not 0 <= seed < 2 ** 64:
            raise ValueError(f"Semente fora do intervalo de 64 bits: {seed}")
        self.seed = seed
        self.stream = stream
        self._bits = np.random.Philox(key=seed + (stream << 64))
        self._buffer: List[int] = []

    def spawn(self, stream: int) -> "SeededStream":
        return SeededStream(self.seed, stream)

    def next_u64(self) -> int:
        if not self._buffer:
            self._buffer = [int(x) for x in self._bits.random_raw(self.BUFFER)][::-1]
        return self._buffer.pop()

    def below(self, bound: int) -> int:
        """Inteiro uniforme em [0, bound) por rejeição."""
        if bound <= 0:
            raise ValueError(f"Limite deve ser positivo: {bound}")
        limit = (1 << 64) // bound * bound
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def coin(self) -> bool:
        return self.next_u64() >> 63 == 1

    def sample_range(self, start: int, stop: int, count: int) -> List[int]:
        """`count` inteiros distintos de [start, stop), em ordem crescente (algoritmo de Floyd)."""
        size = stop - start
        if not 0 <= count <= size:
            raise ValueError(f"Não há {count} valores distintos em [{start}, {stop})")
        chosen: Set[int] = set()
        for j in range(size - count, size):
            t = self.below(j + 1)
            chosen.add(j if t in chosen else t)
        return sorted(start + x for x in chosen)

    def shuffle(self, items: Sequence[int]) -> List[int]:
        pool = list(items)
        for i in range(len(pool) - 1, 0, -1):
            j = self.below(i + 1)
            pool[i], pool[j] = pool[j], pool[i]
        return pool


def gen_binary_tree_lower_bound(d: int) -> Instance:
    """
    Árvore binária completa de profundidade d (ids em ordem de heap, raiz 0).

    Todo vértice que não é a raiz é terminal e propõe o caminho da árvore até a
    raiz numa cor exclusiva.
    """
    if d < 1:
        raise ValueError(f"Profundidade deve ser pelo menos 1: {d}")
    n = 2 ** (d + 1) - 1
    arcs = []
    paths: Dict[int, List[int]] = {}
    for v in range(1, n):
        token = f"c{v}"
        path = []
        x = v
        while x != 0:
            up = (x - 1) // 2
            path.append(len(arcs))
            arcs.append((x, up, token))
            x = up
        paths[v] = path
    return Instance.from_arcs(n, 0, arcs, paths, terminals=range(1, n))


def gen_random_tree(n: int, max_parallel: int, seed: int) -> Instance:
    """
    Árvore aleatória com raiz 0 e todos os demais vértices terminais.

    O pai de v é uniforme em [0, v). Em ordem decrescente de id, cada terminal
    reutiliza o sufixo do caminho de um descendente sorteado ou cria um caminho
    novo de cor própria. Quando algum arco da árvore no seu caminho já tem
    `max_parallel` cópias, o reuso passa a ser obrigatório (se houver descendentes).
    """
    if n < 2:
        raise ValueError(f"Árvore aleatória precisa de pelo menos 2 vértices: {n}")
    if max_parallel < 1:
        raise ValueError(f"max_parallel deve ser positivo: {max_parallel}")

    rng = SeededStream(seed)
    parent = {v: rng.below(v) for v in range(1, n)}
    descendants: Dict[int, List[int]] = {v: [] for v in range(1, n)}
    for u in range(1, n):
        x = parent[u]
        while x != 0:
            descendants[x].append(u)
            x = parent[x]

    arcs = []
    tails: List[int] = []
    paths: Dict[int, List[int]] = {}
    load: Dict[int, int] = {}
    for v in range(n - 1, 0, -1):
        route = [v]
        while route[-1] != 0:
            route.append(parent[route[-1]])
        saturated = any(load.get(x, 0) >= max_parallel for x in route[:-1])

        if descendants[v] and (saturated or rng.coin()):
            donor = descendants[v][rng.below(len(descendants[v]))]
            proposed = paths[donor]
            start = next(i for i, arc_id in enumerate(proposed) if tails[arc_id] == v)
            paths[v] = proposed[start:]
        else:
            token = f"c{v}"
            ids = []
            for x in route[:-1]:
                ids.append(len(arcs))
                arcs.append((x, parent[x], token))
                tails.append(x)
                load[x] = load.get(x, 0) + 1
            paths[v] = ids

    return Instance.from_arcs(n, 0, arcs, paths, terminals=range(1, n))


def gen_planted_dag(n: int, k: int, extra_arcs: int, seed: int, layers: int = 8) -> Instance:
    """
    DAG com raiz n-1: k terminais, cada um com um caminho plantado crescente em ids.

    Os arcos-isca também apontam de ids menores para maiores e reutilizam as
    cores dos caminhos plantados.
    """
    if not 1 <= k < n:
        raise ValueError(f"Esperado 1 <= k < n, recebido k={k}, n={n}")
    rng = SeededStream(seed)
    root = n - 1
    terminals = rng.sample_range(0, root, k)

    arcs = []
    paths: Dict[int, List[int]] = {}
    palette = []
    for t in terminals:
        available = root - t - 1
        hops = rng.below(min(layers, available) + 1)
        route = [t] + rng.sample_range(t + 1, root, hops) + [root]
        token = f"p{t}"
        palette.append(token)
        ids = []
        for tail, head in zip(route, route[1:]):
            ids.append(len(arcs))
            arcs.append((tail, head, token))
        paths[t] = ids

    for _ in range(extra_arcs):
        tail = rng.below(root)
        head = tail + 1 + rng.below(root - tail)
        arcs.append((tail, head, palette[rng.below(len(palette))]))

    return Instance.from_arcs(n, root, arcs, paths, terminals=terminals)


def gen_tangled_paths(n: int, k: int, layers: int, seed: int) -> Instance:
    """
    Caminhos com vértices intermediários em ordem aleatória (raiz 0).

    Sem a monotonia dos DAGs plantados, os prefixos podem se bloquear
    mutuamente, exercitando ciclos no grafo de dependências.
    """
    if not 1 <= k < n:
        raise ValueError(f"Esperado 1 <= k < n, recebido k={k}, n={n}")
    rng = SeededStream(seed)
    terminals = rng.sample_range(1, n, k)

    arcs = []
    paths: Dict[int, List[int]] = {}
    for t in terminals:
        others = n - 2
        hops = rng.below(min(layers, others) + 1) if others > 0 else 0
        picks = rng.sample_range(0, others, hops)
        middle = rng.shuffle([x + 1 if x + 1 < t else x + 2 for x in picks])
        route = [t] + middle + [0]
        token = f"t{t}"
        ids = []
        for tail, head in zip(route, route[1:]):
            ids.append(len(arcs))
            arcs.append((tail, head, token))
        paths[t] = ids

    return Instance.from_arcs(n, 0, arcs, paths, terminals=terminals)


def gen_crossing_pair() -> Instance:
    """
    Dois terminais (1 e 2) cujos prefixos maximais se bloqueiam mutuamente.

    1 -> 3 -> 2 -> 0 em azul e 2 -> 4 -> 3 -> 0 em verde.
    """
    arcs = [
        (1, 3, "blue"), (3, 2, "blue"), (2, 0, "blue"),
        (2, 4, "green"), (4, 3, "green"), (3, 0, "green"),
    ]
    return Instance.from_arcs(5, 0, arcs, {1: [0, 1, 2], 2: [3, 4, 5]}, terminals=[1, 2])


@dataclass(frozen=True)
class GenSpec:
    """Parâmetros de uma instância gerada; campos não usados pela família são ignorados."""

    family: str
    depth: int = 2
    n: int = 50
    k: int = 10
    layers: int = 8
    extra_arcs: int = 0
    max_parallel: int = 4
    seed: int = 0

    @property
    def instance_id(self) -> str:
        if self.family == "lb-tree":
            return f"lb-tree-d{self.depth}"
        if self.family == "rand-tree":
            return f"rand-tree-n{self.n}-p{self.max_parallel}-s{self.seed}"
        if self.family == "planted-dag":
            return f"planted-dag-n{self.n}-k{self.k}-x{self.extra_arcs}-s{self.seed}"
        if self.family == "tangled":
            return f"tangled-n{self.n}-k{self.k}-l{self.layers}-s{self.seed}"
        return self.family


def generate(spec: GenSpec) -> Instance:
    """
    Gera a instância descrita por `spec`.

    Raises:
        ValueError: família desconhecida ou parâmetros inválidos
    """
    logger.debug(f"Gerando instância {spec.instance_id}")
    if spec.family == "lb-tree":
        return gen_binary_tree_lower_bound(spec.depth)
    if spec.family == "rand-tree":
        return gen_random_tree(spec.n, spec.max_parallel, spec.seed)
    if spec.family == "planted-dag":
        return gen_planted_dag(spec.n, spec.k, spec.extra_arcs, spec.seed, spec.layers)
    if spec.family == "tangled":
        return gen_tangled_paths(spec.n, spec.k, spec.layers, spec.seed)
    if spec.family == "crossing":
        return gen_crossing_pair()
    raise ValueError(f"Família desconhecida: {spec.family}. Use uma de {', '.join(FAMILIES)}")
