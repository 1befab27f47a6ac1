"""Exportação de instâncias e soluções em código graphviz."""
import hashlib
from typing import Optional

from pathagg.core.aggregation import Solution
from pathagg.core.instance import Instance

PALETTE = (
    "#1F77B4", "#FF7F0E", "#2CA02C", "#D62728", "#9467BD",
    "#8C564B", "#E377C2", "#7F7F7F", "#BCBD22", "#17BECF",
)


def color_for_token(token: str) -> str:
    """Cor fixa por token, escolhida pelo hash SHA-256 do nome."""
    digest = hashlib.sha256(token.encode("utf-8")).hexdigest()
    return PALETTE[int(digest, 16) % len(PALETTE)]


def as_graphviz(inst: Instance, solution: Optional[Solution] = None, show_proposed: bool = True) -> str:
    """
    Renderiza a instância (e a solução, se houver) como código graphviz.

    Arcos da solução são desenhados cheios e grossos; os demais arcos dos
    caminhos propostos ficam tracejados. Para gerar a imagem:

    $ dot -Tpng output.dot > output.png
    """
    chosen = set(solution.arcs) if solution else set()
    proposed = {a for path in inst.proposed_paths.values() for a in path}
    terminals = set(inst.terminals)

    lines = ['digraph {', 'graph [rankdir=BT];']
    append = lines.append

    def node(vertex):
        return '"{}"'.format(vertex)

    append('node [fontname=Arial shape=circle penwidth=2 color="#708BA6"')
    append('      style=filled fillcolor="#DCE9ED"]')
    append('{} [shape=doublecircle fillcolor="#F4E5AD" color="#DAB21D"]'.format(node(inst.root)))
    for vertex in range(inst.vertex_count):
        if vertex != inst.root and vertex not in terminals:
            append('{} [fillcolor="#FFFFFF"]'.format(node(vertex)))

    for arc_id, arc in enumerate(inst.arcs):
        if arc_id in chosen:
            style = 'penwidth=3'
        elif show_proposed and arc_id in proposed:
            style = 'style=dashed'
        else:
            continue
        color = color_for_token(inst.colors[arc.color])
        append('{} -> {} [color="{}" {} tooltip="{}"]'.format(
            node(arc.tail), node(arc.head), color, style, arc_id))

    append('}')
    return '\n'.join(lines)
