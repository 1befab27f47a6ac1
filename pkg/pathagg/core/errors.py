"""
Exceções do pathagg.

Relatórios (validação, arborescência, invariantes) são devolvidos como valores;
as exceções abaixo sinalizam entradas inutilizáveis ou contradições internas.
"""
from typing import Any, Optional


class PathAggError(Exception):
    """Erro base do pathagg."""


class InstanceFormatError(PathAggError):
    """Documento de instância malformado, campo desconhecido ou id pendente."""


class InvalidInstanceError(PathAggError):
    """Instância que viola as invariantes; carrega o relatório de validação."""

    def __init__(self, report: Any):
        self.report = report
        rules = ", ".join(sorted({v.rule for v in report.violations}))
        super().__init__(f"Instância inválida ({len(report.violations)} violações: {rules})")


class WalkError(PathAggError, ValueError):
    """Passeio não contíguo, não monocromático ou que não termina na raiz."""


class ColoringError(PathAggError):
    """Componente com mais arestas do que vértices (não é pseudofloresta)."""


class SolverInvariantError(PathAggError):
    """Contradição interna do resolvedor; indica um bug, nunca uma entrada ruim."""


class NotTreeInstanceError(PathAggError):
    """A instância não é uma árvore segundo is_tree_instance."""


class BaselineError(PathAggError):
    """Caminho pesado cujo nó mais baixo não tem caminho proposto que o cubra."""

    def __init__(self, message: str, vertex: Optional[int] = None):
        self.vertex = vertex
        super().__init__(message)


class SearchLimitError(PathAggError):
    """O espaço de busca do oráculo excede o limite configurado."""

    def __init__(self, search_space: int, max_states: int):
        self.search_space = search_space
        self.max_states = max_states
        super().__init__(
            f"Espaço de busca {search_space} excede o limite de {max_states} estados"
        )


class TraceFormatError(PathAggError):
    """Documento de traço ou de solução malformado."""


class TraceMismatchError(PathAggError):
    """O hash registrado no traço ou na solução não corresponde à instância."""
