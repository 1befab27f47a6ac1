"""
Núcleo de funcionalidades do pathagg

Este módulo contém as funcionalidades centrais do pathagg:
- Modelo e validação de instâncias
- Resolvedor por agregação de caminhos
- Verificação independente de soluções e traços
- Linha de base por caminhos pesados e oráculo exato
- Geradores de instâncias e execução em lote
"""

# Exportar componentes principais para facilitar importação
from pathagg.core.instance import Instance, parse_instance, serialize_instance, validate_instance
from pathagg.core.aggregation import Solution, Trace, solve
from pathagg.core.verification import check_arborescence, check_trace, switching_costs
from pathagg.core.heavy_paths import heavy_path_decomposition, is_tree_instance, solve_tree_instance
from pathagg.core.oracle import SearchLimits, brute_force_opt
from pathagg.core.generators import GenSpec, generate
