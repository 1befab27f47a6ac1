"""
pathagg - Agregação de caminhos de Steiner

Este pacote implementa a agregação de caminhos monocromáticos propostos em uma
única arborescência com poucas trocas de cor, junto com verificação de
invariantes por iteração, a decomposição em caminhos pesados para árvores,
geradores de instâncias e um oráculo de força bruta.
"""

__version__ = "0.1.0"
