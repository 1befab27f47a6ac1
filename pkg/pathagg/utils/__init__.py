"""
Utilitários para o pathagg

Este módulo contém funções utilitárias usadas em diversos componentes do sistema:
- Limites exatos em base 4/3 e base 2
- Exportação DOT das soluções
"""
