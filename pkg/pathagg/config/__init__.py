"""
Configurações do pathagg

Este módulo centraliza as configurações da aplicação:
- Carregamento de variáveis de ambiente
- Configurações de pastas e caminhos
- Parâmetros padrão do gerador, do oráculo e do benchmark
"""
