#!/usr/bin/env python
"""
pathagg - Ponto de entrada principal

Este script inicia a interface de linha de comando do pathagg.
"""
import sys

from pathagg.cli.app import launch_app
from pathagg.config.settings import verify_config

if __name__ == "__main__":
    # Verificar configurações antes de iniciar
    config_ok = verify_config()
    if not config_ok:
        print("AVISO: Alguns diretórios de dados não puderam ser criados. Comandos que gravam arquivos podem falhar.")

    sys.exit(launch_app())
