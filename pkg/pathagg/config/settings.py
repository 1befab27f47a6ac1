"""
Configurações do pathagg.

Este módulo contém todas as configurações e parâmetros do sistema,
carregados do arquivo .env e com valores padrão quando não definidos.
"""
import os
import logging
from pathlib import Path
from dotenv import load_dotenv

# Carregar variáveis de ambiente do arquivo .env
load_dotenv()

# Configuração de logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)

# Diretórios base
BASE_DIR = Path(__file__).resolve().parent.parent.parent
ENV_FILE = os.getenv("PATHAGG_ENV_FILE", os.path.join(BASE_DIR, ".env"))
DATA_DIR = os.getenv("DATA_DIR", os.path.join(BASE_DIR, "data"))
INSTANCES_DIR = os.getenv("INSTANCES_DIR", os.path.join(DATA_DIR, "instances"))
RUNS_DIR = os.getenv("RUNS_DIR", os.path.join(DATA_DIR, "runs"))
LOGS_DIR = os.getenv("LOGS_DIR", os.path.join(DATA_DIR, "logs"))

# Configurações gerais
APP_NAME = os.getenv("APP_NAME", "pathagg")
APP_DESCRIPTION = os.getenv(
    "APP_DESCRIPTION",
    "Agregação de caminhos de Steiner com poucas trocas de cor",
)

# Configurações dos geradores
DEFAULT_SEED = int(os.getenv("PATHAGG_SEED", "0"))

# Configurações do oráculo de força bruta
ORACLE_MAX_STATES = int(os.getenv("ORACLE_MAX_STATES", "10000000"))

# Configurações do benchmark
BENCH_JOBS = int(os.getenv("BENCH_JOBS", "1"))
BENCH_TIME_BUDGET = float(os.getenv("BENCH_TIME_BUDGET", "1.0"))  # segundos por instância

# Configurações de logging
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()
ENABLE_DEBUG_LOGGING = os.getenv("ENABLE_DEBUG_LOGGING", "False").lower() in ('true', '1', 't')

# Ajustar nível de logging se necessário
if ENABLE_DEBUG_LOGGING:
    logging.getLogger().setLevel(logging.DEBUG)
else:
    logging.getLogger().setLevel(getattr(logging, LOG_LEVEL, logging.INFO))


def verify_config() -> bool:
    """
    Verifica se as configurações necessárias estão presentes.

    Cria os diretórios de dados quando não existem.

    Returns:
        bool: True se todos os diretórios estão disponíveis
    """
    all_ok = True

    # Verificar diretórios
    for dir_path in [DATA_DIR, INSTANCES_DIR, RUNS_DIR, LOGS_DIR]:
        if not os.path.exists(dir_path):
            try:
                os.makedirs(dir_path, exist_ok=True)
                logging.getLogger(__name__).info(f"Diretório criado: {dir_path}")
            except OSError as e:
                logging.getLogger(__name__).warning(
                    f"Não foi possível criar o diretório {dir_path}: {str(e)}"
                )
                all_ok = False

    return all_ok
