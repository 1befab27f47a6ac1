"""
Gerenciador de configurações para o pathagg.

Este módulo permite gerenciar as configurações do sistema, incluindo
modificações em tempo de execução e persistência das configurações.
"""
import os
import logging
from typing import Dict, Any

# Configurações
import pathagg.config.settings as settings

# Configurar logging
logger = logging.getLogger(__name__)


class SettingsManager:
    """
    Gerencia as configurações do pathagg.

    Permite atualizar configurações em tempo de execução e persistir
    as alterações no arquivo .env.
    """

    def __init__(self):
        """Inicializa o gerenciador de configurações."""
        self.current_settings = self.get_current_settings()

    def update_default_seed(self, seed: int) -> bool:
        """
        Atualiza a semente padrão dos geradores.

        Args:
            seed: Semente de 64 bits

        Returns:
            bool: True se a atualização foi bem-sucedida
        """
        if not 0 <= seed < 2 ** 64:
            logger.error(f"Semente inválida: {seed}. Use um inteiro entre 0 e 2^64 - 1.")
            return False

        self.current_settings['PATHAGG_SEED'] = seed
        settings.DEFAULT_SEED = seed
        saved = self._save_to_env("PATHAGG_SEED", str(seed))
        logger.info(f"Semente padrão configurada para: {seed}")
        return saved

    def update_oracle_limit(self, max_states: int) -> bool:
        """
        Atualiza o limite de estados do oráculo de força bruta.

        Args:
            max_states: Tamanho máximo do espaço de busca nominal

        Returns:
            bool: True se a atualização foi bem-sucedida
        """
        if max_states < 1:
            logger.error(f"Limite de estados inválido: {max_states}")
            return False

        self.current_settings['ORACLE_MAX_STATES'] = max_states
        settings.ORACLE_MAX_STATES = max_states
        saved = self._save_to_env("ORACLE_MAX_STATES", str(max_states))
        logger.info(f"Limite do oráculo atualizado: {max_states} estados")
        return saved

    def update_bench_jobs(self, jobs: int) -> bool:
        """
        Atualiza o número de processos do benchmark.

        Args:
            jobs: Número de processos (1 a os.cpu_count())

        Returns:
            bool: True se a atualização foi bem-sucedida
        """
        cpus = os.cpu_count() or 1
        if jobs < 1:
            logger.error(f"Número de processos inválido: {jobs}")
            return False
        if jobs > cpus:
            logger.warning(f"{jobs} processos excedem os {cpus} núcleos disponíveis. Usando {cpus}.")
            jobs = cpus

        self.current_settings['BENCH_JOBS'] = jobs
        settings.BENCH_JOBS = jobs
        saved = self._save_to_env("BENCH_JOBS", str(jobs))
        logger.info(f"Processos do benchmark atualizados: {jobs}")
        return saved

    def get_current_settings(self) -> Dict[str, Any]:
        """
        Retorna as configurações atuais.

        Returns:
            Dict[str, Any]: Configurações atuais
        """
        return {
            "PATHAGG_SEED": settings.DEFAULT_SEED,
            "ORACLE_MAX_STATES": settings.ORACLE_MAX_STATES,
            "BENCH_JOBS": settings.BENCH_JOBS,
            "BENCH_TIME_BUDGET": settings.BENCH_TIME_BUDGET,
            "DATA_DIR": settings.DATA_DIR,
            "LOG_LEVEL": settings.LOG_LEVEL,
            "ENABLE_DEBUG_LOGGING": settings.ENABLE_DEBUG_LOGGING,
        }

    def _save_to_env(self, key: str, value: str) -> bool:
        """
        Salva uma configuração no arquivo .env.

        Args:
            key: Nome da configuração
            value: Valor da configuração

        Returns:
            bool: True se a operação foi bem-sucedida
        """
        env_path = settings.ENV_FILE
        try:
            if not os.path.exists(env_path):
                logger.warning(f"Arquivo .env não encontrado em {env_path}. Criando arquivo...")
                with open(env_path, 'w', encoding='utf-8') as f:
                    f.write(f"{key}={value}\n")
                return True

            with open(env_path, 'r', encoding='utf-8') as f:
                lines = f.readlines()

            # Substituir a chave existente ou acrescentar ao final
            for i, line in enumerate(lines):
                if line.strip().startswith(f"{key}="):
                    lines[i] = f"{key}={value}\n"
                    break
            else:
                lines.append(f"{key}={value}\n")

            with open(env_path, 'w', encoding='utf-8') as f:
                f.writelines(lines)

            logger.info(f"Configuração '{key}' atualizada no arquivo .env")
            return True
        except OSError as e:
            logger.error(f"Erro ao salvar configuração no arquivo .env: {str(e)}")
            return False


# Instância global para uso em toda a aplicação
settings_manager = SettingsManager()
