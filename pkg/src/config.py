import logging
import os
from typing import Optional

from pydantic import field_validator
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # Параллелизм (COULOMB_THREADS); None = все ядра машины
    threads: Optional[int] = None

    # Ряды Гильберта
    default_order: int = 8
    presentation_check_order: int = 6  # до какой степени перепроверять копредставление

    # Ветвь Хиггса
    higgs_degree_cap: int = 12  # защита от комбинаторного взрыва

    # Случайные проверки
    quantize_trials: int = 100
    random_seed: int = 20240601

    log_level: str = "WARNING"

    @field_validator("threads")
    @classmethod
    def _positive_threads(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value <= 0:
            raise ValueError("COULOMB_THREADS must be a positive integer")
        return value

    class Config:
        env_prefix = "COULOMB_"
        env_file = ".env"
        env_file_encoding = "utf-8"
        case_sensitive = False
        extra = "ignore"

    def worker_count(self) -> int:
        """Сколько потоков реально использовать"""
        if self.threads:
            return self.threads
        return os.cpu_count() or 1


settings = Settings()

logger = logging.getLogger(__name__)
logger.debug(f"🔍 Config загружен: threads={settings.threads}, default_order={settings.default_order}")
