"""
Базовый класс обработчиков команд: общие загрузчики и разбор векторов
"""
import logging
from typing import Optional, Tuple

from src.exceptions import InputError
from src.models.algebra import AbelianAlgebra
from src.models.theory import GaugeTheory

logger = logging.getLogger(__name__)


def parse_vector(text: Optional[str], what: str) -> Optional[Tuple[int, ...]]:
    """'1,-2,0' → (1, -2, 0); пустая строка - вектор длины 0"""
    if text is None:
        return None
    body = text.strip().strip("()[]")
    if not body:
        return ()
    try:
        return tuple(int(x) for x in body.replace(" ", "").split(","))
    except ValueError:
        raise InputError(f"bad {what} '{text}': expected comma-separated integers")


class BaseHandlers:
    """Общее для всех групп команд"""

    def __init__(self, cli_instance):
        self.cli = cli_instance  # Ссылка на CoulombCli

    def register(self, subparsers):
        raise NotImplementedError

    def load_theory(self, path: str) -> GaugeTheory:
        theory = self.cli.file_parser.parse_theory_file(path)
        logger.debug(f"📄 {path}: rank={theory.total_rank}")
        return theory

    def load_algebra(self, path: str) -> AbelianAlgebra:
        return self.cli.algebra_service.algebra_from_theory(self.load_theory(path))
