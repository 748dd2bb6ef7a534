"""
Модуль обработчиков команд CLI
"""
import argparse
import json
import logging
import sys
from typing import Callable, Dict, Optional, TextIO

from src.config import Settings, settings as default_settings
from src.models.run_config import RunConfig
from src.services.abelian_algebra import AbelianCoulombAlgebra
from src.services.higgs_service import HiggsService
from src.services.monopole_service import MonopoleService
from src.services.presentation_builder import PresentationBuilder
from src.services.theory_parser import TheoryFileParser
from src.services.theory_service import TheoryService
from src.services.verification import VerificationService

logger = logging.getLogger(__name__)

EPILOG = """\
element syntax (poisson --expr):  3*w^2*E[1,-1] - 1/2*h*w1 + E[0,2]
  at most one E[...] per term, written last; w alone is allowed at rank 1.
t-exponents are twice the conformal dimension: w has degree 2, t^1 = Δ 1/2.
exit codes: 0 success, 1 mathematical verdict (divergence, mismatch), 2 bad input.
"""


class CoulombCli:
    """Главный класс CLI: сервисы и обработчики команд"""

    def __init__(self, settings: Optional[Settings] = None, out: Optional[TextIO] = None):
        self.settings = settings or default_settings
        self.out = out or sys.stdout

        # Инициализация сервисов
        self.theory_service = TheoryService()
        self.file_parser = TheoryFileParser(self.theory_service)
        self.monopole_service = MonopoleService(self.settings)
        self.algebra_service = AbelianCoulombAlgebra()
        self.presentation_builder = PresentationBuilder(self.algebra_service, self.settings)
        self.higgs_service = HiggsService(self.monopole_service, self.theory_service, self.settings)
        self.verification_service = VerificationService(
            algebra_service=self.algebra_service,
            monopole_service=self.monopole_service,
            presentation_builder=self.presentation_builder,
            theory_service=self.theory_service,
            settings=self.settings,
        )

        self._commands: Dict[str, Callable[[RunConfig], int]] = {}

        # Импорт при инициализации, чтобы избежать циклических импортов
        from .abelian_handlers import AbelianHandlers
        from .duality_handlers import DualityHandlers
        from .hilbert_handlers import HilbertHandlers
        from .quiver_handlers import QuiverHandlers
        from .verify_handlers import VerifyHandlers

        self.hilbert = HilbertHandlers(self)
        self.abelian = AbelianHandlers(self)
        self.duality = DualityHandlers(self)
        self.quivers = QuiverHandlers(self)
        self.verify = VerifyHandlers(self)

    def add_command(self, subparsers, name: str, handler: Callable[[RunConfig], int], help_text: str):
        parser = subparsers.add_parser(name, help=help_text, description=help_text)
        parser.set_defaults(command=name)
        self._commands[name] = handler
        return parser

    def build_parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(
            prog="coulomb",
            description="Coulomb branches of 3d N=4 gauge theories",
            epilog=EPILOG,
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )
        parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
        parser.add_argument("--debug", action="store_true", help="debug logging")
        parser.add_argument("--json", dest="as_json", action="store_true", help="machine-readable output")
        subparsers = parser.add_subparsers(dest="command", metavar="command", required=True)
        self.register_handlers(subparsers)
        return parser

    def register_handlers(self, subparsers):
        """Регистрация всех обработчиков"""
        self.hilbert.register(subparsers)
        self.abelian.register(subparsers)
        self.duality.register(subparsers)
        self.quivers.register(subparsers)
        self.verify.register(subparsers)
        logger.debug(f"✅ Зарегистрировано команд: {len(self._commands)}")

    def run(self, cfg: RunConfig) -> int:
        handler = self._commands[cfg.command]
        logger.info(f"▶️ {cfg.command} {cfg.input_path or ''}".rstrip())
        return handler(cfg)

    # ------------------------------------------------------------------
    # Вывод
    # ------------------------------------------------------------------
    def write(self, text: str):
        self.out.write(text + "\n")
        self.out.flush()

    def emit(self, cfg: RunConfig, text: str, result: dict):
        """Текст для человека или JSON {command, input, result}"""
        if cfg.as_json:
            payload = {"command": cfg.command, "input": cfg.input_path, "result": result}
            self.write(json.dumps(payload, ensure_ascii=False, sort_keys=True))
        else:
            self.write(text)
