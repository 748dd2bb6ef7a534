"""
Команда from-quiver: колчан → файл калибровочной теории
"""
import logging
from pathlib import Path

from src.exceptions import TheoryValidationError
from src.models.run_config import RunConfig

from .base_handlers import BaseHandlers

logger = logging.getLogger(__name__)


class QuiverHandlers(BaseHandlers):

    def register(self, subparsers):
        parser = self.cli.add_command(
            subparsers, "from-quiver", self.handle_from_quiver,
            "derive the gauge theory (gl/torus/weight) of a quiver",
        )
        parser.add_argument("quiver", help="quiver file (vertex/edge directives)")
        parser.add_argument("-o", "--output", dest="output_path", help="write the theory file here")

    def handle_from_quiver(self, cfg: RunConfig) -> int:
        quiver = self.cli.file_parser.parse_quiver_file(cfg.input_path)
        theory = self.cli.theory_service.from_quiver(quiver)
        text = self.cli.theory_service.render_theory(theory)

        # Выведенный текст обязан разбираться обратно в ту же теорию
        if self.cli.file_parser.parse_theory_text(text) != theory:
            raise TheoryValidationError("derived theory does not survive a round trip through the file format")

        if cfg.output_path:
            Path(cfg.output_path).write_text(text, encoding="utf-8")
            logger.info(f"💾 Теория записана в {cfg.output_path}")
        self.cli.emit(cfg, text.rstrip("\n"), {
            "gl": list(theory.gl_factors),
            "torus": theory.torus_rank,
            "weights": [list(w) for w in theory.weights],
            "output": cfg.output_path,
        })
        return 0
