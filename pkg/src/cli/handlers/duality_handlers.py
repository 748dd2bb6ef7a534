"""
Команда check-duality: ряд Кулона для T на ℂ^d против ряда Хиггса для T_F^∨
"""
import logging

from src.exceptions import DualityMismatch
from src.models.run_config import RunConfig

from .base_handlers import BaseHandlers

logger = logging.getLogger(__name__)


class DualityHandlers(BaseHandlers):

    def register(self, subparsers):
        parser = self.cli.add_command(
            subparsers, "check-duality", self.handle_check_duality,
            "compare Coulomb and dual Higgs Hilbert series of an exact torus sequence",
        )
        parser.add_argument("sequence", help="sequence file (inclusion/projection rows)")
        parser.add_argument("--order", type=int, help="truncation order (default COULOMB_DEFAULT_ORDER)")

    def handle_check_duality(self, cfg: RunConfig) -> int:
        sequence = self.cli.file_parser.parse_sequence_file(cfg.input_path)
        order = self.cli.settings.default_order if cfg.order is None else cfg.order
        report = self.cli.higgs_service.check_toric_duality(sequence, order)
        self.cli.emit(cfg, report.render(), {
            "order": report.order,
            "rows": [row.model_dump() for row in report.rows],
            "matched": report.matched,
            "verdict": report.verdict(),
        })
        row = report.first_mismatch
        if row is not None:
            # таблица уже напечатана, вердикт уходит в stderr с кодом 1
            raise DualityMismatch(row.degree, row.coulomb, row.higgs)
        return 0
