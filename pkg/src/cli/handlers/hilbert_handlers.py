"""
Команда hilbert: ряд Гильберта по формуле монополей
"""
import logging

from src.models.run_config import RunConfig

from .base_handlers import BaseHandlers

logger = logging.getLogger(__name__)


class HilbertHandlers(BaseHandlers):

    def register(self, subparsers):
        parser = self.cli.add_command(
            subparsers, "hilbert", self.handle_hilbert,
            "monopole-formula Hilbert series (exponents are 2Δ, t² per Casimir degree 1)",
        )
        parser.add_argument("theory", help="theory file (gl/torus/weight)")
        parser.add_argument("--order", type=int, required=True, help="truncation order in t")
        parser.add_argument("--refined", action="store_true", help="track π₁ fugacities z")
        parser.add_argument("--shift", help="character ξ shifting exponents by <ξ, π₁-class>, e.g. --shift=1,0")

    def handle_hilbert(self, cfg: RunConfig) -> int:
        theory = self.load_theory(cfg.input_path)
        series = self.cli.monopole_service.hilbert_series(
            theory, cfg.order, refined=cfg.refined, shift=cfg.shift
        )
        self.cli.emit(cfg, str(series), {
            "order": cfg.order,
            "refined": cfg.refined,
            "terms": series.to_json_terms(),
        })
        return 0
