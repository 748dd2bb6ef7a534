"""
Команда verify: все встроенные наборы проверок
"""
import logging

from src.models.run_config import RunConfig

from .base_handlers import BaseHandlers

logger = logging.getLogger(__name__)


class VerifyHandlers(BaseHandlers):

    def register(self, subparsers):
        parser = self.cli.add_command(
            subparsers, "verify", self.handle_verify,
            "run the built-in property and oracle suites",
        )
        parser.add_argument("--seed", type=int)
        parser.add_argument("--trials", type=int)
        parser.add_argument("--order", type=int)

    def handle_verify(self, cfg: RunConfig) -> int:
        seed = self.cli.settings.random_seed if cfg.seed is None else cfg.seed
        if not cfg.as_json:
            self.cli.write(f"seed={seed}")
        results = self.cli.verification_service.run_all(seed=seed, trials=cfg.trials, order=cfg.order)
        lines = [str(r) for r in results]
        lines.append(f"all {len(results)} suites passed")
        self.cli.emit(cfg, "\n".join(lines), {
            "seed": seed,
            "suites": [r.model_dump() for r in results],
        })
        return 0
