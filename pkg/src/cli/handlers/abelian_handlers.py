"""
Команды абелевой алгебры Кулона: present, poisson, quantize-check, lie, localize
"""
import logging

from src.exceptions import InputError
from src.models.run_config import RunConfig
from src.services.element_parser import ElementParser, format_lattice

from .base_handlers import BaseHandlers

logger = logging.getLogger(__name__)


class AbelianHandlers(BaseHandlers):

    def register(self, subparsers):
        present = self.cli.add_command(
            subparsers, "present", self.handle_present,
            "generators and relations of the Coulomb branch of a torus theory",
        )
        present.add_argument("theory")
        present.add_argument("--order", type=int, help="recheck sufficiency through this t-degree")

        poisson = self.cli.add_command(
            subparsers, "poisson", self.handle_poisson, "Poisson bracket of two elements",
        )
        poisson.add_argument("theory")
        poisson.add_argument("--expr", nargs=2, required=True, metavar=("A", "B"),
                             help="elements such as 'w^2*E[1]' or '3*h - E[-1]'")

        quantize = self.cli.add_command(
            subparsers, "quantize-check", self.handle_quantize_check,
            "randomized associativity / classical-limit / ħ-divisibility check",
        )
        quantize.add_argument("theory")
        quantize.add_argument("--trials", type=int)
        quantize.add_argument("--seed", type=int)

        lie = self.cli.add_command(
            subparsers, "lie", self.handle_lie, "Lie algebra on the t-degree 2 part",
        )
        lie.add_argument("theory")

        localize = self.cli.add_command(
            subparsers, "localize", self.handle_localize,
            "witness that E[λ] becomes invertible after inverting the weights",
        )
        localize.add_argument("theory")
        localize.add_argument("--lambda", dest="lattice_point", required=True,
                              help="lattice point, e.g. --lambda=1,-1")

    def handle_present(self, cfg: RunConfig) -> int:
        algebra = self.load_algebra(cfg.input_path)
        presentation = self.cli.presentation_builder.presentation(algebra, check_order=cfg.order)
        result = {
            "generators": [
                {
                    "name": g.name,
                    "degree": g.t_degree,
                    "weight": list(g.pi1_weight),
                    "lattice_point": list(g.lattice_point) if g.lattice_point is not None else None,
                    "scale": str(g.scale),
                }
                for g in presentation.generators
            ],
            "relations": [r.text for r in presentation.relations],
            "laurent": presentation.laurent,
            "checked_order": presentation.checked_order,
        }
        self.cli.emit(cfg, presentation.render(), result)
        return 0

    def handle_poisson(self, cfg: RunConfig) -> int:
        algebra = self.load_algebra(cfg.input_path)
        if len(cfg.exprs) != 2:
            raise InputError("poisson needs exactly two elements")
        parser = ElementParser(algebra)
        a, b = (parser.parse(text) for text in cfg.exprs)
        bracket = self.cli.algebra_service.poisson_bracket(algebra, a, b)
        self.cli.emit(cfg, str(bracket), {"a": str(a), "b": str(b), "bracket": str(bracket)})
        return 0

    def handle_quantize_check(self, cfg: RunConfig) -> int:
        algebra = self.load_algebra(cfg.input_path)
        settings = self.cli.settings
        seed = settings.random_seed if cfg.seed is None else cfg.seed
        trials = settings.quantize_trials if cfg.trials is None else cfg.trials
        result = self.cli.verification_service.quantization_suite(algebra, trials, seed)
        self.cli.emit(cfg, str(result), result.model_dump())
        return 0

    def handle_lie(self, cfg: RunConfig) -> int:
        algebra = self.load_algebra(cfg.input_path)
        basis, table = self.cli.algebra_service.degree_two_lie_algebra(algebra)
        lines = [f"dim = {len(basis)}"]
        lines += [f"  b{i} = {element}" for i, element in enumerate(basis)]
        brackets = []
        for (i, j), row in sorted(table.items()):
            rhs = " + ".join(f"{coeff}*b{k}" for k, coeff in sorted(row.items()))
            lines.append(f"  [b{i}, b{j}] = {rhs}")
            brackets.append({"i": i, "j": j, "value": {str(k): str(c) for k, c in sorted(row.items())}})
        self.cli.emit(cfg, "\n".join(lines), {
            "dimension": len(basis),
            "basis": [str(element) for element in basis],
            "brackets": brackets,
        })
        return 0

    def handle_localize(self, cfg: RunConfig) -> int:
        algebra = self.load_algebra(cfg.input_path)
        lam = cfg.lattice_point
        if lam is None or len(lam) != algebra.rank:
            raise InputError(f"--lambda needs {algebra.rank} integers")
        witness = self.cli.algebra_service.localization_units(algebra, lam)
        logger.debug(f"🔓 {format_lattice(lam)} обратим после локализации")
        self.cli.emit(cfg, str(witness), witness.model_dump(mode="json"))
        return 0
