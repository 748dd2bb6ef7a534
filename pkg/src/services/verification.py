"""
Встроенные рандомизированные проверки: ассоциативность квантования, аксиомы Пуассона,
локализация, копредставления и сравнение формулы монополей с независимым оракулом.

Каждый набор получает явный seed; при провале VerificationFailure содержит seed и контрпример.
"""
import itertools
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel

from src.config import Settings, settings as default_settings
from src.exceptions import VerificationFailure
from src.models.algebra import AbelianAlgebra, AbelianElement
from src.models.theory import GaugeTheory
from src.services.abelian_algebra import AbelianCoulombAlgebra
from src.services.cone_geometry import rank_of
from src.services.monopole_service import MonopoleService
from src.services.presentation_builder import PresentationBuilder
from src.services.theory_service import TheoryService

logger = logging.getLogger(__name__)

# Набор торических теорий по умолчанию: (ранг, веса)
DEFAULT_ALGEBRAS: Tuple[Tuple[int, Tuple[Tuple[int, ...], ...]], ...] = (
    (1, ((1,),)),
    (1, ((2,),)),
    (1, ((1,), (1,))),
    (1, ()),
    (2, ((1, 0), (1, 1))),
    (2, ((1, 0), (0, 1), (1, 1))),
    (2, ((1, -1), (0, 2))),
)


class SuiteResult(BaseModel):
    name: str
    checks: int
    seed: Optional[int] = None

    def __str__(self) -> str:
        seed = f" seed={self.seed}" if self.seed is not None else ""
        return f"ok  {self.name}  checks={self.checks}{seed}"


class VerificationService:
    def __init__(
        self,
        algebra_service: Optional[AbelianCoulombAlgebra] = None,
        monopole_service: Optional[MonopoleService] = None,
        presentation_builder: Optional[PresentationBuilder] = None,
        theory_service: Optional[TheoryService] = None,
        settings: Optional[Settings] = None,
    ):
        self.settings = settings or default_settings
        self.algebra_service = algebra_service or AbelianCoulombAlgebra()
        self.monopole_service = monopole_service or MonopoleService(self.settings)
        self.presentation_builder = presentation_builder or PresentationBuilder(self.algebra_service, self.settings)
        self.theory_service = theory_service or TheoryService()

    # ------------------------------------------------------------------
    # Случайные данные
    # ------------------------------------------------------------------
    @staticmethod
    def random_element(A: AbelianAlgebra, rng: np.random.Generator, with_hbar: bool = False) -> AbelianElement:
        """Сумма 1-3 слагаемых c · w^a (ħ^b) e^λ с маленькими λ и коэффициентами"""
        result = A.zero()
        for _ in range(int(rng.integers(1, 4))):
            lam = tuple(int(x) for x in rng.integers(-2, 3, size=A.rank))
            poly = A.ring.one * int(rng.integers(-3, 4) or 1)
            for w in A.w:
                poly = poly * w ** int(rng.integers(0, 2))
            if with_hbar and rng.integers(0, 2):
                poly = poly * A.hbar
            result = result + A.monomial(lam, poly)
        if result.is_zero():
            return A.one()
        return result

    def random_good_theory(self, rng: np.random.Generator, max_rank: int = 3, max_weights: int = 6) -> GaugeTheory:
        """Случайная торическая теория с весами, порождающими ℝ^r (иначе ряд расходится)"""
        while True:
            rank = int(rng.integers(1, max_rank + 1))
            n_weights = int(rng.integers(rank, max_weights + 1))
            weights = [tuple(int(x) for x in rng.integers(-3, 4, size=rank)) for _ in range(n_weights)]
            if rank_of(weights) == rank:
                return self.theory_service.build_theory(gl_factors=(), torus_rank=rank, weights=tuple(weights))

    def default_algebras(self) -> List[AbelianAlgebra]:
        return [AbelianAlgebra(rank=r, weights=w) for r, w in DEFAULT_ALGEBRAS]

    @staticmethod
    def _fail(name: str, seed, message: str):
        raise VerificationFailure(f"{name} failed (seed={seed}): {message}")

    # ------------------------------------------------------------------
    # Наборы
    # ------------------------------------------------------------------
    def quantization_suite(self, A: AbelianAlgebra, trials: int, seed: int) -> SuiteResult:
        """Ассоциативность, классический предел и делимость коммутатора на ħ"""
        name = f"quantization{list(A.weights)}"
        service = self.algebra_service
        rng = np.random.default_rng(seed)
        for _ in range(trials):
            a, b, c = (self.random_element(A, rng, with_hbar=True) for _ in range(3))
            left = service.multiply_quantized(A, service.multiply_quantized(A, a, b), c)
            right = service.multiply_quantized(A, a, service.multiply_quantized(A, b, c))
            if left != right:
                self._fail(name, seed, f"({a})({b})({c}) is not associative")

            x, y = (self.random_element(A, rng) for _ in range(2))
            limit = service.multiply_quantized(A, x, y).set_hbar_zero()
            if limit != service.multiply_classical(A, x, y):
                self._fail(name, seed, f"classical limit differs for ({x})({y})")
            service.commutator(A, x, y).divide_by_hbar()
        return SuiteResult(name=name, checks=trials, seed=seed)

    def poisson_suite(self, A: AbelianAlgebra, trials: int, seed: int) -> SuiteResult:
        """Антисимметрия, Лейбниц, Якоби и действие {w_i, -}"""
        name = f"poisson{list(A.weights)}"
        service = self.algebra_service
        bracket = service.poisson_bracket
        rng = np.random.default_rng(seed)
        for _ in range(trials):
            a, b, c = (self.random_element(A, rng) for _ in range(3))
            if bracket(A, a, b) != -bracket(A, b, a):
                self._fail(name, seed, f"antisymmetry fails for {a}, {b}")
            leibniz = bracket(A, a, service.multiply_classical(A, b, c))
            expected = (
                service.multiply_classical(A, bracket(A, a, b), c)
                + service.multiply_classical(A, b, bracket(A, a, c))
            )
            if leibniz != expected:
                self._fail(name, seed, f"Leibniz rule fails for {a}, {b}, {c}")
            jacobi = (
                bracket(A, a, bracket(A, b, c))
                + bracket(A, b, bracket(A, c, a))
                + bracket(A, c, bracket(A, a, b))
            )
            if not jacobi.is_zero():
                self._fail(name, seed, f"Jacobi identity fails for {a}, {b}, {c}")

        for i in range(A.rank):
            for j in range(A.rank):
                if not bracket(A, A.w_element(i), A.w_element(j)).is_zero():
                    self._fail(name, seed, f"{{w{i + 1}, w{j + 1}}} != 0")
            lam = tuple(int(x) for x in rng.integers(-3, 4, size=A.rank))
            e = A.monomial(lam)
            if bracket(A, A.w_element(i), e) != e.scale(-lam[i]):
                self._fail(name, seed, f"{{w{i + 1}, E{list(lam)}}} != {-lam[i]}*E{list(lam)}")
        return SuiteResult(name=name, checks=trials, seed=seed)

    def localization_suite(self, A: AbelianAlgebra, radius: int = 3) -> SuiteResult:
        count = 0
        for lam in itertools.product(range(-radius, radius + 1), repeat=A.rank):
            self.algebra_service.localization_units(A, lam)
            count += 1
        return SuiteResult(name=f"localization{list(A.weights)}", checks=count)

    def presentation_suite(self, A: AbelianAlgebra, order: int) -> SuiteResult:
        presentation = self.presentation_builder.presentation(A, check_order=order)
        return SuiteResult(name=f"presentation{list(A.weights)}", checks=len(presentation.relations))

    def oracle_suite(self, theories: Sequence[GaugeTheory], order: int, seed: Optional[int] = None) -> SuiteResult:
        """Коэффициенты формулы монополей равны числу мономов w^a e^λ, в том числе по классам λ"""
        checks = 0
        for th in theories:
            A = self.algebra_service.algebra_from_theory(th)
            refined = self.monopole_service.hilbert_series(th, order, refined=True)
            for d in range(order + 1):
                buckets = self.algebra_service.graded_dimension(A, d, refined=True)
                series_buckets = {
                    fug: int(c) for t, fug, c in refined.terms() if t == d
                }
                if buckets != series_buckets:
                    self._fail(
                        "oracle", seed,
                        f"theory {list(th.weights)} differs at t^{d}: monopole={series_buckets} oracle={buckets}",
                    )
                checks += 1
        return SuiteResult(name="oracle", checks=checks, seed=seed)

    def run_all(self, seed: Optional[int] = None, trials: Optional[int] = None, order: Optional[int] = None) -> List[SuiteResult]:
        seed = self.settings.random_seed if seed is None else seed
        trials = self.settings.quantize_trials if trials is None else trials
        order = self.settings.default_order if order is None else order
        logger.info(f"🎲 Проверки: seed={seed}, trials={trials}, order={order}")

        results = []
        for k, A in enumerate(self.default_algebras()):
            results.append(self.quantization_suite(A, trials, seed + k))
            results.append(self.poisson_suite(A, max(trials // 4, 1), seed + k))
            results.append(self.localization_suite(A, radius=3 if A.rank == 1 else 2))
            results.append(self.presentation_suite(A, min(order, self.settings.presentation_check_order)))

        rng = np.random.default_rng(seed)
        theories = [self.random_good_theory(rng) for _ in range(20)]
        results.append(self.oracle_suite(theories, order, seed))
        return results
