"""
Алгебра Кулона абелевой теории: классическое и квантованное умножение, скобка Пуассона,
градуированные размерности (независимый оракул для формулы монополей) и локализация.

Соглашение квантования: e^λ q(w) = q(w + ħλ) e^λ.
Для веса ρ_j, a = ρ_j(λ), b = ρ_j(μ) множитель e^λ e^μ равен
∏_{k ∈ [lo, hi)} (ρ_j(w) + ħk), где lo = max(min(0,a), min(a,a+b)), hi = min(max(0,a), max(a,a+b)).
"""
import itertools
import logging
import math
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import linprog
from sympy.polys.rings import PolyElement

from src.exceptions import AlgebraError, DivergenceError, VerificationFailure
from src.models.algebra import AbelianAlgebra, AbelianElement, LocalizationWitness, to_fraction
from src.models.theory import GaugeTheory
from src.services.cone_geometry import normalize_line, nullspace, rank_of

logger = logging.getLogger(__name__)

Lattice = Tuple[int, ...]


def shift_interval(a: int, b: int) -> Tuple[int, int]:
    """Полуинтервал [lo, hi) сдвигов ħk для пары (ρ(λ), ρ(μ)) = (a, b)"""
    lo = max(min(0, a), min(a, a + b))
    hi = min(max(0, a), max(a, a + b))
    return lo, hi


def classical_exponent(a: int, b: int) -> int:
    """d(λ, μ) = (|a| + |b| - |a+b|) / 2"""
    return (abs(a) + abs(b) - abs(a + b)) // 2


class AbelianCoulombAlgebra:
    """Операции над элементами AbelianAlgebra"""

    def algebra_from_theory(self, th: GaugeTheory) -> AbelianAlgebra:
        if not th.is_abelian:
            raise AlgebraError(
                f"abelian algebra needs a torus theory, got gl factors {list(th.gl_factors)}"
            )
        return AbelianAlgebra(rank=th.torus_rank, weights=th.weights)

    # ------------------------------------------------------------------
    # Умножение
    # ------------------------------------------------------------------
    @staticmethod
    def _check(A: AbelianAlgebra, *elements: AbelianElement):
        for element in elements:
            if element.algebra != A:
                raise AlgebraError("element does not belong to the given algebra")

    def shift_polynomial(self, A: AbelianAlgebra, poly: PolyElement, lam: Sequence[int]) -> PolyElement:
        """q(w) ↦ q(w + ħλ)"""
        if not any(lam):
            return poly
        R = A.ring
        images = [w + c * A.hbar for w, c in zip(A.w, lam)]
        result = R.zero
        for monom, coeff in poly.items():
            term = R.ground_new(coeff)
            for image, e in zip(images, monom[:A.rank]):
                if e:
                    term = term * image ** e
            if monom[A.rank]:
                term = term * A.hbar ** monom[A.rank]
            result += term
        return result

    def structure_factor(self, A: AbelianAlgebra, lam: Lattice, mu: Lattice, quantized: bool) -> PolyElement:
        """Многочлен C(λ, μ) в e^λ e^μ = C(λ, μ) e^{λ+μ}"""
        factor = A.ring.one
        for rho in A.weights:
            a = A.pairing(rho, lam)
            b = A.pairing(rho, mu)
            form = A.linear_form(rho)
            if quantized:
                lo, hi = shift_interval(a, b)
                for k in range(lo, hi):
                    factor = factor * (form + k * A.hbar)
            else:
                d = classical_exponent(a, b)
                if d:
                    factor = factor * form ** d
        return factor

    def multiply_classical(self, A: AbelianAlgebra, a: AbelianElement, b: AbelianElement) -> AbelianElement:
        """Коммутативное произведение: e^λ e^μ = ∏ ρ_j(w)^{d_j} e^{λ+μ}"""
        self._check(A, a, b)
        if a.has_hbar() or b.has_hbar():
            raise AlgebraError("classical product takes ħ-free elements")
        product: Dict[Lattice, PolyElement] = {}
        for lam, p in a.terms():
            for mu, q in b.terms():
                target = tuple(x + y for x, y in zip(lam, mu))
                term = p * q * self.structure_factor(A, lam, mu, quantized=False)
                product[target] = product[target] + term if target in product else term
        return AbelianElement(A, product)

    def multiply_quantized(self, A: AbelianAlgebra, a: AbelianElement, b: AbelianElement) -> AbelianElement:
        """(p e^λ)(q e^μ) = p · q(w + ħλ) · C_ħ(λ, μ) e^{λ+μ}"""
        self._check(A, a, b)
        product: Dict[Lattice, PolyElement] = {}
        for lam, p in a.terms():
            for mu, q in b.terms():
                target = tuple(x + y for x, y in zip(lam, mu))
                term = p * self.shift_polynomial(A, q, lam) * self.structure_factor(A, lam, mu, quantized=True)
                product[target] = product[target] + term if target in product else term
        return AbelianElement(A, product)

    def commutator(self, A: AbelianAlgebra, a: AbelianElement, b: AbelianElement) -> AbelianElement:
        return self.multiply_quantized(A, a, b) - self.multiply_quantized(A, b, a)

    def poisson_bracket(self, A: AbelianAlgebra, a: AbelianElement, b: AbelianElement) -> AbelianElement:
        """{a, b} = (ab - ba)/ħ |_{ħ=0}"""
        self._check(A, a, b)
        if a.has_hbar() or b.has_hbar():
            raise AlgebraError("Poisson bracket takes ħ-free elements")
        try:
            divided = self.commutator(A, a, b).divide_by_hbar()
        except AlgebraError as e:
            raise VerificationFailure(f"commutator is not divisible by ħ: {e}") from e
        return divided.set_hbar_zero()

    def product_power(self, A: AbelianAlgebra, factors: Sequence[AbelianElement]) -> AbelianElement:
        """Классическое произведение списка элементов (пустой список = 1)"""
        result = A.one()
        for factor in factors:
            result = self.multiply_classical(A, result, factor)
        return result

    # ------------------------------------------------------------------
    # Градуированные размерности
    # ------------------------------------------------------------------
    def _lattice_box(self, A: AbelianAlgebra, d: int) -> List[Tuple[int, int]]:
        """
        Ящик, содержащий {λ : Σ_j |ρ_j(λ)| ≤ d}: границы λ_i из ЛП по переменным (λ, t),
        Σ t_j ≤ d, -t_j ≤ ρ_j(λ) ≤ t_j. Неограниченность означает расходимость.
        """
        rank = A.rank
        n_weights = len(A.weights)
        rho = np.array(A.weights, dtype=float).reshape(n_weights, rank)
        a_ub = np.zeros((2 * n_weights + 1, rank + n_weights))
        b_ub = np.zeros(2 * n_weights + 1)
        for j in range(n_weights):
            a_ub[2 * j, :rank] = rho[j]
            a_ub[2 * j, rank + j] = -1
            a_ub[2 * j + 1, :rank] = -rho[j]
            a_ub[2 * j + 1, rank + j] = -1
        a_ub[-1, rank:] = 1
        b_ub[-1] = d
        bounds = [(None, None)] * rank + [(0, None)] * n_weights

        box = []
        for i in range(rank):
            extremes = []
            for direction in (-1, 1):
                c = np.zeros(rank + n_weights)
                c[i] = -direction
                res = linprog(c=c, A_ub=a_ub, b_ub=b_ub, bounds=bounds, method="highs")
                if res.status == 3:
                    self._raise_divergent(A)
                if res.status != 0:
                    raise AlgebraError(f"bounding box LP failed: {res.message}")
                extremes.append(direction * -res.fun)
            box.append((math.floor(extremes[0]) - 1, math.ceil(extremes[1]) + 1))
        return box

    def _raise_divergent(self, A: AbelianAlgebra):
        kernel = nullspace(A.weights, A.rank) if rank_of(A.weights) < A.rank else []
        witness = normalize_line(kernel[0]) if kernel else (0,) * A.rank
        raise DivergenceError(witness, 0)

    def _lattice_points(self, A: AbelianAlgebra, d: int) -> List[Lattice]:
        """Все λ с 2Δ(λ) ≤ d в лексикографическом порядке"""
        if A.rank == 0:
            return [()]
        if rank_of(A.weights) < A.rank:
            self._raise_divergent(A)
        box = self._lattice_box(A, d)
        ranges = [range(lo, hi + 1) for lo, hi in box]
        return [lam for lam in itertools.product(*ranges) if A.twice_delta(lam) <= d]

    def graded_dimension(
        self, A: AbelianAlgebra, d: int, refined: bool = False
    ) -> Union[int, Dict[Lattice, int]]:
        """
        Число мономов w^a e^λ t-степени d = 2|a| + Σ_j |ρ_j(λ)|.

        refined: словарь λ → число мономов (классы π₁ абелевой теории совпадают с λ).
        """
        if d < 0:
            raise AlgebraError(f"degree must be nonnegative, got {d}")
        buckets: Dict[Lattice, int] = {}
        for lam in self._lattice_points(A, d):
            rest = d - A.twice_delta(lam)
            if rest % 2:
                continue
            k = rest // 2
            count = math.comb(k + A.rank - 1, A.rank - 1) if A.rank else int(k == 0)
            if count:
                buckets[lam] = count
        if refined:
            return buckets
        return sum(buckets.values())

    def graded_basis(self, A: AbelianAlgebra, d: int) -> List[AbelianElement]:
        """Мономиальный базис w^a e^λ степени d"""
        basis = []
        for lam in self._lattice_points(A, d):
            rest = d - A.twice_delta(lam)
            if rest % 2:
                continue
            k = rest // 2
            for combo in itertools.combinations_with_replacement(range(A.rank), k):
                poly = A.ring.one
                for i in combo:
                    poly = poly * A.w[i]
                basis.append(A.monomial(lam, poly))
        return basis

    # ------------------------------------------------------------------
    # Локализация и гамильтоновы действия
    # ------------------------------------------------------------------
    def localization_units(self, A: AbelianAlgebra, lam: Sequence[int]) -> LocalizationWitness:
        """Проверенное тождество e^λ e^{-λ} = ∏_j ρ_j(w)^{|ρ_j(λ)|}"""
        lam = tuple(int(x) for x in lam)
        opposite = tuple(-x for x in lam)
        product = self.multiply_classical(A, A.monomial(lam), A.monomial(opposite))
        denominator = A.ring.one
        for rho in A.weights:
            k = abs(A.pairing(rho, lam))
            if k:
                denominator = denominator * A.linear_form(rho) ** k
        expected = A.polynomial(denominator)
        if product != expected:
            raise VerificationFailure(f"localization identity fails at λ={lam}: got {product}, expected {expected}")
        witness = LocalizationWitness(
            lam=lam,
            product=str(product),
            denominator=str(expected),
            inverse=str(A.monomial(opposite)),
            verified=True,
        )
        logger.debug(f"🔓 Локализация λ={lam}: {witness.product}")
        return witness

    def hamiltonian_moment_map(self, A: AbelianAlgebra, chi: Sequence[int]) -> AbelianElement:
        """μ_χ = Σ χ_i w_i; {μ_χ, e^λ} = -⟨χ, λ⟩ e^λ"""
        chi = tuple(chi)
        if len(chi) != A.rank:
            raise AlgebraError(f"character {chi} does not match rank {A.rank}")
        return A.polynomial(A.linear_form(chi))

    def degree_two_lie_algebra(
        self, A: AbelianAlgebra
    ) -> Tuple[List[AbelianElement], Dict[Tuple[int, int], Dict[int, Fraction]]]:
        """
        Базис t-степени 2 и структурные константы скобки Пуассона в нем.

        Скобка имеет степень -2, поэтому степень 2 замкнута; замкнутость проверяется.
        """
        basis = self.graded_basis(A, 2)
        index: Dict[Tuple[Lattice, Tuple[int, ...]], int] = {}
        for i, element in enumerate(basis):
            [(lam, poly)] = element.terms()
            [monom] = list(poly.keys())
            index[(lam, monom)] = i

        table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
        for i, a in enumerate(basis):
            for j in range(i + 1, len(basis)):
                bracket = self.poisson_bracket(A, a, basis[j])
                row = {}
                for lam, poly in bracket.terms():
                    for monom, coeff in poly.items():
                        key = (lam, monom)
                        if key not in index:
                            raise VerificationFailure(
                                f"degree-two part is not closed: {{{a}, {basis[j]}}} = {bracket}"
                            )
                        row[index[key]] = to_fraction(coeff)
                if row:
                    table[(i, j)] = row
        logger.info(f"🧩 Алгебра Ли степени 2: размерность {len(basis)}")
        return basis, table
