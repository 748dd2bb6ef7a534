"""
Формула монополей: ряд Гильберта кольца ℂ[M_C] как сумма по доминантным кохарактерам.

    H(t) = Σ_m t^{2Δ(m)} P(t; m),
    Δ(m) = -Σ_{α>0} |⟨α, m⟩| + ½ Σ_ρ |⟨ρ, m⟩|,
    P(t; m) = ∏ 1/(1 - t^{2 d_i}) по степеням Казимира стабилизатора m.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.config import Settings, settings as default_settings
from src.exceptions import DivergenceError, DomainError, TheoryValidationError
from src.models.monopole import ConvergenceVerdict, MonopoleTerm
from src.models.series import TruncatedSeries, geometric_factor
from src.models.theory import Coweight, GaugeTheory
from src.services.cone_geometry import ConeGeometry

logger = logging.getLogger(__name__)

CoweightLike = Union[Coweight, Sequence[int]]


def _entries(m: CoweightLike) -> Tuple[int, ...]:
    if isinstance(m, Coweight):
        return m.entries
    return tuple(int(x) for x in m)


class MonopoleService:
    """Вычисление ряда Гильберта ветви Кулона по формуле монополей"""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or default_settings

    # ------------------------------------------------------------------
    # Δ и одевающий множитель
    # ------------------------------------------------------------------
    def _check_dominant(self, th: GaugeTheory, m: Tuple[int, ...]):
        if not Coweight(entries=m).is_dominant_for(th):
            raise TheoryValidationError(f"coweight {m} is not dominant for gl factors {list(th.gl_factors)}")

    @staticmethod
    def _shift_vector(th: GaugeTheory, shift: Optional[Sequence[int]]) -> Tuple[int, ...]:
        if shift is None:
            return (0,) * th.pi1_rank
        shift = tuple(int(x) for x in shift)
        if len(shift) != th.pi1_rank:
            raise TheoryValidationError(
                f"shift character has length {len(shift)}, expected π₁ rank {th.pi1_rank}"
            )
        return shift

    @staticmethod
    def _twice_delta(th: GaugeTheory, m: Tuple[int, ...]) -> int:
        matter = sum(abs(sum(r * x for r, x in zip(rho, m))) for rho in th.weights)
        vector = 0
        for start, size in th.blocks():
            block = m[start:start + size]
            for a in range(size):
                for b in range(a + 1, size):
                    vector += abs(block[a] - block[b])
        return matter - 2 * vector

    def _twice_shifted_delta(self, th: GaugeTheory, m: Tuple[int, ...], shift: Tuple[int, ...]) -> int:
        gamma = th.pi1_class(m)
        return self._twice_delta(th, m) + sum(x * g for x, g in zip(shift, gamma))

    def delta(self, th: GaugeTheory, m: CoweightLike) -> Fraction:
        """Δ(m) для доминантного m"""
        m = _entries(m)
        self._check_dominant(th, m)
        return Fraction(self._twice_delta(th, m), 2)

    @staticmethod
    def casimir_degrees(th: GaugeTheory, m: Tuple[int, ...]) -> Tuple[int, ...]:
        """Степени Казимира стабилизатора m: 1..k на каждый блок равных координат, 1 на координату тора"""
        degrees: List[int] = []
        for start, size in th.blocks():
            block = m[start:start + size]
            run = 1
            for i in range(1, size + 1):
                if i < size and block[i] == block[i - 1]:
                    run += 1
                    continue
                degrees.extend(range(1, run + 1))
                run = 1
        degrees.extend([1] * th.torus_rank)
        return tuple(sorted(degrees))

    def _dressing_from_degrees(self, degrees: Tuple[int, ...], order: int) -> TruncatedSeries:
        result = TruncatedSeries.one(order)
        for d in degrees:
            result = result * geometric_factor(2 * d, order)
        return result

    def dressing_factor(self, th: GaugeTheory, m: CoweightLike, order: int) -> TruncatedSeries:
        """P(t; m) = ∏ 1/(1 - t^{2 d_i})"""
        m = _entries(m)
        self._check_dominant(th, m)
        return self._dressing_from_degrees(self.casimir_degrees(th, m), order)

    # ------------------------------------------------------------------
    # Сходимость
    # ------------------------------------------------------------------
    def _geometry(self, th: GaugeTheory) -> ConeGeometry:
        return ConeGeometry(list(th.weights) + th.positive_roots(), th.total_rank)

    def _dominant_rays(self, th: GaugeTheory, geometry: ConeGeometry) -> List[Tuple[int, ...]]:
        candidates = set(geometry.rays())
        for b in geometry.lineality:
            candidates.add(b)
            candidates.add(tuple(-x for x in b))
        return [
            v for v in sorted(candidates, reverse=True)
            if Coweight(entries=v).is_dominant_for(th)
        ]

    def check_convergence(self, th: GaugeTheory, shift: Optional[Sequence[int]] = None) -> ConvergenceVerdict:
        """
        Δ линейна на каждой камере разбиения {⟨ρ,m⟩=0} ∪ {⟨α,m⟩=0} внутри доминантного конуса.

        good ⇔ Δ > 0 на каждом ненулевом крайнем луче; при ненулевом пространстве
        линейности Δ обращается в 0 на нем, и теория расходится.
        """
        xi = self._shift_vector(th, shift)
        geometry = self._geometry(th)
        for v in self._dominant_rays(th, geometry):
            twice = self._twice_shifted_delta(th, v, xi)
            if twice <= 0:
                verdict = ConvergenceVerdict(good=False, witness=v, delta=Fraction(twice, 2))
                logger.info(f"⚠️ Теория расходится: луч {v}, Δ={Fraction(twice, 2)}")
                return verdict
        return ConvergenceVerdict(good=True)

    def _require_good(self, th: GaugeTheory, xi: Tuple[int, ...]) -> ConeGeometry:
        verdict = self.check_convergence(th, xi)
        if not verdict.good:
            raise DivergenceError(verdict.witness, verdict.delta)
        return self._geometry(th)

    # ------------------------------------------------------------------
    # Перечисление кохарактеров
    # ------------------------------------------------------------------
    def _box_radius(self, th: GaugeTheory, geometry: ConeGeometry, xi, twice_bound: int) -> List[int]:
        """
        Радиусы ящика по координатам.

        На камере множество {Δ ≤ B} - выпуклая оболочка 0 и точек B·v/Δ(v) на лучах камеры,
        поэтому |m_k| ≤ 2B · max_v |v_k| / 2Δ(v).
        """
        radius = [Fraction(0)] * th.total_rank
        for v in self._dominant_rays(th, geometry):
            twice = self._twice_shifted_delta(th, v, xi)
            for k in range(th.total_rank):
                radius[k] = max(radius[k], Fraction(twice_bound * abs(v[k]), twice))
        return [int(r) for r in radius]

    def _enumerate(self, th: GaugeTheory, twice_bound: int, xi: Tuple[int, ...]) -> List[Tuple[int, ...]]:
        geometry = self._require_good(th, xi)
        rank = th.total_rank
        if twice_bound < 0:
            return []
        if rank == 0:
            return [()]
        radius = self._box_radius(th, geometry, xi, twice_bound)

        weights = np.array(th.weights, dtype=np.int64).reshape(-1, rank)
        roots = np.array(th.positive_roots(), dtype=np.int64).reshape(-1, rank)
        pi1 = np.zeros((th.pi1_rank, rank), dtype=np.int64)
        for i, (start, size) in enumerate(th.blocks()):
            pi1[i, start:start + size] = 1
        for j in range(th.torus_rank):
            pi1[len(th.gl_factors) + j, th.torus_offset + j] = 1
        xi_vec = np.array(xi, dtype=np.int64)
        # соседние пары внутри блоков: доминантность m_a ≥ m_{a+1}
        simple = [(start + a, start + a + 1) for start, size in th.blocks() for a in range(size - 1)]

        found: List[Tuple[int, ...]] = []
        tail_ranges = [np.arange(-r, r + 1, dtype=np.int64) for r in radius[1:]]
        for first in range(-radius[0], radius[0] + 1):
            if tail_ranges:
                grids = np.meshgrid(*tail_ranges, indexing="ij")
                tail = np.stack([g.ravel() for g in grids], axis=1)
                points = np.hstack([np.full((tail.shape[0], 1), first, dtype=np.int64), tail])
            else:
                points = np.array([[first]], dtype=np.int64)
            mask = np.ones(points.shape[0], dtype=bool)
            for a, b in simple:
                mask &= points[:, a] >= points[:, b]
            points = points[mask]
            if points.size == 0:
                continue
            twice = np.abs(points @ weights.T).sum(axis=1) - 2 * np.abs(points @ roots.T).sum(axis=1)
            twice = twice + (points @ pi1.T) @ xi_vec
            points = points[twice <= twice_bound]
            found.extend(tuple(int(x) for x in row) for row in points)

        logger.info(f"🔢 Кохарактеров с 2Δ ≤ {twice_bound}: {len(found)} (ящик {radius})")
        return found

    def enumerate_coweights(
        self, th: GaugeTheory, delta_bound: Union[int, Fraction], shift: Optional[Sequence[int]] = None
    ) -> List[Coweight]:
        """Все доминантные m с Δ(m) ≤ delta_bound, в лексикографическом порядке"""
        xi = self._shift_vector(th, shift)
        twice_bound = math.floor(Fraction(delta_bound) * 2)
        return [Coweight(entries=m) for m in self._enumerate(th, twice_bound, xi)]

    # ------------------------------------------------------------------
    # Ряд Гильберта
    # ------------------------------------------------------------------
    def _make_terms(
        self, th: GaugeTheory, coweights: List[Tuple[int, ...]], order: int, xi: Tuple[int, ...]
    ) -> List[MonopoleTerm]:
        cache: Dict[Tuple[int, ...], TruncatedSeries] = {}
        for m in coweights:
            degrees = self.casimir_degrees(th, m)
            if degrees not in cache:
                cache[degrees] = self._dressing_from_degrees(degrees, order)

        def build(m: Tuple[int, ...]) -> MonopoleTerm:
            twice = self._twice_delta(th, m)
            gamma = th.pi1_class(m)
            exponent = twice + sum(x * g for x, g in zip(xi, gamma))
            return MonopoleTerm(
                coweight=m,
                delta=Fraction(twice, 2),
                dressing=cache[self.casimir_degrees(th, m)],
                pi1_class=gamma,
                t_exponent=exponent,
            )

        workers = self.settings.worker_count()
        if workers > 1 and len(coweights) > 64:
            # map сохраняет канонический порядок кохарактеров
            with ThreadPoolExecutor(max_workers=workers) as pool:
                return list(pool.map(build, coweights))
        return [build(m) for m in coweights]

    def monopole_terms(
        self, th: GaugeTheory, order: int, shift: Optional[Sequence[int]] = None
    ) -> List[MonopoleTerm]:
        """Слагаемые, дающие вклад до t^order"""
        xi = self._shift_vector(th, shift)
        return self._make_terms(th, self._enumerate(th, order, xi), order, xi)

    @staticmethod
    def _check_parity(terms: List[MonopoleTerm]):
        parity: Dict[Tuple[int, ...], int] = {}
        for term in terms:
            p = int(term.delta * 2) % 2
            seen = parity.setdefault(term.pi1_class, p)
            if seen != p:
                raise DomainError(
                    f"2Δ parity is not constant on π₁-class {term.pi1_class}; "
                    f"weights are probably not Weyl-invariant"
                )

    def _sum_terms(
        self, th: GaugeTheory, terms: List[MonopoleTerm], order: int, refined: bool
    ) -> TruncatedSeries:
        rank = th.pi1_rank if refined else 0
        total = TruncatedSeries.zero(order, rank)
        for term in terms:
            if term.t_exponent > order:
                continue
            piece = term.dressing.shift_t(term.t_exponent)
            if refined:
                piece = piece.with_fugacity(term.pi1_class)
            total = total + piece
        return total

    def hilbert_series(
        self,
        th: GaugeTheory,
        order: int,
        refined: bool = False,
        shift: Optional[Sequence[int]] = None,
    ) -> TruncatedSeries:
        """
        Ряд Гильберта до t^order.

        refined: каждый член несет z^{γ(m)}; shift ξ сдвигает показатель на ⟨ξ, γ⟩.
        """
        if order < 0:
            raise TheoryValidationError(f"order must be nonnegative, got {order}")
        terms = self.monopole_terms(th, order, shift)
        self._check_parity(terms)
        series = self._sum_terms(th, terms, order, refined)
        for _, _, coeff in series.terms():
            if coeff.denominator != 1 or coeff < 0:
                raise DomainError(f"non-integral or negative Hilbert coefficient {coeff}")
        logger.info(f"✅ Ряд Гильберта до t^{order}: {len(terms)} слагаемых")
        return series

    def certified_coefficients(self, th: GaugeTheory, order: int, slack: int = 2) -> List[int]:
        """
        Коэффициенты до t^order, перепроверенные перечислением с большей границей Δ.

        Член t^{2Δ(m)}·P дает вклад в степень ≤ order только при 2Δ(m) ≤ order.
        """
        xi = self._shift_vector(th, None)
        base = self._sum_terms(th, self._make_terms(th, self._enumerate(th, order, xi), order, xi), order, False)
        wider = self._sum_terms(
            th, self._make_terms(th, self._enumerate(th, order + slack, xi), order, xi), order, False
        )
        if base != wider:
            raise DomainError(f"truncation is not stable: {base} vs {wider}")
        return [int(c) for c in base.coefficients()]
