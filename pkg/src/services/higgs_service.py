"""
Ветвь Хиггса торической теории перебором и проверка торической двойственности.

Размерность степени d кольца (ℂ[x, y] / (μ_1..μ_n))^T считается точной линейной алгеброй:
инвариантные мономы степени d по модулю span(μ_i · инвариантные мономы степени d-2).
С кодом ветви Кулона общего нет ничего, кроме ранга разреженной матрицы.
"""
import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from src.config import Settings, settings as default_settings
from src.exceptions import TheoryValidationError
from src.models.higgs import DualityReport, DualityRow, HiggsProblem
from src.models.series import TruncatedSeries
from src.models.theory import TorusSequence
from src.services.monopole_service import MonopoleService
from src.services.theory_service import TheoryService, sparse_rank

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]  # показатели (x_1..x_d, y_1..y_d)


class HiggsService:
    """Градуированные размерности ветви Хиггса и сравнение с формулой монополей"""

    def __init__(
        self,
        monopole_service: Optional[MonopoleService] = None,
        theory_service: Optional[TheoryService] = None,
        settings: Optional[Settings] = None,
    ):
        self.settings = settings or default_settings
        self.monopole_service = monopole_service or MonopoleService(self.settings)
        self.theory_service = theory_service or TheoryService()

    def problem(self, torus_rank: int, charges, degree_cap: Optional[int] = None) -> HiggsProblem:
        charges = tuple(tuple(int(x) for x in q) for q in charges)
        for q in charges:
            if len(q) != torus_rank:
                raise TheoryValidationError(f"charge {q} does not match torus rank {torus_rank}")
        cap = self.settings.higgs_degree_cap if degree_cap is None else degree_cap
        return HiggsProblem(torus_rank=torus_rank, charges=charges, degree_cap=cap)

    @staticmethod
    def _variable_charges(p: HiggsProblem) -> List[Tuple[int, ...]]:
        return list(p.charges) + [tuple(-x for x in q) for q in p.charges]

    def _invariant_monomials(self, p: HiggsProblem, d: int) -> List[Monomial]:
        """Мономы степени d с нулевым суммарным зарядом, лексикографически"""
        if d < 0:
            return []
        var_charges = self._variable_charges(p)
        n_vars = len(var_charges)
        found = []
        for combo in itertools.combinations_with_replacement(range(n_vars), d):
            charge = [0] * p.torus_rank
            for v in combo:
                for i, c in enumerate(var_charges[v]):
                    charge[i] += c
            if any(charge):
                continue
            exponents = [0] * n_vars
            for v in combo:
                exponents[v] += 1
            found.append(tuple(exponents))
        return sorted(found)

    def moment_map_terms(self, p: HiggsProblem) -> List[Dict[Monomial, int]]:
        """μ_i = Σ_j (заряд x_j)_i x_j y_j как словари моном → коэффициент"""
        n = len(p.charges)
        result = []
        for i in range(p.torus_rank):
            terms = {}
            for j, q in enumerate(p.charges):
                if q[i]:
                    exponents = [0] * (2 * n)
                    exponents[j] = 1
                    exponents[n + j] = 1
                    terms[tuple(exponents)] = q[i]
            result.append(terms)
        return result

    def higgs_graded_dimension(self, p: HiggsProblem, d: int) -> int:
        if d < 0:
            raise TheoryValidationError(f"degree must be nonnegative, got {d}")
        if d > p.degree_cap:
            raise TheoryValidationError(
                f"degree {d} exceeds higgs degree cap {p.degree_cap} (raise COULOMB_HIGGS_DEGREE_CAP)"
            )
        invariants = self._invariant_monomials(p, d)
        if not invariants:
            return 0
        rows = []
        bases = self._invariant_monomials(p, d - 2)
        for mu in self.moment_map_terms(p):
            for base in bases:
                row: Dict[Monomial, Fraction] = {}
                for monom, coeff in mu.items():
                    key = tuple(a + b for a, b in zip(base, monom))
                    row[key] = row.get(key, Fraction(0)) + coeff
                rows.append(row)
        relations = sparse_rank(rows)
        dimension = len(invariants) - relations
        logger.debug(f"🔬 Хиггс d={d}: мономов {len(invariants)}, соотношений {relations}")
        return dimension

    def higgs_series(self, p: HiggsProblem, order: int) -> TruncatedSeries:
        """Ряд Σ dim_d t^d до порядка order; степени считаются параллельно, сборка по порядку"""
        degrees = list(range(order + 1))
        workers = self.settings.worker_count()
        if workers > 1 and order > 2:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                dims = list(pool.map(lambda d: self.higgs_graded_dimension(p, d), degrees))
        else:
            dims = [self.higgs_graded_dimension(p, d) for d in degrees]
        return TruncatedSeries.from_coefficients(dims, order)

    # ------------------------------------------------------------------
    # Двойственность
    # ------------------------------------------------------------------
    def dual_problem(self, s: TorusSequence) -> HiggsProblem:
        """T_F^∨ на ℂ^d: заряд x_j - j-й столбец матрицы проекции"""
        n = s.flavor_rank
        charges = [tuple(s.projection_matrix[i][j] for i in range(n)) for j in range(s.ambient_rank)]
        return self.problem(n, charges)

    def check_toric_duality(self, s: TorusSequence, order: int) -> DualityReport:
        if order < 0:
            raise TheoryValidationError(f"order must be nonnegative, got {order}")
        self.theory_service.check_exact(s)
        coulomb_theory = self.theory_service.restrict_to_subtorus(s)
        coulomb = self.monopole_service.hilbert_series(coulomb_theory, order).coefficients()
        higgs = self.higgs_series(self.dual_problem(s), order).coefficients()
        rows = tuple(
            DualityRow(degree=k, coulomb=int(coulomb[k]), higgs=int(higgs[k]))
            for k in range(order + 1)
        )
        report = DualityReport(order=order, rows=rows)
        logger.info(f"⚖️ Двойственность: {report.verdict()}")
        return report
