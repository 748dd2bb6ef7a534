"""
Сервис калибровочных теорий: валидация, колчаны, последовательности торов и двойственность
"""
import logging
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from pydantic import ValidationError
from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DM, DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from src.exceptions import ExactnessError, TheoryValidationError
from src.models.theory import GaugeTheory, QuiverSpec, TorusSequence

logger = logging.getLogger(__name__)

Matrix = Tuple[Tuple[int, ...], ...]


def transpose(matrix: Sequence[Sequence[int]], n_cols: int) -> Matrix:
    """Транспонирование с явным числом столбцов (матрица может не иметь строк)"""
    return tuple(tuple(row[j] for row in matrix) for j in range(n_cols))


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], b_cols: int) -> Matrix:
    return tuple(
        tuple(sum(row[k] * b[k][j] for k in range(len(row))) for j in range(b_cols))
        for row in a
    )


def integer_rank(matrix: Sequence[Sequence[int]]) -> int:
    if not matrix or not matrix[0]:
        return 0
    return DM([list(row) for row in matrix], ZZ).convert_to(QQ).rank()


def smith_invariant_factors(matrix: Sequence[Sequence[int]]) -> List[int]:
    """Ненулевые инвариантные множители нормальной формы Смита"""
    if not matrix or not matrix[0]:
        return []
    factors = invariant_factors(DM([list(row) for row in matrix], ZZ))
    return [abs(int(f)) for f in factors if f != 0]


def sparse_rank(rows: Sequence[Dict[Hashable, object]]) -> int:
    """Ранг над QQ набора разреженных строк; столбцы - произвольные ключи"""
    columns: Dict[Hashable, int] = {}
    data = {}
    for row in rows:
        entries = {}
        for key, value in row.items():
            if value:
                j = columns.setdefault(key, len(columns))
                entries[j] = QQ(int(value.numerator), int(value.denominator))
        if entries:
            data[len(data)] = entries
    if not data:
        return 0
    return DomainMatrix(data, (len(data), len(columns)), QQ).rank()


class TheoryService:
    """Конструкторы и проверки для (G, N)"""

    def validate_theory(self, raw: GaugeTheory) -> GaugeTheory:
        """
        Проверить инварианты GaugeTheory и вернуть каноническую копию.

        Веса сортируются лексикографически, поэтому операция идемпотентна.
        """
        for n in raw.gl_factors:
            if n <= 0:
                raise TheoryValidationError(f"gl factor rank must be positive, got {n}")
        if raw.torus_rank < 0:
            raise TheoryValidationError(f"torus rank must be nonnegative, got {raw.torus_rank}")
        rank = raw.total_rank
        for weight in raw.weights:
            if len(weight) != rank:
                raise TheoryValidationError(
                    f"weight {weight} has length {len(weight)}, expected total rank {rank}"
                )
        return GaugeTheory(
            gl_factors=raw.gl_factors,
            torus_rank=raw.torus_rank,
            weights=tuple(sorted(raw.weights)),
        )

    def build_theory(self, gl_factors, torus_rank, weights) -> GaugeTheory:
        try:
            raw = GaugeTheory(gl_factors=gl_factors, torus_rank=torus_rank, weights=weights)
        except ValidationError as e:
            raise TheoryValidationError(f"malformed theory data: {e}") from e
        return self.validate_theory(raw)

    # ------------------------------------------------------------------
    # Колчаны
    # ------------------------------------------------------------------
    def validate_quiver(self, q: QuiverSpec) -> QuiverSpec:
        if len(set(q.vertices)) != len(q.vertices):
            raise TheoryValidationError("quiver has duplicate vertex names")
        declared = set(q.vertices)
        for out_v, in_v in q.edges:
            for v in (out_v, in_v):
                if v not in declared:
                    raise TheoryValidationError(f"edge endpoint '{v}' is not a declared vertex")
        for v in q.vertices:
            if q.dim_v.get(v, 0) < 0 or q.dim_w.get(v, 0) < 0:
                raise TheoryValidationError(f"negative dimension at vertex '{v}'")
        if not any(q.dim_v.get(v, 0) > 0 for v in q.vertices):
            raise TheoryValidationError("quiver gauge group is trivial: every dim V is zero")
        return q

    def from_quiver(self, q: QuiverSpec) -> GaugeTheory:
        """
        G = ∏ GL(V_i), N = ⊕ Hom(V_out, V_in) ⊕ ⊕ Hom(W_i, V_i).

        Вершины с dim V = 1 идут в торический блок (GL(1) = ℂ^×), вершины с dim V ≥ 2
        дают GL-факторы; вершины с dim V = 0 выпадают вместе со своими W.
        """
        self.validate_quiver(q)
        gl_vertices = [v for v in q.vertices if q.dim_v.get(v, 0) >= 2]
        torus_vertices = [v for v in q.vertices if q.dim_v.get(v, 0) == 1]

        offsets: Dict[str, int] = {}
        cursor = 0
        for v in gl_vertices + torus_vertices:
            offsets[v] = cursor
            cursor += q.dim_v[v]
        rank = cursor

        def unit(index: int) -> List[int]:
            vec = [0] * rank
            vec[index] = 1
            return vec

        weights: List[Tuple[int, ...]] = []
        for out_v, in_v in q.edges:
            if out_v not in offsets or in_v not in offsets:
                continue
            for a in range(q.dim_v[in_v]):
                for b in range(q.dim_v[out_v]):
                    vec = unit(offsets[in_v] + a)
                    vec[offsets[out_v] + b] -= 1
                    weights.append(tuple(vec))
        for v in q.vertices:
            if v not in offsets:
                continue
            for _ in range(q.dim_w.get(v, 0)):
                for a in range(q.dim_v[v]):
                    weights.append(tuple(unit(offsets[v] + a)))

        theory = self.build_theory(
            gl_factors=tuple(q.dim_v[v] for v in gl_vertices),
            torus_rank=len(torus_vertices),
            weights=tuple(weights),
        )
        logger.info(f"🧭 Колчан → теория: rank={theory.total_rank}, весов={len(theory.weights)}")
        return theory

    # ------------------------------------------------------------------
    # Последовательности торов
    # ------------------------------------------------------------------
    def check_exact(self, s: TorusSequence) -> TorusSequence:
        """Точность 0 → ℤ^{d-n} → ℤ^d → ℤ^n → 0 через нормальную форму Смита"""
        d = s.ambient_rank
        k = s.sub_rank
        n = s.flavor_rank
        for row in s.inclusion_matrix:
            if len(row) != k:
                raise TheoryValidationError("inclusion matrix rows have different lengths")
        for row in s.projection_matrix:
            if len(row) != d:
                raise TheoryValidationError(
                    f"projection matrix row {row} has length {len(row)}, expected {d}"
                )
        if k + n != d:
            raise ExactnessError(f"dimensions do not add up: {k} + {n} != {d}")

        composite = matmul(s.projection_matrix, s.inclusion_matrix, k)
        if any(x != 0 for row in composite for x in row):
            raise ExactnessError("projection · inclusion is not zero")

        for name, matrix, expected in (
            ("inclusion", s.inclusion_matrix, k),
            ("projection", s.projection_matrix, n),
        ):
            rank = integer_rank(matrix)
            if rank != expected:
                raise ExactnessError(f"{name} matrix has rank {rank}, expected {expected}")
            for factor in smith_invariant_factors(matrix):
                if factor != 1:
                    raise ExactnessError(
                        f"{name} matrix has torsion cokernel (Smith invariant factor {factor})",
                        invariant_factor=factor,
                    )
        return s

    def dualize_torus(self, s: TorusSequence) -> TorusSequence:
        """1 → T_F^∨ → T̃^∨ → T^∨ → 1: транспонирование обеих матриц"""
        self.check_exact(s)
        dual = TorusSequence(
            inclusion_matrix=transpose(s.projection_matrix, s.ambient_rank),
            projection_matrix=transpose(s.inclusion_matrix, s.sub_rank),
        )
        return self.check_exact(dual)

    def restrict_to_subtorus(
        self, s: TorusSequence, ambient_weights: Optional[Sequence[Sequence[int]]] = None
    ) -> GaugeTheory:
        """Ограничение представления тора T̃ на подтор T: вес w ↦ wᵀ · inclusion"""
        d = s.ambient_rank
        if ambient_weights is None:
            ambient_weights = [tuple(1 if i == j else 0 for j in range(d)) for i in range(d)]
        for w in ambient_weights:
            if len(w) != d:
                raise TheoryValidationError(
                    f"ambient weight {tuple(w)} has length {len(w)}, expected {d}"
                )
        restricted = matmul([list(w) for w in ambient_weights], s.inclusion_matrix, s.sub_rank)
        return self.build_theory(gl_factors=(), torus_rank=s.sub_rank, weights=restricted)

    # ------------------------------------------------------------------
    # Вывод
    # ------------------------------------------------------------------
    def render_theory(self, theory: GaugeTheory) -> str:
        """Текст теории в формате файла (gl/torus/weight)"""
        lines = [f"gl {n}" for n in theory.gl_factors]
        lines.append(f"torus {theory.torus_rank}")
        for weight in theory.weights:
            lines.append("weight " + " ".join(str(x) for x in weight) if weight else "weight")
        return "\n".join(lines) + "\n"
