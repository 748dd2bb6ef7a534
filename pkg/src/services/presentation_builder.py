"""
Конечное копредставление коммутативной алгебры Кулона тора.

Образующие: w_1..w_ℓ и нормированные ê^λ для λ из объединения базисов Гильберта
камер веера {ρ_j(m) = 0}. Соотношения: ê^λ ê^μ, переписанное через образующие.
Минимальность набора не гарантируется, только достаточность.
"""
import itertools
import logging
import math
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

from sympy import Matrix

from src.config import Settings, settings as default_settings
from src.exceptions import VerificationFailure
from src.models.algebra import AbelianAlgebra, AbelianElement, Generator, Presentation, Relation, to_fraction
from src.services.abelian_algebra import AbelianCoulombAlgebra, classical_exponent
from src.services.cone_geometry import ConeGeometry, normalize_line, rank_of
from src.services.theory_service import sparse_rank

logger = logging.getLogger(__name__)

Lattice = Tuple[int, ...]


def _frac_part(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def parallelepiped_points(columns: Sequence[Lattice]) -> Set[Lattice]:
    """
    Точки решетки в полуоткрытом параллелепипеде {Σ c_i s_i : 0 ≤ c_i < 1}.

    Это группа ℤ^n / Sℤ^n, порожденная дробными частями столбцов S^{-1}.
    """
    n = len(columns)
    S = Matrix([[columns[j][i] for j in range(n)] for i in range(n)])
    inverse = S.inv()
    steps = [
        tuple(_frac_part(Fraction(int(inverse[i, k].p), int(inverse[i, k].q))) for i in range(n))
        for k in range(n)
    ]
    zero = tuple(Fraction(0) for _ in range(n))
    seen = {zero}
    frontier = [zero]
    while frontier:
        c = frontier.pop()
        for step in steps:
            nxt = tuple(_frac_part(x + y) for x, y in zip(c, step))
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    points = set()
    for c in seen:
        coords = [sum(c[j] * columns[j][i] for j in range(n)) for i in range(n)]
        if any(x.denominator != 1 for x in coords):
            raise VerificationFailure(f"non-integral parallelepiped point {coords}")
        points.add(tuple(int(x) for x in coords))
    return points


class _Decomposer:
    """Разложение λ в сумму образующих одного знакового типа (все d_j = 0)"""

    def __init__(self, algebra: AbelianAlgebra, generators: Sequence[Lattice]):
        self.algebra = algebra
        self.generators = sorted(generators, key=self._size, reverse=True)
        self._failed: Set[Tuple[Lattice, int]] = set()

    def _size(self, v: Lattice):
        return (self.algebra.twice_delta(v), sum(abs(x) for x in v), tuple(-x for x in v))

    def compatible(self, g: Lattice, v: Lattice) -> bool:
        for rho in self.algebra.weights:
            rg = self.algebra.pairing(rho, g)
            rv = self.algebra.pairing(rho, v)
            if rv == 0 and rg != 0:
                return False
            if rg * rv < 0 or abs(rg) > abs(rv):
                return False
        return True

    def decompose(self, v: Lattice) -> Optional[List[Lattice]]:
        budget = self.algebra.twice_delta(v) + sum(abs(x) for x in v) + 1
        return self._search(tuple(v), budget)

    def _search(self, v: Lattice, budget: int) -> Optional[List[Lattice]]:
        if not any(v):
            return []
        if budget <= 0 or (v, budget) in self._failed:
            return None
        moves = [g for g in self.generators if self.compatible(g, v)]
        moves.sort(key=lambda g: self._size(tuple(x - y for x, y in zip(v, g))))
        for g in moves:
            rest = tuple(x - y for x, y in zip(v, g))
            tail = self._search(rest, budget - 1)
            if tail is not None:
                return [g] + tail
        self._failed.add((v, budget))
        return None


class PresentationBuilder:
    """Образующие, соотношения и проверка достаточности"""

    def __init__(self, algebra_service: Optional[AbelianCoulombAlgebra] = None, settings: Optional[Settings] = None):
        self.algebra_service = algebra_service or AbelianCoulombAlgebra()
        self.settings = settings or default_settings

    # ------------------------------------------------------------------
    # Базисы Гильберта
    # ------------------------------------------------------------------
    def hilbert_basis_candidates(self, A: AbelianAlgebra, geometry: ConeGeometry) -> Set[Lattice]:
        """Порождающие камер и точки параллелепипедов их независимых ℓ-подмножеств"""
        candidates: Set[Lattice] = set()
        if A.rank == 0:
            return candidates
        chambers = geometry.chambers()
        logger.info(f"🔺 Камер веера: {len(chambers)}")
        for signs in chambers:
            gens = sorted(set(geometry.chamber_generators(signs)))
            candidates.update(gens)
            for subset in itertools.combinations(gens, A.rank):
                if rank_of(subset) == A.rank:
                    candidates.update(parallelepiped_points(subset))
        candidates.discard((0,) * A.rank)
        return candidates

    def reduce_generators(self, A: AbelianAlgebra, candidates: Set[Lattice]) -> List[Lattice]:
        """Жадно выбросить кандидатов, разложимых в сумму оставшихся одного знакового типа"""
        size = _Decomposer(A, [])._size
        kept: List[Lattice] = []
        for g in sorted(candidates, key=size):
            if _Decomposer(A, kept).decompose(g) is None:
                kept.append(g)
        changed = True
        while changed:
            changed = False
            for g in list(kept):
                others = [k for k in kept if k != g]
                if _Decomposer(A, others).decompose(g) is not None:
                    kept = others
                    changed = True
                    break
        return sorted(kept, key=size)

    # ------------------------------------------------------------------
    # Копредставление
    # ------------------------------------------------------------------
    @staticmethod
    def _content(rho: Sequence[int]) -> int:
        g = 0
        for x in rho:
            g = math.gcd(g, abs(x))
        return g

    def normalized_generator(self, A: AbelianAlgebra, lam: Lattice) -> Fraction:
        """Множитель s(λ): ê^λ = e^λ / ∏_j c_j^{max(ρ_j(λ), 0)}"""
        denominator = 1
        for rho in A.weights:
            c = self._content(rho)
            if c:
                denominator *= c ** max(A.pairing(rho, lam), 0)
        return Fraction(1, denominator)

    def _names(self, A: AbelianAlgebra, lattice_points: List[Lattice]) -> Tuple[List[str], Dict[Lattice, str]]:
        if A.rank == 1:
            w_names = ["w"]
            names = {}
            for lam in lattice_points:
                if lam == (1,):
                    names[lam] = "x"
                elif lam == (-1,):
                    names[lam] = "xbar" if A.twice_delta(lam) == 0 else "y"
            for i, lam in enumerate(p for p in lattice_points if p not in names):
                names[lam] = f"u{i + 1}"
            return w_names, names
        w_names = [f"w{i + 1}" for i in range(A.rank)]
        return w_names, {lam: f"u{i + 1}" for i, lam in enumerate(lattice_points)}

    @staticmethod
    def _format_form(form: Sequence[int], w_names: List[str]) -> str:
        pieces = []
        for coeff, name in zip(form, w_names):
            if coeff == 0:
                continue
            magnitude = abs(coeff)
            body = name if magnitude == 1 else f"{magnitude}*{name}"
            if not pieces:
                pieces.append(("-" if coeff < 0 else "") + body)
            else:
                pieces.append((" - " if coeff < 0 else " + ") + body)
        text = "".join(pieces)
        return f"({text})" if len(pieces) > 1 else text

    @staticmethod
    def _power(base: str, exponent: int) -> str:
        return base if exponent == 1 else f"{base}^{exponent}"

    def _render(self, left: Sequence[str], coefficient: Fraction, w_factors, right: Sequence[str], w_names) -> str:
        if left[0] == left[1]:
            lhs = self._power(left[0], 2)
        else:
            lhs = f"{left[0]}*{left[1]}"
        factors = [self._power(self._format_form(form, w_names), k) for form, k in w_factors]
        for name in sorted(set(right), key=list(right).index):
            factors.append(self._power(name, right.count(name)))
        sign = "-" if coefficient < 0 else ""
        magnitude = abs(coefficient)
        if magnitude != 1 or not factors:
            text = str(magnitude.numerator) if magnitude.denominator == 1 else f"{magnitude.numerator}/{magnitude.denominator}"
            factors.insert(0, text)
        return f"{lhs} = {sign}{'*'.join(factors)}"

    def _generator_element(self, A: AbelianAlgebra, lam: Lattice, scale: Fraction) -> AbelianElement:
        return A.monomial(lam).scale(scale)

    def presentation(self, A: AbelianAlgebra, check_order: Optional[int] = None) -> Presentation:
        geometry = ConeGeometry(A.weights, A.rank)
        good = geometry.is_pointed
        lattice_points = self.reduce_generators(A, self.hilbert_basis_candidates(A, geometry))
        w_names, names = self._names(A, lattice_points)
        scales = {lam: self.normalized_generator(A, lam) for lam in lattice_points}
        logger.info(f"🧱 Образующих e^λ: {len(lattice_points)}")

        generators = [
            Generator(name=name, t_degree=2, pi1_weight=(0,) * A.rank)
            for name in w_names
        ]
        for lam in lattice_points:
            generators.append(Generator(
                name=names[lam],
                t_degree=A.twice_delta(lam),
                pi1_weight=lam,
                lattice_point=lam,
                scale=scales[lam],
            ))

        decomposer = _Decomposer(A, lattice_points)
        relations: List[Relation] = []
        for i, lam in enumerate(lattice_points):
            for mu in lattice_points[i:]:
                relation = self._relation(A, lam, mu, decomposer, names, scales, w_names)
                if relation is not None:
                    relations.append(relation)

        checked = None
        if good:
            checked = self.settings.presentation_check_order if check_order is None else check_order
            self.check_sufficiency(A, generators, checked)
        return Presentation(
            generators=tuple(generators),
            relations=tuple(relations),
            laurent=not good,
            checked_order=checked,
        )

    def _relation(self, A, lam, mu, decomposer, names, scales, w_names) -> Optional[Relation]:
        target = tuple(x + y for x, y in zip(lam, mu))
        parts = decomposer.decompose(target)
        if parts is None:
            raise VerificationFailure(f"cannot rewrite e^{target} over the generators")

        coefficient = scales[lam] * scales[mu]
        for part in parts:
            coefficient /= scales[part]
        grouped: Dict[Lattice, int] = {}
        for rho in A.weights:
            d = classical_exponent(A.pairing(rho, lam), A.pairing(rho, mu))
            if d == 0:
                continue
            c = self._content(rho)
            primitive = tuple(x // c for x in rho)
            line = normalize_line(rho)
            sign = 1 if primitive == line else -1
            coefficient *= (c * sign) ** d
            grouped[line] = grouped.get(line, 0) + d

        if not grouped and sorted(parts) == sorted([lam, mu]):
            return None

        w_factors = tuple(sorted(grouped.items(), key=lambda item: tuple(-x for x in item[0])))
        right = tuple(names[p] for p in parts)
        relation = Relation(
            left=(names[lam], names[mu]),
            coefficient=coefficient,
            w_factors=w_factors,
            right=right,
            text=self._render((names[lam], names[mu]), coefficient, w_factors, right, w_names),
        )
        self._verify_relation(A, relation, lam, mu, parts, scales)
        return relation

    def _verify_relation(self, A, relation: Relation, lam, mu, parts, scales):
        service = self.algebra_service
        lhs = service.multiply_classical(
            A,
            self._generator_element(A, lam, scales[lam]),
            self._generator_element(A, mu, scales[mu]),
        )
        poly = A.ring.one
        for form, k in relation.w_factors:
            poly = poly * A.linear_form(form) ** k
        rhs = service.product_power(A, [self._generator_element(A, p, scales[p]) for p in parts])
        rhs = rhs.scale(poly).scale(relation.coefficient)
        if lhs != rhs:
            raise VerificationFailure(f"relation {relation.text} fails: {lhs} != {rhs}")
        degree_left = A.twice_delta(lam) + A.twice_delta(mu)
        degree_right = 2 * sum(k for _, k in relation.w_factors) + sum(A.twice_delta(p) for p in parts)
        if degree_left != degree_right:
            raise VerificationFailure(f"relation {relation.text} is not homogeneous")

    # ------------------------------------------------------------------
    # Достаточность
    # ------------------------------------------------------------------
    def _exponent_vectors(self, degrees: Sequence[int], d: int):
        """Все векторы показателей n ≥ 0 с Σ n_i deg_i = d (степени положительны)"""
        if not degrees:
            if d == 0:
                yield ()
            return
        head, tail = degrees[0], degrees[1:]
        for n in range(d // head + 1):
            for rest in self._exponent_vectors(tail, d - n * head):
                yield (n,) + rest

    def check_sufficiency(self, A: AbelianAlgebra, generators: Sequence[Generator], order: int) -> int:
        """Мономы от образующих порождают каждую компоненту степени ≤ order"""
        service = self.algebra_service
        degrees = [g.t_degree for g in generators]
        if any(d <= 0 for d in degrees):
            raise VerificationFailure("sufficiency check needs generators of positive degree")
        elements = []
        w_index = 0
        for g in generators:
            if g.lattice_point is None:
                elements.append(A.w_element(w_index))
                w_index += 1
            else:
                elements.append(self._generator_element(A, g.lattice_point, g.scale))

        for d in range(order + 1):
            rows = []
            for exponents in self._exponent_vectors(degrees, d):
                factors = [e for e, n in zip(elements, exponents) for _ in range(n)]
                product = service.product_power(A, factors)
                row = {}
                for lam, poly in product.terms():
                    for monom, coeff in poly.items():
                        row[(lam, monom)] = to_fraction(coeff)
                rows.append(row)
            spanned = sparse_rank(rows)
            expected = service.graded_dimension(A, d)
            if spanned != expected:
                raise VerificationFailure(
                    f"generators span {spanned} of {expected} dimensions in t-degree {d}"
                )
        logger.info(f"✅ Копредставление достаточно до t^{order}")
        return order
