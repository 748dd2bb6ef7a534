"""
Абелева алгебра Кулона: элементы Σ p_λ(w, ħ) e^λ в нормальной форме (e^λ справа).

Многочлены живут в кольце sympy QQ[w1..wℓ, h]; последняя переменная h - это ħ.
"""
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple

from pydantic import BaseModel
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, ring

from src.exceptions import AlgebraError

Lattice = Tuple[int, ...]


@lru_cache(maxsize=None)
def polynomial_ring(rank: int):
    """Кольцо QQ[w1..w_rank, h] и его образующие"""
    names = [f"w{i + 1}" for i in range(rank)] + ["h"]
    R, *gens = ring(",".join(names), QQ)
    return R, tuple(gens)


def to_fraction(coeff) -> Fraction:
    return Fraction(int(coeff.numerator), int(coeff.denominator))


class AbelianAlgebra(BaseModel):
    """Тор ранга ℓ, действующий на N с весами ρ_1..ρ_d"""
    rank: int
    weights: Tuple[Tuple[int, ...], ...] = ()

    class Config:
        frozen = True

    @property
    def ring(self):
        return polynomial_ring(self.rank)[0]

    @property
    def w(self) -> Tuple[PolyElement, ...]:
        return polynomial_ring(self.rank)[1][:self.rank]

    @property
    def hbar(self) -> PolyElement:
        return polynomial_ring(self.rank)[1][self.rank]

    def linear_form(self, rho: Iterable[int]) -> PolyElement:
        """ρ(w) = Σ ρ_i w_i"""
        result = self.ring.zero
        for coeff, gen in zip(rho, self.w):
            if coeff:
                result += coeff * gen
        return result

    def pairing(self, rho: Iterable[int], lam: Iterable[int]) -> int:
        return sum(a * b for a, b in zip(rho, lam))

    def twice_delta(self, lam: Iterable[int]) -> int:
        """2Δ(λ) = Σ_j |ρ_j(λ)| (t-степень e^λ)"""
        lam = tuple(lam)
        return sum(abs(self.pairing(rho, lam)) for rho in self.weights)

    def zero(self) -> "AbelianElement":
        return AbelianElement(self, {})

    def one(self) -> "AbelianElement":
        return self.monomial((0,) * self.rank)

    def monomial(self, lam: Iterable[int], poly: Optional[PolyElement] = None) -> "AbelianElement":
        """poly · e^λ (по умолчанию poly = 1)"""
        lam = tuple(int(x) for x in lam)
        if len(lam) != self.rank:
            raise AlgebraError(f"lattice point {lam} does not match rank {self.rank}")
        return AbelianElement(self, {lam: self.ring.one if poly is None else poly})

    def polynomial(self, poly: PolyElement) -> "AbelianElement":
        return self.monomial((0,) * self.rank, poly)

    def w_element(self, i: int) -> "AbelianElement":
        return self.polynomial(self.w[i])


class AbelianElement:
    """Конечная сумма p_λ · e^λ; хранятся только ненулевые p_λ"""

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: AbelianAlgebra, terms: Dict[Lattice, PolyElement]):
        self.algebra = algebra
        cleaned = {}
        for lam, poly in terms.items():
            if len(lam) != algebra.rank:
                raise AlgebraError(f"lattice point {lam} does not match rank {algebra.rank}")
            if poly:
                cleaned[tuple(lam)] = poly
        self._terms = cleaned

    def terms(self) -> List[Tuple[Lattice, PolyElement]]:
        return sorted(self._terms.items())

    def coefficient(self, lam: Iterable[int]) -> PolyElement:
        return self._terms.get(tuple(lam), self.algebra.ring.zero)

    def support(self) -> List[Lattice]:
        return sorted(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def has_hbar(self) -> bool:
        return any(monom[-1] > 0 for poly in self._terms.values() for monom in poly.keys())

    def set_hbar_zero(self) -> "AbelianElement":
        R = self.algebra.ring
        return AbelianElement(
            self.algebra,
            {lam: R.from_dict({m: c for m, c in poly.items() if m[-1] == 0}) for lam, poly in self._terms.items()},
        )

    def divide_by_hbar(self) -> "AbelianElement":
        """Точное деление на ħ; AlgebraError, если какой-то моном не делится"""
        R = self.algebra.ring
        divided = {}
        for lam, poly in self._terms.items():
            shifted = {}
            for monom, coeff in poly.items():
                if monom[-1] == 0:
                    raise AlgebraError("element is not divisible by ħ")
                shifted[monom[:-1] + (monom[-1] - 1,)] = coeff
            divided[lam] = R.from_dict(shifted)
        return AbelianElement(self.algebra, divided)

    def t_degrees(self) -> List[int]:
        """t-степени всех мономов w^a h^c e^λ: 2|a| + 2c + 2Δ(λ)"""
        degrees = set()
        for lam, poly in self._terms.items():
            base = self.algebra.twice_delta(lam)
            for monom in poly.keys():
                degrees.add(base + 2 * sum(monom))
        return sorted(degrees)

    def _check_same(self, other: "AbelianElement"):
        if not isinstance(other, AbelianElement) or other.algebra != self.algebra:
            raise AlgebraError("elements belong to different algebras")

    def __add__(self, other: "AbelianElement") -> "AbelianElement":
        self._check_same(other)
        merged = dict(self._terms)
        for lam, poly in other._terms.items():
            merged[lam] = merged[lam] + poly if lam in merged else poly
        return AbelianElement(self.algebra, merged)

    def __neg__(self) -> "AbelianElement":
        return AbelianElement(self.algebra, {lam: -poly for lam, poly in self._terms.items()})

    def __sub__(self, other: "AbelianElement") -> "AbelianElement":
        return self + (-other)

    def scale(self, factor) -> "AbelianElement":
        """Умножение на рациональное число или на многочлен слева"""
        if isinstance(factor, PolyElement):
            return AbelianElement(self.algebra, {lam: factor * poly for lam, poly in self._terms.items()})
        value = Fraction(factor)
        c = QQ(value.numerator, value.denominator)
        return AbelianElement(self.algebra, {lam: poly * c for lam, poly in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, AbelianElement):
            return NotImplemented
        return self.algebra == other.algebra and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.algebra, tuple((lam, tuple(sorted(p.items()))) for lam, p in self.terms())))

    def __str__(self) -> str:
        # локальный импорт: печать живет рядом с грамматикой разбора
        from src.services.element_parser import format_element
        return format_element(self)

    def __repr__(self) -> str:
        return f"AbelianElement({self})"


class Generator(BaseModel):
    """Образующая копредставления: w_i или нормированный ê^λ"""
    name: str
    t_degree: int
    pi1_weight: Tuple[int, ...]
    lattice_point: Optional[Tuple[int, ...]] = None  # None для w-переменных
    scale: Fraction = Fraction(1)  # ê^λ = scale · e^λ

    class Config:
        arbitrary_types_allowed = True
        frozen = True


class Relation(BaseModel):
    """left[0]*left[1] = coefficient · ∏ ρ̂(w)^k · ∏ right"""
    left: Tuple[str, ...]
    coefficient: Fraction
    w_factors: Tuple[Tuple[Tuple[int, ...], int], ...] = ()
    right: Tuple[str, ...] = ()
    text: str

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    def __str__(self) -> str:
        return self.text


class Presentation(BaseModel):
    generators: Tuple[Generator, ...]
    relations: Tuple[Relation, ...]
    laurent: bool = False  # есть обратимые направления (теория расходится)
    checked_order: Optional[int] = None  # до какой степени проверена достаточность

    class Config:
        frozen = True

    def render(self) -> str:
        lines = ["generators:"]
        for g in self.generators:
            lines.append(f"  {g.name}  deg={g.t_degree}  weight={list(g.pi1_weight)}")
        lines.append("relations:")
        for r in self.relations:
            lines.append(f"  {r.text}")
        return "\n".join(lines)


class LocalizationWitness(BaseModel):
    """e^λ · e^{-λ} = ∏ ρ_j(w)^{|ρ_j(λ)|}: e^λ обратим после обращения ∏ ρ_j(w)"""
    lam: Tuple[int, ...]
    product: str
    denominator: str
    inverse: str
    verified: bool

    def __str__(self) -> str:
        point = ",".join(str(x) for x in self.lam)
        opposite = ",".join(str(-x) for x in self.lam)
        return (
            f"E[{point}]*E[{opposite}] = {self.product}\n"
            f"E[{point}]^-1 = ({self.inverse}) / ({self.denominator})"
        )
