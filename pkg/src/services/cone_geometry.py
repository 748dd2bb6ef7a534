"""
Геометрия гиперплоскостных разбиений решетки ℤ^r.

Лучи разбиения (одномерные грани), пространство линейности и камеры - общая основа
для проверки сходимости формулы монополей и для копредставлений абелевых ветвей.
"""
import itertools
import logging
import math
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog
from sympy import Matrix

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


def primitive(vec: Iterable) -> Vector:
    """Примитивный целый вектор на той же прямой (рациональный вход допускается)"""
    fracs = [Fraction(str(x)) if not isinstance(x, (int, Fraction)) else Fraction(x) for x in vec]
    denominator = 1
    for f in fracs:
        denominator = denominator * f.denominator // math.gcd(denominator, f.denominator)
    ints = [int(f * denominator) for f in fracs]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def normalize_line(vec: Sequence[int]) -> Vector:
    """Представитель прямой: примитивный, первая ненулевая координата положительна"""
    p = primitive(vec)
    for x in p:
        if x != 0:
            return p if x > 0 else tuple(-y for y in p)
    return p


def rank_of(rows: Sequence[Sequence[int]]) -> int:
    if not rows:
        return 0
    return Matrix([list(r) for r in rows]).rank()


def nullspace(rows: Sequence[Sequence[int]], dim: int) -> List[Vector]:
    """Базис (примитивных целых векторов) ядра системы rows · x = 0"""
    if dim == 0:
        return []
    if not rows:
        return [tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)]
    return [primitive(list(v)) for v in Matrix([list(r) for r in rows]).nullspace()]


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


class ConeGeometry:
    """Разбиение ℝ^dim гиперплоскостями ⟨n, m⟩ = 0"""

    def __init__(self, normals: Iterable[Sequence[int]], dim: int):
        self.dim = dim
        self.normals: List[Vector] = sorted(
            {normalize_line(n) for n in normals if any(x != 0 for x in n)}
        )
        self.rank = rank_of(self.normals)
        self.lineality: List[Vector] = nullspace(self.normals, dim)
        self._rays = None

    @property
    def is_pointed(self) -> bool:
        """Все камеры острые (нормали порождают ℝ^dim)"""
        return self.rank == self.dim

    def rays(self) -> List[Vector]:
        """
        Направления одномерных граней разбиения внутри L^⊥ (L - пространство линейности).

        Каждая прямая - ядро r-1 независимых нормалей вместе с базисом L; берутся оба направления.
        """
        if self._rays is not None:
            return list(self._rays)
        if self.rank == 0:
            self._rays = []
            return []
        found = set()
        for combo in itertools.combinations(self.normals, self.rank - 1):
            if rank_of(combo) != self.rank - 1:
                continue
            kernel = nullspace(list(combo) + list(self.lineality), self.dim)
            if len(kernel) != 1:
                continue
            v = kernel[0]
            found.add(v)
            found.add(tuple(-x for x in v))
        rays = sorted(found, reverse=True)
        self._rays = rays
        logger.debug(f"🔺 Лучей разбиения: {len(rays)} (нормалей {len(self.normals)}, dim={self.dim})")
        return rays

    def chambers(self) -> List[Tuple[int, ...]]:
        """Знаковые векторы полноразмерных камер (проверка через ЛП)"""
        if not self.normals:
            return [()]
        result = []
        a = np.array(self.normals, dtype=float)
        for signs in itertools.product((1, -1), repeat=len(self.normals)):
            # σ_h ⟨n_h, m⟩ ≥ 1 для всех h совместно ⇔ открытая камера непуста
            a_ub = -(np.array(signs, dtype=float)[:, None] * a)
            b_ub = -np.ones(len(self.normals))
            res = linprog(
                c=np.zeros(self.dim), A_ub=a_ub, b_ub=b_ub,
                bounds=[(None, None)] * self.dim, method="highs",
            )
            if res.status == 0:
                result.append(tuple(signs))
        logger.debug(f"🔺 Камер: {len(result)}")
        return result

    def in_chamber(self, vec: Sequence[int], signs: Sequence[int]) -> bool:
        """Лежит ли вектор в замыкании камеры"""
        return all(s * dot(n, vec) >= 0 for n, s in zip(self.normals, signs))

    def chamber_generators(self, signs: Sequence[int]) -> List[Vector]:
        """Порождающие конуса камеры: крайние лучи в L^⊥ и ±базис L"""
        gens = [r for r in self.rays() if self.in_chamber(r, signs)]
        for b in self.lineality:
            gens.append(b)
            gens.append(tuple(-x for x in b))
        return gens
