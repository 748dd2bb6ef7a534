from typing import Dict, List, Tuple

from pydantic import BaseModel


class GaugeTheory(BaseModel):
    """Калибровочная теория (G, N): G = ∏ GL(n_i) × тор, N задано весами максимального тора"""
    gl_factors: Tuple[int, ...] = ()
    torus_rank: int = 0
    weights: Tuple[Tuple[int, ...], ...] = ()  # мультимножество весов (с кратностями)

    class Config:
        frozen = True

    @property
    def total_rank(self) -> int:
        return sum(self.gl_factors) + self.torus_rank

    @property
    def is_abelian(self) -> bool:
        return not self.gl_factors

    def blocks(self) -> List[Tuple[int, int]]:
        """Блоки GL-факторов как (начало, размер) в координатах максимального тора"""
        result = []
        start = 0
        for n in self.gl_factors:
            result.append((start, n))
            start += n
        return result

    @property
    def torus_offset(self) -> int:
        return sum(self.gl_factors)

    def positive_roots(self) -> List[Tuple[int, ...]]:
        """Положительные корни e_a - e_b (a < b) внутри каждого GL-блока"""
        roots = []
        for start, size in self.blocks():
            for a in range(start, start + size):
                for b in range(a + 1, start + size):
                    root = [0] * self.total_rank
                    root[a] = 1
                    root[b] = -1
                    roots.append(tuple(root))
        return roots

    def pi1_class(self, m: Tuple[int, ...]) -> Tuple[int, ...]:
        """Класс в π₁(G): сумма по каждому GL-блоку, торический блок без изменений"""
        classes = [sum(m[start:start + size]) for start, size in self.blocks()]
        classes.extend(m[self.torus_offset:])
        return tuple(classes)

    @property
    def pi1_rank(self) -> int:
        return len(self.gl_factors) + self.torus_rank


class Coweight(BaseModel):
    """Целочисленный кохарактер максимального тора"""
    entries: Tuple[int, ...]

    class Config:
        frozen = True

    def is_dominant_for(self, theory: GaugeTheory) -> bool:
        if len(self.entries) != theory.total_rank:
            return False
        for start, size in theory.blocks():
            block = self.entries[start:start + size]
            if any(block[i] < block[i + 1] for i in range(len(block) - 1)):
                return False
        return True


class QuiverSpec(BaseModel):
    """Колчан Q с размерностями V и W в вершинах"""
    vertices: Tuple[str, ...]
    edges: Tuple[Tuple[str, str], ...] = ()  # (out, in); петли и кратные ребра разрешены
    dim_v: Dict[str, int]
    dim_w: Dict[str, int]


class TorusSequence(BaseModel):
    """
    Точная последовательность торов 1 → T → T̃ → T_F → 1.

    inclusion_matrix: d строк × (d-n) столбцов, projection_matrix: n строк × d столбцов.
    """
    inclusion_matrix: Tuple[Tuple[int, ...], ...]
    projection_matrix: Tuple[Tuple[int, ...], ...] = ()

    class Config:
        frozen = True

    @property
    def ambient_rank(self) -> int:
        return len(self.inclusion_matrix)

    @property
    def sub_rank(self) -> int:
        return len(self.inclusion_matrix[0]) if self.inclusion_matrix else 0

    @property
    def flavor_rank(self) -> int:
        return len(self.projection_matrix)
