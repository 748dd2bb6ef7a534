from fractions import Fraction
from typing import Optional, Tuple

from pydantic import BaseModel

from src.models.series import TruncatedSeries


class MonopoleTerm(BaseModel):
    """Слагаемое формулы монополей: t^{2Δ(m)} · P(t; m) · z^{γ(m)}"""
    coweight: Tuple[int, ...]
    delta: Fraction
    dressing: TruncatedSeries
    pi1_class: Tuple[int, ...]
    t_exponent: int  # 2Δ(m) (+ ⟨ξ, γ⟩ при сдвиге)

    class Config:
        arbitrary_types_allowed = True
        frozen = True


class ConvergenceVerdict(BaseModel):
    """good, либо divergent со свидетелем - лучом, на котором Δ ≤ 0"""
    good: bool
    witness: Optional[Tuple[int, ...]] = None
    delta: Optional[Fraction] = None

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    def __str__(self) -> str:
        if self.good:
            return "good"
        return f"divergent(witness={self.witness}, Δ={self.delta})"
