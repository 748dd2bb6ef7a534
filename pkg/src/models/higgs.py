from typing import Optional, Tuple

from pydantic import BaseModel, field_validator


class HiggsProblem(BaseModel):
    """Тор ранга n на ℂ^d: x_j несут заряд charges[j], y_j - противоположный"""
    torus_rank: int
    charges: Tuple[Tuple[int, ...], ...]
    degree_cap: int = 12

    class Config:
        frozen = True

    @field_validator("degree_cap")
    @classmethod
    def _nonnegative_cap(cls, value: int) -> int:
        if value < 0:
            raise ValueError("degree_cap must be nonnegative")
        return value


class DualityRow(BaseModel):
    degree: int
    coulomb: int
    higgs: int

    class Config:
        frozen = True

    @property
    def ok(self) -> bool:
        return self.coulomb == self.higgs


class DualityReport(BaseModel):
    """Покоэффициентное сравнение рядов ветвей Кулона и Хиггса"""
    order: int
    rows: Tuple[DualityRow, ...]

    class Config:
        frozen = True

    @property
    def first_mismatch(self) -> Optional[DualityRow]:
        for row in self.rows:
            if not row.ok:
                return row
        return None

    @property
    def matched(self) -> bool:
        return self.first_mismatch is None

    def verdict(self) -> str:
        row = self.first_mismatch
        if row is None:
            return f"MATCH through t^{self.order}"
        return f"MISMATCH at t^{row.degree}: coulomb={row.coulomb} higgs={row.higgs}"

    def render(self) -> str:
        lines = ["degree  coulomb  higgs"]
        for row in self.rows:
            marker = "" if row.ok else "  <-"
            lines.append(f"{row.degree:>6}  {row.coulomb:>7}  {row.higgs:>5}{marker}")
        lines.append(self.verdict())
        return "\n".join(lines)
