"""
Иерархия ошибок пакета.

InputError -> код выхода 2 (файл/синтаксис), DomainError -> код выхода 1 (математический вердикт).
"""
from fractions import Fraction
from typing import Optional, Sequence


class CoulombError(Exception):
    """Базовая ошибка пакета"""
    exit_code = 1


class InputError(CoulombError):
    """Проблема с входными данными (файл, синтаксис, формат)"""
    exit_code = 2


class TheoryParseError(InputError):
    """Ошибка разбора файла теории / колчана / последовательности торов"""

    def __init__(self, message: str, line_no: Optional[int] = None, path: Optional[str] = None):
        self.line_no = line_no
        self.path = path
        location = ""
        if path:
            location += f"{path}:"
        if line_no is not None:
            location += f"{line_no}:"
        super().__init__(f"{location} {message}" if location else message)


class TheoryValidationError(InputError):
    """Нарушены инварианты GaugeTheory / QuiverSpec / TorusSequence"""


class ElementSyntaxError(InputError):
    """Неверная запись элемента алгебры"""


class DomainError(CoulombError):
    """Математический вердикт: расходимость, несовпадение и т.п."""
    exit_code = 1


class DivergenceError(DomainError):
    """Ветвь Кулона не является конусом: ряд Гильберта расходится"""

    def __init__(self, witness: Sequence[int], delta: Fraction):
        self.witness = tuple(witness)
        self.delta = Fraction(delta)
        shown = ",".join(str(x) for x in self.witness)
        if len(self.witness) == 1:
            shown = str(self.witness[0])
        else:
            shown = f"({shown})"
        super().__init__(
            f"divergent: Coulomb branch is not a cone (witness coweight m={shown}, Δ={_fmt_fraction(self.delta)})"
        )


class SeriesError(DomainError):
    """Ошибка арифметики усеченных рядов"""


class ExactnessError(DomainError):
    """Последовательность торов не точна"""

    def __init__(self, message: str, invariant_factor: Optional[int] = None):
        self.invariant_factor = invariant_factor
        super().__init__(message)


class AlgebraError(DomainError):
    """Ошибка в абелевой алгебре Кулона (несовпадение алгебр, ħ во входе и т.п.)"""


class DualityMismatch(DomainError):
    """Ряды ветвей Кулона и Хиггса не совпали"""

    def __init__(self, degree: int, coulomb: int, higgs: int):
        self.degree = degree
        self.coulomb = coulomb
        self.higgs = higgs
        super().__init__(f"MISMATCH at t^{degree}: coulomb={coulomb} higgs={higgs}")


class VerificationFailure(DomainError):
    """Провалилась проверка свойств (ассоциативность, аксиомы Пуассона, оракулы)"""


def _fmt_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
