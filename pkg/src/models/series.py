"""
Усеченные степенные ряды по t с точными рациональными коэффициентами.

Ряд опционально уточнен мономами фугитивностей z^γ (показатели γ могут быть отрицательными):
ряд по t, полином Лорана по z. Все операции возвращают новые значения, исходные не меняются.
"""
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from src.exceptions import SeriesError

Key = Tuple[int, Tuple[int, ...]]
Scalar = Union[int, Fraction]


class TruncatedSeries:
    """Ряд Σ c_{e,γ} t^e z^γ, хранятся только e ≤ truncation_order и c ≠ 0"""

    __slots__ = ("truncation_order", "fugacity_rank", "_terms")

    def __init__(
        self,
        truncation_order: int,
        terms: Optional[Dict[Key, Scalar]] = None,
        fugacity_rank: int = 0,
    ):
        if truncation_order < 0:
            raise SeriesError(f"truncation order must be nonnegative, got {truncation_order}")
        self.truncation_order = int(truncation_order)
        self.fugacity_rank = int(fugacity_rank)
        cleaned: Dict[Key, Fraction] = {}
        for (t_exp, fug), coeff in (terms or {}).items():
            fug = tuple(int(x) for x in fug)
            if len(fug) != self.fugacity_rank:
                raise SeriesError(
                    f"fugacity vector {fug} does not match fugacity rank {self.fugacity_rank}"
                )
            if t_exp < 0:
                raise SeriesError(f"negative t-exponent {t_exp}")
            if t_exp > self.truncation_order:
                continue
            value = Fraction(coeff)
            if value == 0:
                continue
            key = (int(t_exp), fug)
            total = cleaned.get(key, Fraction(0)) + value
            if total == 0:
                cleaned.pop(key, None)
            else:
                cleaned[key] = total
        self._terms = cleaned

    # ------------------------------------------------------------------
    # Конструкторы
    # ------------------------------------------------------------------
    @classmethod
    def zero(cls, order: int, fugacity_rank: int = 0) -> "TruncatedSeries":
        return cls(order, {}, fugacity_rank)

    @classmethod
    def one(cls, order: int, fugacity_rank: int = 0) -> "TruncatedSeries":
        return cls.monomial(order, 0, (0,) * fugacity_rank, 1)

    @classmethod
    def monomial(
        cls, order: int, t_exp: int, fugacity: Sequence[int] = (), coeff: Scalar = 1
    ) -> "TruncatedSeries":
        """c · t^e · z^γ (пустой ряд, если e > order)"""
        fugacity = tuple(fugacity)
        return cls(order, {(t_exp, fugacity): coeff}, len(fugacity))

    @classmethod
    def from_coefficients(cls, coefficients: Sequence[Scalar], order: Optional[int] = None) -> "TruncatedSeries":
        """Неуточненный ряд из плотного списка коэффициентов"""
        if order is None:
            order = max(len(coefficients) - 1, 0)
        return cls(order, {(i, ()): c for i, c in enumerate(coefficients)}, 0)

    @classmethod
    def from_json_terms(cls, order: int, fugacity_rank: int, terms: Iterable[dict]) -> "TruncatedSeries":
        data = {}
        for item in terms:
            data[(int(item["t"]), tuple(item["fugacity"]))] = Fraction(str(item["coeff"]))
        return cls(order, data, fugacity_rank)

    # ------------------------------------------------------------------
    # Доступ
    # ------------------------------------------------------------------
    def terms(self) -> List[Tuple[int, Tuple[int, ...], Fraction]]:
        """Члены в каноническом порядке: по степени t, затем лексикографически по γ"""
        return [(t, fug, c) for (t, fug), c in sorted(self._terms.items())]

    def coefficient(self, t_exp: int, fugacity: Optional[Sequence[int]] = None) -> Fraction:
        if fugacity is None:
            fugacity = (0,) * self.fugacity_rank
        return self._terms.get((t_exp, tuple(fugacity)), Fraction(0))

    def coefficients(self) -> List[Fraction]:
        """Плотный список коэффициентов 0..order с z = 1"""
        dense = [Fraction(0)] * (self.truncation_order + 1)
        for (t_exp, _), coeff in self._terms.items():
            dense[t_exp] += coeff
        return dense

    def is_zero(self) -> bool:
        return not self._terms

    def constant_term(self) -> Dict[Tuple[int, ...], Fraction]:
        return {fug: c for (t, fug), c in self._terms.items() if t == 0}

    # ------------------------------------------------------------------
    # Арифметика
    # ------------------------------------------------------------------
    def _check_rank(self, other: "TruncatedSeries"):
        if self.fugacity_rank != other.fugacity_rank:
            raise SeriesError(
                f"fugacity rank mismatch: {self.fugacity_rank} vs {other.fugacity_rank}"
            )

    def __add__(self, other: Union["TruncatedSeries", Scalar]) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.one(self.truncation_order, self.fugacity_rank) * other
        self._check_rank(other)
        order = min(self.truncation_order, other.truncation_order)
        merged: Dict[Key, Fraction] = dict(self._terms)
        for key, coeff in other._terms.items():
            merged[key] = merged.get(key, Fraction(0)) + coeff
        return TruncatedSeries(order, merged, self.fugacity_rank)

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(
            self.truncation_order, {k: -c for k, c in self._terms.items()}, self.fugacity_rank
        )

    def __sub__(self, other: Union["TruncatedSeries", Scalar]) -> "TruncatedSeries":
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "TruncatedSeries":
        return (-self) + other

    def __mul__(self, other: Union["TruncatedSeries", Scalar]) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            scale = Fraction(other)
            return TruncatedSeries(
                self.truncation_order,
                {k: c * scale for k, c in self._terms.items()},
                self.fugacity_rank,
            )
        self._check_rank(other)
        order = min(self.truncation_order, other.truncation_order)
        product: Dict[Key, Fraction] = {}
        for (ta, fa), ca in self._terms.items():
            if ta > order:
                continue
            for (tb, fb), cb in other._terms.items():
                t_exp = ta + tb
                if t_exp > order:
                    continue
                fug = tuple(x + y for x, y in zip(fa, fb))
                key = (t_exp, fug)
                product[key] = product.get(key, Fraction(0)) + ca * cb
        return TruncatedSeries(order, product, self.fugacity_rank)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.truncation_order == other.truncation_order
            and self.fugacity_rank == other.fugacity_rank
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self.truncation_order, self.fugacity_rank, tuple(sorted(self._terms.items()))))

    def truncate(self, order: int) -> "TruncatedSeries":
        """Уменьшить порядок усечения (увеличить нельзя: старшие члены неизвестны)"""
        if order > self.truncation_order:
            raise SeriesError(
                f"cannot raise truncation order from {self.truncation_order} to {order}"
            )
        return TruncatedSeries(order, self._terms, self.fugacity_rank)

    def shift_t(self, k: int) -> "TruncatedSeries":
        """Умножение на t^k"""
        if k < 0:
            raise SeriesError(f"negative t-shift {k}")
        return TruncatedSeries(
            self.truncation_order,
            {(t + k, fug): c for (t, fug), c in self._terms.items()},
            self.fugacity_rank,
        )

    def with_fugacity(self, fugacity: Sequence[int]) -> "TruncatedSeries":
        """Неуточненный ряд, умноженный на z^γ (ранг фугитивностей становится len(γ))"""
        if self.fugacity_rank != 0:
            raise SeriesError("series already carries fugacities")
        fugacity = tuple(fugacity)
        return TruncatedSeries(
            self.truncation_order,
            {(t, fugacity): c for (t, _), c in self._terms.items()},
            len(fugacity),
        )

    def specialize_fugacity(self) -> "TruncatedSeries":
        """Подстановка z = 1"""
        collapsed: Dict[Key, Fraction] = {}
        for (t, _), c in self._terms.items():
            collapsed[(t, ())] = collapsed.get((t, ()), Fraction(0)) + c
        return TruncatedSeries(self.truncation_order, collapsed, 0)

    # ------------------------------------------------------------------
    # Вывод
    # ------------------------------------------------------------------
    def to_json_terms(self) -> List[dict]:
        result = []
        for t_exp, fug, coeff in self.terms():
            value = coeff.numerator if coeff.denominator == 1 else f"{coeff.numerator}/{coeff.denominator}"
            result.append({"t": t_exp, "fugacity": list(fug), "coeff": value})
        return result

    def _fugacity_names(self) -> List[str]:
        if self.fugacity_rank == 1:
            return ["z"]
        return [f"z{i + 1}" for i in range(self.fugacity_rank)]

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        names = self._fugacity_names()
        pieces: List[Tuple[bool, str]] = []
        for t_exp, fug, coeff in self.terms():
            factors = []
            if t_exp == 1:
                factors.append("t")
            elif t_exp > 1:
                factors.append(f"t^{t_exp}")
            for name, e in zip(names, fug):
                if e == 1:
                    factors.append(name)
                elif e != 0:
                    factors.append(f"{name}^{e}")
            negative = coeff < 0
            magnitude = -coeff if negative else coeff
            if magnitude != 1 or not factors:
                factors.insert(0, _fmt_scalar(magnitude))
            pieces.append((negative, "*".join(factors)))
        text = ("-" if pieces[0][0] else "") + pieces[0][1]
        for negative, body in pieces[1:]:
            text += (" - " if negative else " + ") + body
        return text

    def __repr__(self) -> str:
        return f"TruncatedSeries(order={self.truncation_order}, {self})"


def _fmt_scalar(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Произведение Коши с усечением по min(порядков)"""
    return a * b


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def geometric_factor(k: int, order: int, fugacity_rank: int = 0) -> TruncatedSeries:
    """1/(1 - t^k) = Σ_j t^{jk} до порядка order"""
    if k <= 0:
        raise SeriesError(f"geometric factor needs k >= 1, got {k}")
    zero_fug = (0,) * fugacity_rank
    return TruncatedSeries(order, {(j, zero_fug): 1 for j in range(0, order + 1, k)}, fugacity_rank)


def series_inverse_unit(a: TruncatedSeries) -> TruncatedSeries:
    """
    Обратный ряд для a с ненулевым рациональным свободным членом.

    В слоте t^0 допускается только член без фугитивностей.
    """
    constant = a.constant_term()
    zero_fug = (0,) * a.fugacity_rank
    if set(constant) - {zero_fug}:
        raise SeriesError("constant slot carries fugacity terms; not invertible in the series ring")
    c0 = constant.get(zero_fug, Fraction(0))
    if c0 == 0:
        raise SeriesError("series with zero constant term is not invertible")

    order = a.truncation_order
    # a = c0 (1 - u), 1/a = (1/c0) Σ u^k; u делится на t, значит k ≤ order
    u = (a - TruncatedSeries.monomial(order, 0, zero_fug, c0)) * (Fraction(-1) / c0)
    total = TruncatedSeries.one(order, a.fugacity_rank)
    power = TruncatedSeries.one(order, a.fugacity_rank)
    for _ in range(order):
        power = power * u
        if power.is_zero():
            break
        total = total + power
    return total * (Fraction(1) / c0)
