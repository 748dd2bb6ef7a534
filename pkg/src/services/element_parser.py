"""
Разбор и печать элементов абелевой алгебры.

    element := term (('+'|'-') term)*
    term    := factor ('*' factor)*
    factor  := INT | INT/INT | w<i>[^k] | w[^k] (только ранг 1) | h[^k] | E[λ1,...,λℓ]

Не больше одного E[...] на слагаемое (без него - E[0,...,0]), и он последний множитель.
"""
import logging
import re
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ

from src.exceptions import ElementSyntaxError
from src.models.algebra import AbelianAlgebra, AbelianElement, to_fraction

logger = logging.getLogger(__name__)

TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<lattice>E\[[^\]]*\])"
    r"|(?P<var>w\d*|h)(?:\^(?P<exp>\d+))?"
    r"|(?P<rational>\d+/\d+)"
    r"|(?P<int>\d+)"
    r"|(?P<op>[+\-*])"
    r")"
)


def format_lattice(lam: Sequence[int]) -> str:
    return "E[" + ",".join(str(x) for x in lam) + "]"


class ElementParser:
    """Текст ⇄ AbelianElement для конкретной алгебры"""

    def __init__(self, algebra: AbelianAlgebra):
        self.algebra = algebra

    def _tokenize(self, text: str) -> List[Tuple[str, re.Match]]:
        tokens = []
        pos = 0
        stripped = text.rstrip()
        while pos < len(stripped):
            match = TOKEN.match(stripped, pos)
            if not match or match.end() == pos:
                raise ElementSyntaxError(f"unexpected character at position {pos}: '{stripped[pos:pos + 10]}'")
            kind = next(k for k in ("lattice", "var", "rational", "int", "op") if match.group(k) is not None)
            tokens.append((kind, match))
            pos = match.end()
        return tokens

    def _variable(self, name: str):
        rank = self.algebra.rank
        if name == "h":
            return self.algebra.hbar
        if name == "w":
            if rank != 1:
                raise ElementSyntaxError("bare 'w' is only allowed in rank 1; use w1..wℓ")
            return self.algebra.w[0]
        index = int(name[1:])
        if not 1 <= index <= rank:
            raise ElementSyntaxError(f"variable '{name}' out of range for rank {rank}")
        return self.algebra.w[index - 1]

    def _lattice(self, token: str) -> Tuple[int, ...]:
        body = token[2:-1].strip()
        entries = [x.strip() for x in body.split(",")] if body else []
        try:
            lam = tuple(int(x) for x in entries)
        except ValueError:
            raise ElementSyntaxError(f"bad lattice point '{token}'")
        if len(lam) != self.algebra.rank:
            raise ElementSyntaxError(f"lattice point {token} has {len(lam)} entries, expected {self.algebra.rank}")
        return lam

    def parse(self, text: str) -> AbelianElement:
        tokens = self._tokenize(text)
        if not tokens:
            raise ElementSyntaxError("empty element")
        R = self.algebra.ring
        result = self.algebra.zero()

        sign = 1
        poly = R.one
        lam: Optional[Tuple[int, ...]] = None
        expect_factor = True
        seen_factor = False

        def flush():
            point = lam if lam is not None else (0,) * self.algebra.rank
            return self.algebra.monomial(point, poly * sign)

        for kind, match in tokens:
            if kind == "op":
                op = match.group("op")
                if op == "*":
                    if expect_factor:
                        raise ElementSyntaxError("'*' without a left factor")
                    expect_factor = True
                    continue
                # '+'/'-' закрывает слагаемое либо служит унарным знаком
                if seen_factor:
                    if expect_factor:
                        raise ElementSyntaxError(f"dangling '{op}'")
                    result = result + flush()
                    poly, lam, seen_factor = R.one, None, False
                    sign = 1
                if op == "-":
                    sign = -sign
                expect_factor = True
                continue

            if not expect_factor:
                raise ElementSyntaxError(f"missing '*' before '{match.group(0).strip()}'")
            # e^λ стоит справа: E[1]*w - это (w + ħ)·E[1], а не w·E[1]
            if lam is not None:
                raise ElementSyntaxError(
                    f"E[...] must be the last factor of a term, got '{match.group(0).strip()}' after it"
                )
            if kind == "lattice":
                lam = self._lattice(match.group("lattice"))
            elif kind == "var":
                exponent = int(match.group("exp")) if match.group("exp") else 1
                poly = poly * self._variable(match.group("var")) ** exponent
            else:
                value = Fraction(match.group(kind))
                poly = poly * QQ(value.numerator, value.denominator)
            expect_factor = False
            seen_factor = True

        if expect_factor:
            raise ElementSyntaxError("element ends with an operator")
        result = result + flush()
        logger.debug(f"🧮 Разобран элемент: {text!r}")
        return result


def _format_monomial(monom: Tuple[int, ...], rank: int) -> List[str]:
    factors = []
    for i, e in enumerate(monom[:rank]):
        if e == 1:
            factors.append(f"w{i + 1}")
        elif e > 1:
            factors.append(f"w{i + 1}^{e}")
    if monom[rank] == 1:
        factors.append("h")
    elif monom[rank] > 1:
        factors.append(f"h^{monom[rank]}")
    return factors


def format_element(element: AbelianElement) -> str:
    """Одна запись на моном; e^λ справа; λ = 0 не печатается"""
    rank = element.algebra.rank
    pieces: List[Tuple[bool, str]] = []
    for lam, poly in element.terms():
        for monom, coeff in sorted(poly.items(), key=lambda item: (-sum(item[0]), tuple(-e for e in item[0]))):
            value = to_fraction(coeff)
            factors = _format_monomial(monom, rank)
            if any(lam):
                factors.append(format_lattice(lam))
            negative = value < 0
            magnitude = -value if negative else value
            if magnitude != 1 or not factors:
                text = str(magnitude.numerator) if magnitude.denominator == 1 else f"{magnitude.numerator}/{magnitude.denominator}"
                factors.insert(0, text)
            pieces.append((negative, "*".join(factors)))
    if not pieces:
        return "0"
    text = ("-" if pieces[0][0] else "") + pieces[0][1]
    for negative, body in pieces[1:]:
        text += (" - " if negative else " + ") + body
    return text
