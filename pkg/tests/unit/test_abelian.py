"""
Unit-тесты для AbelianCoulombAlgebra и ElementParser
"""
import pytest
from hypothesis import given, settings, strategies as st

from src.exceptions import AlgebraError, DivergenceError, ElementSyntaxError
from src.models.algebra import AbelianAlgebra
from src.models.theory import GaugeTheory
from src.services.abelian_algebra import AbelianCoulombAlgebra, classical_exponent, shift_interval
from src.services.element_parser import ElementParser

service = AbelianCoulombAlgebra()

ALGEBRAS = [
    AbelianAlgebra(rank=1, weights=((1,),)),
    AbelianAlgebra(rank=1, weights=((2,),)),
    AbelianAlgebra(rank=1, weights=()),
    AbelianAlgebra(rank=2, weights=((1, 0), (1, 1))),
]


@st.composite
def elements(draw, algebra: AbelianAlgebra, with_hbar: bool = False):
    """Сумма до трех слагаемых c · w^a ħ^b e^λ с небольшими данными"""
    result = algebra.zero()
    for _ in range(draw(st.integers(min_value=1, max_value=3))):
        lam = tuple(draw(st.integers(min_value=-2, max_value=2)) for _ in range(algebra.rank))
        poly = algebra.ring.one * draw(st.integers(min_value=-3, max_value=3))
        for w in algebra.w:
            poly = poly * w ** draw(st.integers(min_value=0, max_value=1))
        if with_hbar:
            poly = poly * algebra.hbar ** draw(st.integers(min_value=0, max_value=1))
        result = result + algebra.monomial(lam, poly)
    return result


@st.composite
def algebra_with_elements(draw, count: int, with_hbar: bool = False):
    algebra = draw(st.sampled_from(ALGEBRAS))
    return (algebra,) + tuple(draw(elements(algebra, with_hbar)) for _ in range(count))


@pytest.mark.unit
class TestStructureConstants:
    """Показатели и лестницы сдвигов"""

    def test_classical_exponent(self):
        assert classical_exponent(1, -1) == 1
        assert classical_exponent(2, 3) == 0
        assert classical_exponent(3, -5) == 3

    def test_shift_interval_opposite(self):
        assert shift_interval(1, -1) == (0, 1)
        assert shift_interval(-1, 1) == (-1, 0)

    def test_shift_interval_length(self):
        """Длина лестницы равна классическому показателю"""
        for a in range(-4, 5):
            for b in range(-4, 5):
                lo, hi = shift_interval(a, b)
                assert max(hi - lo, 0) == classical_exponent(a, b)


@pytest.mark.unit
class TestClassicalProduct:
    """Коммутативное умножение"""

    def test_xy_is_w(self, algebra):
        A = algebra(1, (1,))
        product = service.multiply_classical(A, A.monomial((1,)), A.monomial((-1,)))

        assert product == A.w_element(0)

    def test_pure_torus_group_algebra(self, algebra):
        """e³ e⁻⁵ = e⁻²"""
        A = algebra(1)
        product = service.multiply_classical(A, A.monomial((3,)), A.monomial((-5,)))

        assert product == A.monomial((-2,))

    def test_rank_two(self, algebra):
        A = algebra(2, (1, 0), (1, 1))
        product = service.multiply_classical(A, A.monomial((1, 0)), A.monomial((-1, 0)))
        w1, w2 = A.w

        assert product == A.polynomial(w1 * (w1 + w2))

    def test_rejects_hbar(self, algebra):
        A = algebra(1, (1,))

        with pytest.raises(AlgebraError):
            service.multiply_classical(A, A.polynomial(A.hbar), A.one())

    def test_mixed_algebras(self, algebra):
        A = algebra(1, (1,))
        B = algebra(1, (2,))

        with pytest.raises(AlgebraError):
            service.multiply_classical(A, A.one(), B.one())

    @settings(derandomize=True, max_examples=40, deadline=None)
    @given(algebra_with_elements(3))
    def test_commutative_and_associative(self, data):
        A, a, b, c = data
        mul = service.multiply_classical

        assert mul(A, a, b) == mul(A, b, a)
        assert mul(A, mul(A, a, b), c) == mul(A, a, mul(A, b, c))

    def test_gl_theory_rejected(self):
        theory = GaugeTheory(gl_factors=(2,), weights=((1, 0), (0, 1)))

        with pytest.raises(AlgebraError):
            service.algebra_from_theory(theory)


@pytest.mark.unit
class TestQuantizedProduct:
    """Квантованное умножение, e^λ q(w) = q(w + ħλ) e^λ"""

    def test_normal_ordering(self, algebra):
        """e¹ · w = (w + ħ) e¹"""
        A = algebra(1, (1,))
        product = service.multiply_quantized(A, A.monomial((1,)), A.w_element(0))

        assert product == A.monomial((1,), A.w[0] + A.hbar)

    def test_commutator_is_hbar(self, algebra):
        """e¹e⁻¹ - e⁻¹e¹ = ħ"""
        A = algebra(1, (1,))

        assert service.commutator(A, A.monomial((1,)), A.monomial((-1,))) == A.polynomial(A.hbar)

    @settings(derandomize=True, max_examples=40, deadline=None)
    @given(algebra_with_elements(3, with_hbar=True))
    def test_associative(self, data):
        A, a, b, c = data
        mul = service.multiply_quantized

        assert mul(A, mul(A, a, b), c) == mul(A, a, mul(A, b, c))

    @settings(derandomize=True, max_examples=40, deadline=None)
    @given(algebra_with_elements(2))
    def test_classical_limit(self, data):
        A, a, b = data

        assert service.multiply_quantized(A, a, b).set_hbar_zero() == service.multiply_classical(A, a, b)


@pytest.mark.unit
class TestPoissonBracket:
    """Скобка Пуассона"""

    def test_xy(self, algebra):
        """{x, y} = 1"""
        A = algebra(1, (1,))

        assert service.poisson_bracket(A, A.monomial((1,)), A.monomial((-1,))) == A.one()

    def test_charge_two(self, algebra):
        """{w, x} = -x, {w, y} = y, {x, y} = 8w для весов {2}"""
        A = algebra(1, (2,))
        w, x, y = A.w_element(0), A.monomial((1,)), A.monomial((-1,))

        assert service.poisson_bracket(A, w, x) == -x
        assert service.poisson_bracket(A, w, y) == y
        assert service.poisson_bracket(A, x, y) == w.scale(8)

    def test_w_commute(self, algebra):
        A = algebra(2, (1, 0), (1, 1))

        assert service.poisson_bracket(A, A.w_element(0), A.w_element(1)).is_zero()

    def test_moment_map_action(self, algebra):
        """{μ_χ, e^λ} = -⟨χ, λ⟩ e^λ"""
        A = algebra(2, (1, 0), (1, 1))
        mu = service.hamiltonian_moment_map(A, (1, 2))
        e = A.monomial((3, -1))

        assert service.poisson_bracket(A, mu, e) == e.scale(-1)

    @settings(derandomize=True, max_examples=30, deadline=None)
    @given(algebra_with_elements(3))
    def test_axioms(self, data):
        """Антисимметрия, Лейбниц, Якоби"""
        A, a, b, c = data
        br = service.poisson_bracket
        mul = service.multiply_classical

        assert br(A, a, a).is_zero()
        assert br(A, a, b) == -br(A, b, a)
        assert br(A, a, mul(A, b, c)) == mul(A, br(A, a, b), c) + mul(A, b, br(A, a, c))
        assert (br(A, a, br(A, b, c)) + br(A, b, br(A, c, a)) + br(A, c, br(A, a, b))).is_zero()

    def test_lie_algebra_of_a1(self, algebra):
        """Степень 2 для весов {2}: sl₂, три образующие w, x, y"""
        A = algebra(1, (2,))
        basis, table = service.degree_two_lie_algebra(A)

        assert len(basis) == 3
        assert len(table) == 3


@pytest.mark.unit
class TestGradedDimension:
    """Независимый подсчет мономов"""

    def test_a1_degree_four(self, algebra):
        """w², wx, wy, x², y²"""
        assert service.graded_dimension(algebra(1, (2,)), 4) == 5

    def test_degree_zero(self, algebra):
        for A in (algebra(1, (1,)), algebra(2, (1, 0), (1, 1), (0, 1))):
            assert service.graded_dimension(A, 0) == 1

    def test_refined(self, algebra):
        assert service.graded_dimension(algebra(1, (1,)), 1, refined=True) == {(1,): 1, (-1,): 1}

    def test_divergent(self, algebra):
        with pytest.raises(DivergenceError):
            service.graded_dimension(algebra(1), 2)

    def test_basis_size(self, algebra):
        A = algebra(2, (1, 0), (0, 1), (1, 1))

        for d in range(5):
            assert len(service.graded_basis(A, d)) == service.graded_dimension(A, d)


@pytest.mark.unit
class TestLocalization:
    """Обратимость e^λ после обращения весов"""

    def test_rank_one(self, algebra):
        witness = service.localization_units(algebra(1, (1,)), (1,))

        assert witness.verified
        assert witness.product == "w1"

    def test_pure_torus_unit(self, algebra):
        witness = service.localization_units(algebra(1), (1,))

        assert witness.product == "1"
        assert str(witness).startswith("E[1]*E[-1] = 1")

    def test_rank_two(self, algebra):
        witness = service.localization_units(algebra(2, (1, 0), (1, 1)), (1, 0))

        assert witness.product == "w1^2 + w1*w2"


@pytest.mark.unit
class TestElementParser:
    """Запись элементов"""

    def test_parse_and_print(self, algebra):
        A = algebra(2, (1, 0), (1, 1))
        element = ElementParser(A).parse("3*w1^2*E[1,-1] - 1/2*h*w2 + E[0,2]")

        assert element.coefficient((1, -1)) == A.w[0] ** 2 * 3
        assert str(element) == "-1/2*w2*h + E[0,2] + 3*w1^2*E[1,-1]"

    def test_bare_w_in_rank_one(self, algebra):
        A = algebra(1, (1,))

        assert ElementParser(A).parse("-w") == A.w_element(0).scale(-1)

    def test_zero_prints_as_zero(self, algebra):
        A = algebra(1, (1,))

        assert str(ElementParser(A).parse("E[1] - E[1]")) == "0"

    def test_lattice_factor_is_last(self, algebra):
        """w*E[1] допустимо, E[1]*w - нет: порядок множителей значим"""
        A = algebra(1, (1,))

        assert ElementParser(A).parse("w*E[1]") == A.monomial((1,), A.w[0])
        with pytest.raises(ElementSyntaxError, match="last factor"):
            ElementParser(A).parse("E[1]*w")

    @pytest.mark.parametrize("text", ["", "E[1]*E[2]", "w3", "2 +", "* w", "E[1,2]", "w w", "E[1]*w", "E[1]*2"])
    def test_syntax_errors(self, algebra, text):
        with pytest.raises(ElementSyntaxError):
            ElementParser(algebra(1, (1,))).parse(text)
