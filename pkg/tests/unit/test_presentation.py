"""
Unit-тесты для PresentationBuilder (образующие и соотношения)
"""
from fractions import Fraction

import pytest

from src.services.presentation_builder import parallelepiped_points


@pytest.mark.unit
class TestHilbertBasis:
    """Кандидаты и их сокращение"""

    def test_parallelepiped(self):
        """Определитель 2: две точки"""
        assert parallelepiped_points([(1, 0), (1, 2)]) == {(0, 0), (1, 1)}

    def test_unimodular_parallelepiped(self):
        assert parallelepiped_points([(1, 0), (0, 1)]) == {(0, 0)}

    def test_rank_one_generators(self, presentation_builder, algebra):
        A = algebra(1, (3,))
        presentation = presentation_builder.presentation(A)

        assert [g.lattice_point for g in presentation.generators if g.lattice_point] == [(1,), (-1,)]

    def test_normalized_scale(self, presentation_builder, algebra):
        """ê¹ = e¹ / 2² для веса 2"""
        A = algebra(1, (2,))

        assert presentation_builder.normalized_generator(A, (1,)) == Fraction(1, 4)
        assert presentation_builder.normalized_generator(A, (-1,)) == 1


@pytest.mark.unit
class TestPresentation:
    """Копредставления абелевых ветвей"""

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_type_a_relation(self, presentation_builder, algebra, n):
        """ℂ[w, x, y] / (xy = w^N)"""
        presentation = presentation_builder.presentation(algebra(1, (n,)))
        expected = "x*y = w" if n == 1 else f"x*y = w^{n}"

        assert [g.name for g in presentation.generators] == ["w", "x", "y"]
        assert [r.text for r in presentation.relations] == [expected]
        assert not presentation.laurent

    def test_degrees(self, presentation_builder, algebra):
        presentation = presentation_builder.presentation(algebra(1, (3,)))

        assert {g.name: g.t_degree for g in presentation.generators} == {"w": 2, "x": 3, "y": 3}

    def test_pure_torus(self, presentation_builder, algebra):
        """ℂ[w, x^±]: соотношение x·x̄ = 1"""
        presentation = presentation_builder.presentation(algebra(1))

        assert [g.name for g in presentation.generators] == ["w", "x", "xbar"]
        assert [r.text for r in presentation.relations] == ["x*xbar = 1"]
        assert presentation.laurent
        assert presentation.checked_order is None

    def test_render(self, presentation_builder, algebra):
        text = presentation_builder.presentation(algebra(1, (3,))).render()

        assert "generators:" in text
        assert "  x*y = w^3" in text

    def test_rank_two_is_sufficient(self, presentation_builder, algebra):
        """Проверка достаточности проходит до t⁴"""
        A = algebra(2, (1, 0), (0, 1), (1, 1))
        presentation = presentation_builder.presentation(A, check_order=4)

        assert presentation.checked_order == 4
        assert len([g for g in presentation.generators if g.lattice_point]) >= 2
        assert all(" = " in r.text for r in presentation.relations)
