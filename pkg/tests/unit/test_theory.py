"""
Unit-тесты для TheoryService и TheoryFileParser
"""
import pytest

from src.exceptions import ExactnessError, TheoryParseError, TheoryValidationError
from src.models.theory import Coweight, GaugeTheory, QuiverSpec, TorusSequence
from src.services.theory_service import smith_invariant_factors, sparse_rank


@pytest.mark.unit
class TestValidateTheory:
    """Инварианты (G, N)"""

    def test_single_charge_is_valid(self, theory_service):
        theory = theory_service.build_theory(gl_factors=(), torus_rank=1, weights=((1,),))

        assert theory.total_rank == 1
        assert theory.weights == ((1,),)

    def test_pure_torus_is_valid(self, theory_service):
        theory = theory_service.build_theory(gl_factors=(), torus_rank=1, weights=())

        assert theory.weights == ()

    def test_weight_length_mismatch(self, theory_service):
        """Вес длины 3 для GL(2)"""
        with pytest.raises(TheoryValidationError):
            theory_service.build_theory(gl_factors=(2,), torus_rank=0, weights=((1, 0, 0),))

    def test_weights_are_sorted(self, theory_service):
        """Каноническая форма не зависит от порядка весов"""
        a = theory_service.build_theory(gl_factors=(), torus_rank=2, weights=((1, 1), (0, 1)))
        b = theory_service.build_theory(gl_factors=(), torus_rank=2, weights=((0, 1), (1, 1)))

        assert a == b
        assert theory_service.validate_theory(a) == a

    def test_dominance(self, gl2_with_flavors):
        theory = gl2_with_flavors(1)

        assert Coweight(entries=(1, 0)).is_dominant_for(theory)
        assert not Coweight(entries=(0, 1)).is_dominant_for(theory)

    def test_pi1_class(self):
        """GL-блок дает сумму координат, тор - сами координаты"""
        theory = GaugeTheory(gl_factors=(2,), torus_rank=1, weights=())

        assert theory.pi1_class((3, -1, 5)) == (2, 5)


@pytest.mark.unit
class TestQuivers:
    """Калибровочная теория колчана"""

    def test_jordan_quiver(self, theory_service):
        """Петля дает вес 0, W - вес 1"""
        quiver = QuiverSpec(vertices=("a",), edges=(("a", "a"),), dim_v={"a": 1}, dim_w={"a": 1})
        theory = theory_service.from_quiver(quiver)

        assert theory.torus_rank == 1
        assert theory.weights == ((0,), (1,))

    def test_a1_quiver(self, theory_service):
        quiver = QuiverSpec(vertices=("a",), dim_v={"a": 1}, dim_w={"a": 2})

        assert theory_service.from_quiver(quiver).weights == ((1,), (1,))

    def test_a2_quiver(self, theory_service):
        quiver = QuiverSpec(
            vertices=("1", "2"), edges=(("1", "2"),), dim_v={"1": 1, "2": 1}, dim_w={"1": 1, "2": 0}
        )
        theory = theory_service.from_quiver(quiver)

        assert theory.torus_rank == 2
        assert set(theory.weights) == {(-1, 1), (1, 0)}

    def test_gl_vertex(self, theory_service):
        """Вершина с V=2 и петлей: присоединенное представление плюс фундаментальное"""
        quiver = QuiverSpec(vertices=("a",), edges=(("a", "a"),), dim_v={"a": 2}, dim_w={"a": 1})
        theory = theory_service.from_quiver(quiver)

        assert theory.gl_factors == (2,)
        assert sorted(theory.weights) == [(-1, 1), (0, 0), (0, 0), (0, 1), (1, -1), (1, 0)]

    def test_undeclared_vertex(self, theory_service):
        quiver = QuiverSpec(vertices=("a",), edges=(("a", "b"),), dim_v={"a": 1}, dim_w={"a": 0})

        with pytest.raises(TheoryValidationError):
            theory_service.from_quiver(quiver)


@pytest.mark.unit
class TestTorusSequences:
    """Точность, двойственность и ограничение на подтор"""

    def test_dualize_diagonal(self, theory_service, diagonal_sequence):
        dual = theory_service.dualize_torus(diagonal_sequence)

        assert dual.inclusion_matrix == ((1,), (-1,))
        assert dual.projection_matrix == ((1, 1),)

    def test_dualize_identity(self, theory_service, identity_sequence):
        """Тривиальный T_F дает тривиальный T_F^∨"""
        dual = theory_service.dualize_torus(identity_sequence(2))

        assert dual.sub_rank == 0
        assert dual.flavor_rank == 2

    def test_dualize_twice(self, theory_service, diagonal_sequence):
        twice = theory_service.dualize_torus(theory_service.dualize_torus(diagonal_sequence))

        assert twice == diagonal_sequence

    def test_torsion_cokernel(self, theory_service):
        """Вложение (2)ᵀ не точно: инвариантный множитель 2"""
        sequence = TorusSequence(inclusion_matrix=((2,),), projection_matrix=())

        with pytest.raises(ExactnessError) as exc_info:
            theory_service.check_exact(sequence)
        assert exc_info.value.invariant_factor == 2

    def test_nonzero_composite(self, theory_service):
        sequence = TorusSequence(inclusion_matrix=((1,), (1,)), projection_matrix=((1, 0),))

        with pytest.raises(ExactnessError):
            theory_service.check_exact(sequence)

    def test_restrict_diagonal(self, theory_service, diagonal_sequence):
        theory = theory_service.restrict_to_subtorus(diagonal_sequence)

        assert theory.torus_rank == 1
        assert theory.weights == ((1,), (1,))

    def test_restrict_identity(self, theory_service, identity_sequence):
        theory = theory_service.restrict_to_subtorus(identity_sequence(2))

        assert theory.weights == ((0, 1), (1, 0))

    def test_restrict_trivial_subtorus(self, theory_service):
        """Подтор ранга 0: все веса - пустые векторы"""
        sequence = TorusSequence(inclusion_matrix=((), ()), projection_matrix=((1, 0), (0, 1)))
        theory = theory_service.restrict_to_subtorus(sequence)

        assert theory.total_rank == 0
        assert theory.weights == ((), ())

    def test_smith_factors(self):
        assert smith_invariant_factors(((2, 0), (0, 3))) == [1, 6]

    def test_sparse_rank(self):
        from fractions import Fraction
        rows = [{"a": Fraction(1), "b": Fraction(2)}, {"a": Fraction(2), "b": Fraction(4)}, {"c": Fraction(1)}]

        assert sparse_rank(rows) == 2


@pytest.mark.unit
class TestTheoryParser:
    """Форматы файлов"""

    def test_parse_theory(self, file_parser):
        text = "# U(1), заряд 3\ntorus 1\nweight 3\n"

        assert file_parser.parse_theory_text(text) == GaugeTheory(torus_rank=1, weights=((3,),))

    def test_parse_gl_theory(self, file_parser):
        text = "gl 2\nweight 1 0\nweight 0 1\n"
        theory = file_parser.parse_theory_text(text)

        assert theory.gl_factors == (2,)
        assert theory.torus_rank == 0

    def test_unknown_directive_line_number(self, file_parser):
        text = "torus 1\n\nfoo 3\n"

        with pytest.raises(TheoryParseError) as exc_info:
            file_parser.parse_theory_text(text, "bad.th")
        assert exc_info.value.line_no == 3
        assert "bad.th:3:" in str(exc_info.value)

    def test_weight_length_error(self, file_parser):
        with pytest.raises(TheoryParseError) as exc_info:
            file_parser.parse_theory_text("torus 2\nweight 1\n")
        assert exc_info.value.line_no == 2

    def test_parse_quiver(self, file_parser):
        text = "vertex a V=1 W=1\nedge a a\n"
        quiver = file_parser.parse_quiver_text(text)

        assert quiver.edges == (("a", "a"),)
        assert quiver.dim_w == {"a": 1}

    def test_quiver_undeclared_vertex(self, file_parser):
        text = "vertex a V=1\nedge a b\n"

        with pytest.raises(TheoryParseError) as exc_info:
            file_parser.parse_quiver_text(text)
        assert exc_info.value.line_no == 2

    def test_parse_sequence(self, file_parser, diagonal_sequence):
        text = "include 1\ninclude 1\nproject 1 -1\n"

        assert file_parser.parse_sequence_text(text) == diagonal_sequence

    def test_render_round_trip(self, file_parser, theory_service, gl2_with_flavors):
        theory = gl2_with_flavors(2)
        text = theory_service.render_theory(theory)

        assert file_parser.parse_theory_text(text) == theory

    def test_parse_theory_file(self, file_parser, write_file):
        path = write_file("u1.th", "torus 1\nweight 1\n")

        assert file_parser.parse_theory_file(path).weights == ((1,),)
