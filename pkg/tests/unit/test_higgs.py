"""
Unit-тесты для HiggsService (ветвь Хиггса и торическая двойственность)
"""
import pytest

from src.config import Settings
from src.exceptions import ExactnessError, TheoryValidationError
from src.models.higgs import DualityReport, DualityRow
from src.models.theory import TorusSequence
from src.services.higgs_service import HiggsService


@pytest.mark.unit
class TestHiggsDimension:
    """Размерности (ℂ[x, y] / μ)^T"""

    def test_a1_degree_two(self, higgs_service):
        """x₁x₂, y₁y₂ и x₁y₁ ≡ x₂y₂ по модулю μ"""
        problem = higgs_service.problem(1, [(1,), (-1,)])

        assert higgs_service.higgs_graded_dimension(problem, 2) == 3

    def test_constants(self, higgs_service):
        problem = higgs_service.problem(1, [(1,), (-1,)])

        assert higgs_service.higgs_graded_dimension(problem, 0) == 1

    def test_charge_obstruction(self, higgs_service):
        problem = higgs_service.problem(1, [(1,), (-1,)])

        assert higgs_service.higgs_graded_dimension(problem, 1) == 0

    def test_series(self, higgs_service):
        problem = higgs_service.problem(1, [(1,), (-1,)])

        assert higgs_service.higgs_series(problem, 4).coefficients() == [1, 0, 3, 0, 5]

    def test_degree_cap(self, monopole_service, theory_service):
        service = HiggsService(monopole_service, theory_service, Settings(threads=1, higgs_degree_cap=3))
        problem = service.problem(1, [(1,), (-1,)])

        with pytest.raises(TheoryValidationError):
            service.higgs_graded_dimension(problem, 4)

    def test_charge_length(self, higgs_service):
        with pytest.raises(TheoryValidationError):
            higgs_service.problem(2, [(1,)])

    def test_charge_permutation(self, higgs_service):
        """Порядок зарядов не влияет на размерности"""
        charges = [(1, 0), (-1, 1), (0, -1)]
        a = higgs_service.problem(2, charges)
        b = higgs_service.problem(2, list(reversed(charges)))

        for d in range(5):
            assert higgs_service.higgs_graded_dimension(a, d) == higgs_service.higgs_graded_dimension(b, d)

    def test_charge_negation(self, higgs_service):
        """Смена знака всех зарядов меняет местами x и y"""
        charges = [(1, 0), (-1, 1), (0, -1), (1, 1)]
        a = higgs_service.problem(2, charges)
        b = higgs_service.problem(2, [tuple(-x for x in q) for q in charges])

        for d in range(5):
            assert higgs_service.higgs_graded_dimension(a, d) == higgs_service.higgs_graded_dimension(b, d)


@pytest.mark.unit
class TestToricDuality:
    """Ряд Кулона T против ряда Хиггса T_F^∨"""

    def test_diagonal(self, higgs_service, diagonal_sequence):
        report = higgs_service.check_toric_duality(diagonal_sequence, 4)

        assert report.matched
        assert [row.coulomb for row in report.rows] == [1, 0, 3, 0, 5]
        assert report.verdict() == "MATCH through t^4"

    @pytest.mark.parametrize("d", [1, 2])
    def test_trivial_flavor_torus(self, higgs_service, identity_sequence, d):
        """Оба ряда - ряд 2d свободных переменных"""
        report = higgs_service.check_toric_duality(identity_sequence(d), 3)

        assert report.matched
        assert report.rows[1].higgs == 2 * d

    def test_order_zero(self, higgs_service, diagonal_sequence):
        report = higgs_service.check_toric_duality(diagonal_sequence, 0)

        assert report.matched
        assert report.rows == (DualityRow(degree=0, coulomb=1, higgs=1),)

    def test_dual_problem_charges(self, higgs_service, diagonal_sequence):
        problem = higgs_service.dual_problem(diagonal_sequence)

        assert problem.torus_rank == 1
        assert problem.charges == ((1,), (-1,))

    def test_not_exact(self, higgs_service):
        sequence = TorusSequence(inclusion_matrix=((2,),), projection_matrix=())

        with pytest.raises(ExactnessError):
            higgs_service.check_toric_duality(sequence, 2)

    def test_mismatch_verdict(self):
        report = DualityReport(order=2, rows=(
            DualityRow(degree=0, coulomb=1, higgs=1),
            DualityRow(degree=1, coulomb=2, higgs=3),
            DualityRow(degree=2, coulomb=3, higgs=3),
        ))

        assert not report.matched
        assert report.verdict() == "MISMATCH at t^1: coulomb=2 higgs=3"
        assert report.render().splitlines()[2].endswith("<-")

    @pytest.mark.parametrize("sequence", [
        TorusSequence(inclusion_matrix=((1,), (1,)), projection_matrix=((1, -1),)),
        TorusSequence(inclusion_matrix=((1,), (1,), (1,)), projection_matrix=((1, -1, 0), (0, 1, -1))),
    ])
    def test_dual_sequence_agrees(self, higgs_service, theory_service, sequence):
        """Двойственная последовательность дает тот же вердикт"""
        report = higgs_service.check_toric_duality(sequence, 4)
        dual_report = higgs_service.check_toric_duality(theory_service.dualize_torus(sequence), 4)

        assert report.matched
        assert dual_report.matched == report.matched
