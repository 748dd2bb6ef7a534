"""
Общие фикстуры для всех тестов
"""
import pytest

from src.config import Settings
from src.models.algebra import AbelianAlgebra
from src.models.theory import GaugeTheory, TorusSequence
from src.services.abelian_algebra import AbelianCoulombAlgebra
from src.services.higgs_service import HiggsService
from src.services.monopole_service import MonopoleService
from src.services.presentation_builder import PresentationBuilder
from src.services.theory_parser import TheoryFileParser
from src.services.theory_service import TheoryService


@pytest.fixture
def test_settings():
    """
    Настройки без параллелизма и с небольшими порогами
    """
    return Settings(threads=1, default_order=6, presentation_check_order=6, quantize_trials=20)


@pytest.fixture
def theory_service():
    return TheoryService()


@pytest.fixture
def file_parser(theory_service):
    return TheoryFileParser(theory_service)


@pytest.fixture
def monopole_service(test_settings):
    return MonopoleService(test_settings)


@pytest.fixture
def algebra_service():
    return AbelianCoulombAlgebra()


@pytest.fixture
def presentation_builder(algebra_service, test_settings):
    return PresentationBuilder(algebra_service, test_settings)


@pytest.fixture
def higgs_service(monopole_service, theory_service, test_settings):
    return HiggsService(monopole_service, theory_service, test_settings)


# ----------------------------------------------------------------------
# Теории
# ----------------------------------------------------------------------
@pytest.fixture
def pure_u1():
    """
    U(1) без материи: ветвь Кулона ℂ × ℂ^×, не конус
    """
    return GaugeTheory(torus_rank=1, weights=())


@pytest.fixture
def u1_charge():
    """
    U(1) с одним гипермультиплетом заряда N
    """
    def _make(n: int) -> GaugeTheory:
        return GaugeTheory(torus_rank=1, weights=((n,),))
    return _make


@pytest.fixture
def u1_one_flavor(u1_charge):
    return u1_charge(1)


@pytest.fixture
def gl2_with_flavors():
    """
    GL(2) с k фундаментальными: k копий весов (1,0) и (0,1)
    """
    def _make(k: int) -> GaugeTheory:
        weights = tuple(sorted([(1, 0)] * k + [(0, 1)] * k))
        return GaugeTheory(gl_factors=(2,), torus_rank=0, weights=weights)
    return _make


@pytest.fixture
def algebra():
    """
    Абелева алгебра по рангу и весам
    """
    def _make(rank: int, *weights) -> AbelianAlgebra:
        return AbelianAlgebra(rank=rank, weights=tuple(tuple(w) for w in weights))
    return _make


# ----------------------------------------------------------------------
# Последовательности торов
# ----------------------------------------------------------------------
@pytest.fixture
def diagonal_sequence():
    """
    Диагональный ℂ^× ⊂ (ℂ^×)²
    """
    return TorusSequence(inclusion_matrix=((1,), (1,)), projection_matrix=((1, -1),))


@pytest.fixture
def identity_sequence():
    """
    T = T̃ = (ℂ^×)^d, T_F тривиален
    """
    def _make(d: int) -> TorusSequence:
        rows = tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))
        return TorusSequence(inclusion_matrix=rows, projection_matrix=())
    return _make


# ----------------------------------------------------------------------
# Файлы
# ----------------------------------------------------------------------
@pytest.fixture
def write_file(tmp_path):
    """
    Записать текст во временный файл и вернуть путь строкой
    """
    def _write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return _write
