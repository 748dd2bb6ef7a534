"""
Парсер текстовых файлов теорий, колчанов и последовательностей торов.

Строчный формат, '#' - комментарий, пустые строки пропускаются.
Любая неизвестная директива - ошибка с номером строки.
"""
import logging
import re
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from src.exceptions import TheoryParseError, TheoryValidationError
from src.models.theory import GaugeTheory, QuiverSpec, TorusSequence
from src.services.theory_service import TheoryService

logger = logging.getLogger(__name__)

VERTEX_OPTION = re.compile(r'^(V|W)=(-?\d+)$')
VERTEX_NAME = re.compile(r'^[A-Za-z0-9_.\-]+$')


def _meaningful_lines(text: str):
    """(номер строки, токены) без комментариев и пустых строк"""
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        yield line_no, line.split()


def _parse_int(token: str, line_no: int, path: Optional[str]) -> int:
    try:
        return int(token)
    except ValueError:
        raise TheoryParseError(f"expected an integer, got '{token}'", line_no, path)


class TheoryFileParser:
    """Разбор трех форматов входных файлов"""

    def __init__(self, theory_service: Optional[TheoryService] = None):
        self.theory_service = theory_service or TheoryService()

    @staticmethod
    def _read(path) -> str:
        return Path(path).read_text(encoding="utf-8")

    # ------------------------------------------------------------------
    # gl / torus / weight
    # ------------------------------------------------------------------
    def parse_theory_text(self, text: str, path: Optional[str] = None) -> GaugeTheory:
        gl_factors: List[int] = []
        torus_rank: Optional[int] = None
        weights: List[Tuple[int, Tuple[int, ...]]] = []

        for line_no, tokens in _meaningful_lines(text):
            directive, args = tokens[0], tokens[1:]
            if directive == "gl":
                if len(args) != 1:
                    raise TheoryParseError("'gl' takes exactly one rank", line_no, path)
                n = _parse_int(args[0], line_no, path)
                if n <= 0:
                    raise TheoryParseError(f"gl rank must be positive, got {n}", line_no, path)
                gl_factors.append(n)
            elif directive == "torus":
                if len(args) != 1:
                    raise TheoryParseError("'torus' takes exactly one rank", line_no, path)
                if torus_rank is not None:
                    raise TheoryParseError("'torus' given twice", line_no, path)
                torus_rank = _parse_int(args[0], line_no, path)
                if torus_rank < 0:
                    raise TheoryParseError("torus rank must be nonnegative", line_no, path)
            elif directive == "weight":
                weights.append((line_no, tuple(_parse_int(a, line_no, path) for a in args)))
            else:
                raise TheoryParseError(f"unknown directive '{directive}'", line_no, path)

        torus_rank = torus_rank or 0
        rank = sum(gl_factors) + torus_rank
        for line_no, weight in weights:
            if len(weight) != rank:
                raise TheoryParseError(
                    f"weight has {len(weight)} entries, expected total rank {rank}", line_no, path
                )
        theory = self.theory_service.build_theory(
            gl_factors=tuple(gl_factors),
            torus_rank=torus_rank,
            weights=tuple(w for _, w in weights),
        )
        logger.info(f"📄 Теория прочитана: gl={list(theory.gl_factors)}, torus={theory.torus_rank}, весов={len(theory.weights)}")
        return theory

    def parse_theory_file(self, path) -> GaugeTheory:
        return self.parse_theory_text(self._read(path), str(path))

    # ------------------------------------------------------------------
    # vertex / edge
    # ------------------------------------------------------------------
    def parse_quiver_text(self, text: str, path: Optional[str] = None) -> QuiverSpec:
        vertices: List[str] = []
        dim_v: Dict[str, int] = {}
        dim_w: Dict[str, int] = {}
        edges: List[Tuple[int, str, str]] = []

        for line_no, tokens in _meaningful_lines(text):
            directive, args = tokens[0], tokens[1:]
            if directive == "vertex":
                if not args:
                    raise TheoryParseError("'vertex' needs a name", line_no, path)
                name = args[0]
                if not VERTEX_NAME.match(name):
                    raise TheoryParseError(f"bad vertex name '{name}'", line_no, path)
                if name in dim_v:
                    raise TheoryParseError(f"vertex '{name}' declared twice", line_no, path)
                options = {"V": 0, "W": 0}
                for option in args[1:]:
                    match = VERTEX_OPTION.match(option)
                    if not match:
                        raise TheoryParseError(f"bad vertex option '{option}' (expected V=<int> or W=<int>)", line_no, path)
                    value = int(match.group(2))
                    if value < 0:
                        raise TheoryParseError(f"negative dimension in '{option}'", line_no, path)
                    options[match.group(1)] = value
                vertices.append(name)
                dim_v[name] = options["V"]
                dim_w[name] = options["W"]
            elif directive == "edge":
                if len(args) != 2:
                    raise TheoryParseError("'edge' takes exactly two vertex names", line_no, path)
                edges.append((line_no, args[0], args[1]))
            else:
                raise TheoryParseError(f"unknown directive '{directive}'", line_no, path)

        for line_no, out_v, in_v in edges:
            for v in (out_v, in_v):
                if v not in dim_v:
                    raise TheoryParseError(f"edge refers to undeclared vertex '{v}'", line_no, path)
        if not vertices:
            raise TheoryParseError("quiver file declares no vertices", None, path)

        quiver = QuiverSpec(
            vertices=tuple(vertices),
            edges=tuple((o, i) for _, o, i in edges),
            dim_v=dim_v,
            dim_w=dim_w,
        )
        try:
            return self.theory_service.validate_quiver(quiver)
        except TheoryValidationError as e:
            raise TheoryParseError(str(e), None, path) from e

    def parse_quiver_file(self, path) -> QuiverSpec:
        return self.parse_quiver_text(self._read(path), str(path))

    # ------------------------------------------------------------------
    # include / project
    # ------------------------------------------------------------------
    def parse_sequence_text(self, text: str, path: Optional[str] = None) -> TorusSequence:
        include_rows: List[Tuple[int, Tuple[int, ...]]] = []
        project_rows: List[Tuple[int, Tuple[int, ...]]] = []

        for line_no, tokens in _meaningful_lines(text):
            directive, args = tokens[0], tokens[1:]
            row = tuple(_parse_int(a, line_no, path) for a in args)
            if directive == "include":
                include_rows.append((line_no, row))
            elif directive == "project":
                project_rows.append((line_no, row))
            else:
                raise TheoryParseError(f"unknown directive '{directive}'", line_no, path)

        if not include_rows:
            raise TheoryParseError("sequence file has no 'include' rows", None, path)
        width = len(include_rows[0][1])
        for line_no, row in include_rows:
            if len(row) != width:
                raise TheoryParseError(f"inclusion row has {len(row)} entries, expected {width}", line_no, path)
        d = len(include_rows)
        for line_no, row in project_rows:
            if len(row) != d:
                raise TheoryParseError(f"projection row has {len(row)} entries, expected {d}", line_no, path)

        return TorusSequence(
            inclusion_matrix=tuple(r for _, r in include_rows),
            projection_matrix=tuple(r for _, r in project_rows),
        )

    def parse_sequence_file(self, path) -> TorusSequence:
        return self.parse_sequence_text(self._read(path), str(path))
