from typing import Optional, Tuple

from pydantic import BaseModel, field_validator

COMMANDS = (
    "hilbert",
    "present",
    "poisson",
    "quantize-check",
    "check-duality",
    "from-quiver",
    "verify",
    "lie",
    "localize",
)


class RunConfig(BaseModel):
    """Разобранные аргументы одной команды CLI"""
    command: str
    input_path: Optional[str] = None
    order: Optional[int] = None
    refined: bool = False
    shift: Optional[Tuple[int, ...]] = None
    seed: Optional[int] = None
    trials: Optional[int] = None
    as_json: bool = False
    exprs: Tuple[str, ...] = ()
    lattice_point: Optional[Tuple[int, ...]] = None
    output_path: Optional[str] = None

    class Config:
        frozen = True

    @field_validator("command")
    @classmethod
    def _known_command(cls, value: str) -> str:
        if value not in COMMANDS:
            raise ValueError(f"unknown command '{value}'")
        return value

    @field_validator("order", "trials")
    @classmethod
    def _nonnegative(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 0:
            raise ValueError("must be nonnegative")
        return value
