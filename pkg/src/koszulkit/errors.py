"""Exception hierarchy shared by every module."""

from __future__ import annotations


class KoszulError(Exception):
    """Base class for all library errors."""


class SpecError(KoszulError):
    """Input that does not describe a valid object (CLI exit code 2)."""


class NumericError(KoszulError):
    """Evaluation failed at a point (CLI exit code 3)."""


class EmptyExpression(SpecError):
    pass


class UnknownSymbol(SpecError):
    def __init__(self, name: str):
        super().__init__(f"unknown symbol {name!r}")
        self.name = name


class SyntaxError(SpecError):  # noqa: A001  shadows the builtin on purpose
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ChartMismatch(SpecError):
    pass


class InvalidStructure(SpecError):
    pass


class SpecMismatch(SpecError):
    pass


class UnknownFactor(SpecError):
    pass


class CaseMismatch(SpecError):
    pass


class UnknownFixture(SpecError):
    pass


class DomainError(NumericError):
    pass


class SingularMetric(NumericError):
    pass


class RankDeficiencyAmbiguous(NumericError):
    pass
