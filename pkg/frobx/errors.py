from __future__ import annotations


class FrobxError(Exception):
    """frobx が投げる例外の基底クラス。"""


class MalformedRational(FrobxError, ValueError):
    pass


class ZeroDenominator(FrobxError, ZeroDivisionError):
    pass


class ShapeMismatch(FrobxError, ValueError):
    pass


class Singular(FrobxError, ArithmeticError):
    pass


class DimensionMismatch(FrobxError, ValueError):
    pass


class DegenerateForm(FrobxError, ValueError):
    pass


class AxiomFailure(FrobxError, RuntimeError):
    """内部で保証しているはずの恒等式が崩れた（= 入力かコードの矛盾）。"""


class ObjectMismatch(FrobxError, ValueError):
    pass


class NotCommutative(FrobxError, ValueError):
    pass


class WordSyntaxError(FrobxError, ValueError):
    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


class StrandMismatch(FrobxError, ValueError):
    def __init__(self, slice_index: int, expected: int, actual: int) -> None:
        super().__init__(
            f"strand mismatch at slice {slice_index}: "
            f"{expected} strands arrive, generators need {actual}"
        )
        self.slice_index = slice_index
        self.expected = expected
        self.actual = actual


class AlgebraFileError(FrobxError, ValueError):
    pass
