"""
多元環ファイル（JSON）の読み込み。

    {"name": str, "dim": n, "basis": [str×n], "mul": [[[rat×n]×n]×n],
     "unit": [rat×n], "counit": [rat×n]}

rat は "-?\\d+(/\\d+)?" 形式の文字列。mul[i][j] は e_i·e_j の座標。
"""

from __future__ import annotations
import json
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from .algebra import Algebra, FrobeniusStructure, build_frobenius
from .errors import AlgebraFileError, FrobxError
from .exact_core import rat_format, rat_parse

from logging import getLogger

logger = getLogger(__name__)


def _check_rational(v: str) -> str:
    # 文字列のまま保持し、構文だけ確認する
    try:
        rat_parse(v)
    except FrobxError as e:
        raise ValueError(str(e)) from e
    return v


class AlgebraFile(BaseModel):
    name: str = Field(..., min_length=1)
    dim: int = Field(..., ge=0)
    basis: List[str]
    mul: List[List[List[str]]]
    unit: List[str]
    counit: Optional[List[str]] = None

    @field_validator("unit", "counit")
    @classmethod
    def _rationals(cls, v: Optional[List[str]]) -> Optional[List[str]]:
        if v is None:
            return v
        return [_check_rational(x) for x in v]

    @field_validator("mul")
    @classmethod
    def _grid(cls, v: List[List[List[str]]]) -> List[List[List[str]]]:
        return [[[_check_rational(x) for x in cell] for cell in row] for row in v]

    @model_validator(mode="after")
    def _dims(self) -> AlgebraFile:
        n = self.dim
        if len(self.basis) != n:
            raise ValueError(f"basis has {len(self.basis)} names, dim is {n}")
        if len(self.mul) != n or any(len(row) != n for row in self.mul) or \
                any(len(cell) != n for row in self.mul for cell in row):
            raise ValueError(f"mul must be a {n}x{n}x{n} grid")
        if len(self.unit) != n:
            raise ValueError(f"unit has {len(self.unit)} coordinates, dim is {n}")
        if self.counit is not None and len(self.counit) != n:
            raise ValueError(f"counit has {len(self.counit)} coordinates, dim is {n}")
        return self

    def to_algebra(self) -> Algebra:
        return Algebra(name=self.name, basis=tuple(self.basis), mul=self.mul, unit=self.unit)

    def counit_vector(self) -> tuple[Fraction, ...]:
        if self.counit is None:
            raise AlgebraFileError(f"{self.name}: file has no counit")
        return tuple(rat_parse(x) for x in self.counit)

    @classmethod
    def from_frobenius(cls, fs: FrobeniusStructure) -> AlgebraFile:
        alg = fs.algebra
        return cls(
            name=alg.name,
            dim=alg.dim,
            basis=list(alg.basis),
            mul=[[[rat_format(x) for x in cell] for cell in row] for row in alg.mul],
            unit=[rat_format(x) for x in alg.unit],
            counit=[rat_format(x) for x in fs.counit_vec],
        )


def parse_algebra_file(text: str, source: str = "<string>") -> AlgebraFile:
    try:
        return AlgebraFile.model_validate_json(text)
    except ValidationError as e:
        raise AlgebraFileError(f"{source}: {e.error_count()} problem(s): {e.errors()[0]['msg']}") from e


def load_algebra_file(path: str | Path) -> AlgebraFile:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise AlgebraFileError(f"cannot read {p}: {e}") from e
    afile = parse_algebra_file(text, str(p))
    logger.info(f"loaded {afile.name} (dim {afile.dim}) from {p}")
    return afile


def load_frobenius(path: str | Path) -> FrobeniusStructure:
    afile = load_algebra_file(path)
    return build_frobenius(afile.to_algebra(), afile.counit_vector())


def dump_algebra_file(fs: FrobeniusStructure) -> str:
    return json.dumps(AlgebraFile.from_frobenius(fs).model_dump(), ensure_ascii=False, indent=2)
