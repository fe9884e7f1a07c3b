"""
有理数係数の密行列と、テンソル脚（leg）の管理。

他のモジュールの計算はすべてここを通る。約束事は一つだけ:

* 行 = 値域(cod), 列 = 定義域(dom)。多脚のインデックスは row-major で平坦化。
* kron(f, g) は f 側が major:
  kron(f, g)[(i_f, i_g), (j_f, j_g)] = f[i_f, j_f] * g[i_g, j_g]
  例) f: 2->2, g: 3->3 のとき (i_f, i_g) = (1, 2) は行 1*3 + 2 = 5。
* 次元 1 の脚は「単位脚」(= 体 Q)。脚リストの比較では単位脚を無視する。
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import MalformedRational, ShapeMismatch, Singular, ZeroDenominator


ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"(-?\d+)(?:/(\d+))?", re.ASCII)
_to_fraction = np.frompyfunc(Fraction, 1, 1)


def rat_parse(text: str) -> Fraction:
    m = _RATIONAL_RE.fullmatch(text) if isinstance(text, str) else None
    if m is None:
        raise MalformedRational(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ZeroDenominator(f"zero denominator: {text!r}")
    return Fraction(num, den)


def rat_format(q: Fraction | int) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def strip_units(factors: Iterable[int]) -> tuple[int, ...]:
    return tuple(d for d in factors if d != 1)


def _unravel(index: int, factors: Sequence[int]) -> tuple[int, ...]:
    out: list[int] = []
    for d in reversed(factors):
        index, r = divmod(index, d)
        out.append(r)
    return tuple(reversed(out))


@dataclass(frozen=True)
class Mismatch:
    """行列の等式が崩れた位置（脚ごとのインデックス）と両辺の値。"""

    row: tuple[int, ...]
    col: tuple[int, ...]
    lhs: Fraction
    rhs: Fraction

    def as_dict(self) -> dict:
        return {
            "row": list(self.row),
            "col": list(self.col),
            "lhs": rat_format(self.lhs),
            "rhs": rat_format(self.rhs),
        }

    def describe(self) -> str:
        return (
            f"row {self.row} col {self.col}: "
            f"{rat_format(self.lhs)} != {rat_format(self.rhs)}"
        )


@dataclass(frozen=True, eq=False)
class LinearMap:
    entries: np.ndarray
    dom_factors: tuple[int, ...]
    cod_factors: tuple[int, ...]

    def __post_init__(self) -> None:
        arr = np.asarray(self.entries, dtype=object)
        if arr.ndim != 2:
            raise ShapeMismatch(f"entries must be a 2D grid, got ndim={arr.ndim}")
        dom = tuple(int(d) for d in self.dom_factors)
        cod = tuple(int(d) for d in self.cod_factors)
        if math.prod(dom) != arr.shape[1] or math.prod(cod) != arr.shape[0]:
            raise ShapeMismatch(
                f"legs {cod}<-{dom} do not fit a {arr.shape[0]}x{arr.shape[1]} grid"
            )
        arr = _to_fraction(arr).astype(object) if arr.size else arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)
        object.__setattr__(self, "dom_factors", dom)
        object.__setattr__(self, "cod_factors", cod)

    @classmethod
    def _wrap(cls, arr: np.ndarray, dom: tuple[int, ...], cod: tuple[int, ...]) -> LinearMap:
        # 成分がすでに Fraction の配列（演算結果）は変換せずに包む
        if math.prod(dom) != arr.shape[1] or math.prod(cod) != arr.shape[0]:
            raise ShapeMismatch(
                f"legs {cod}<-{dom} do not fit a {arr.shape[0]}x{arr.shape[1]} grid"
            )
        arr.flags.writeable = False
        out = object.__new__(cls)
        object.__setattr__(out, "entries", arr)
        object.__setattr__(out, "dom_factors", tuple(int(d) for d in dom))
        object.__setattr__(out, "cod_factors", tuple(int(d) for d in cod))
        return out

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        if self.entries.shape != other.entries.shape:
            return False
        if strip_units(self.dom_factors) != strip_units(other.dom_factors):
            return False
        if strip_units(self.cod_factors) != strip_units(other.cod_factors):
            return False
        return bool((self.entries == other.entries).all())

    __hash__ = None  # type: ignore[assignment]

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        return self.entries[key]

    def __add__(self, other: LinearMap) -> LinearMap:
        _require_same_shape(self, other)
        return LinearMap._wrap(self.entries + other.entries, self.dom_factors, self.cod_factors)

    def __sub__(self, other: LinearMap) -> LinearMap:
        _require_same_shape(self, other)
        return LinearMap._wrap(self.entries - other.entries, self.dom_factors, self.cod_factors)

    def scale(self, q: Fraction | int) -> LinearMap:
        return LinearMap._wrap(self.entries * Fraction(q), self.dom_factors, self.cod_factors)

    def with_legs(self, dom: Sequence[int], cod: Sequence[int]) -> LinearMap:
        # 行列はそのまま、脚の分け方だけを付け替える
        return LinearMap._wrap(self.entries, tuple(dom), tuple(cod))

    def with_entry(self, row: int, col: int, value: Fraction | int) -> LinearMap:
        arr = self.entries.copy()
        arr[row, col] = Fraction(value)
        return LinearMap._wrap(arr, self.dom_factors, self.cod_factors)

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(self.entries[:, j])

    def row(self, i: int) -> tuple[Fraction, ...]:
        return tuple(self.entries[i, :])

    def to_rows(self) -> list[list[str]]:
        return [[rat_format(x) for x in r] for r in self.entries]

    def __repr__(self) -> str:
        return f"LinearMap({list(self.cod_factors)}<-{list(self.dom_factors)}, {self.to_rows()})"


def _require_same_shape(a: LinearMap, b: LinearMap) -> None:
    if a.entries.shape != b.entries.shape:
        raise ShapeMismatch(f"shape {a.entries.shape} vs {b.entries.shape}")


def _full(rows: int, cols: int, value: Fraction = ZERO) -> np.ndarray:
    return np.full((rows, cols), value, dtype=object)


def from_rows(rows: Sequence[Sequence[Fraction | int | str]], dom: Sequence[int] | None = None,
              cod: Sequence[int] | None = None) -> LinearMap:
    n_rows = len(rows)
    n_cols = len(rows[0]) if n_rows else (math.prod(dom) if dom is not None else 0)
    arr = _full(n_rows, n_cols)
    for i, r in enumerate(rows):
        if len(r) != n_cols:
            raise ShapeMismatch(f"ragged row {i}: {len(r)} != {n_cols}")
        for j, x in enumerate(r):
            arr[i, j] = rat_parse(x) if isinstance(x, str) else Fraction(x)
    return LinearMap(
        arr,
        tuple(dom) if dom is not None else (n_cols,),
        tuple(cod) if cod is not None else (n_rows,),
    )


def column_vector(values: Sequence[Fraction | int], cod: Sequence[int] | None = None) -> LinearMap:
    return from_rows([[v] for v in values], dom=(1,), cod=cod if cod is not None else (len(values),))


def row_vector(values: Sequence[Fraction | int], dom: Sequence[int] | None = None) -> LinearMap:
    return from_rows([list(values)], dom=dom if dom is not None else (len(values),), cod=(1,))


def zeros(dom: Sequence[int], cod: Sequence[int]) -> LinearMap:
    return LinearMap._wrap(_full(math.prod(cod), math.prod(dom)), tuple(dom), tuple(cod))


def identity(factors: Sequence[int] | int) -> LinearMap:
    if isinstance(factors, int):
        factors = (factors,)
    n = math.prod(factors)
    arr = _full(n, n)
    for i in range(n):
        arr[i, i] = ONE
    return LinearMap._wrap(arr, tuple(factors), tuple(factors))


def _matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # 0 の多い行列ばかりなので、両側とも非零成分だけを走査する
    out = _full(a.shape[0], b.shape[1])
    if not a.size or not b.size:
        return out
    b_rows = [[(int(j), b[k, j]) for j in np.flatnonzero(b[k])] for k in range(b.shape[0])]
    for i, k in zip(*np.nonzero(a)):
        x = a[i, k]
        row = out[i]
        for j, y in b_rows[k]:
            row[j] = row[j] + x * y
    return out


def compose(g: LinearMap, f: LinearMap) -> LinearMap:
    """g∘f。内側の脚が（単位脚を除いて）一致していること。"""
    if strip_units(f.cod_factors) != strip_units(g.dom_factors) or f.rows != g.cols:
        raise ShapeMismatch(
            f"cannot compose: f lands in {list(f.cod_factors)}, g expects {list(g.dom_factors)}"
        )
    return LinearMap._wrap(_matmul(g.entries, f.entries), f.dom_factors, g.cod_factors)


def compose_all(*maps: LinearMap) -> LinearMap:
    """compose_all(h, g, f) = h∘g∘f（右端が最初に作用する）。"""
    return reduce(compose, maps)


def kron(f: LinearMap, g: LinearMap) -> LinearMap:
    r1, c1 = f.entries.shape
    r2, c2 = g.entries.shape
    arr = _full(r1 * r2, c1 * c2)
    if f.entries.size and g.entries.size:
        gi, gj = np.nonzero(g.entries)
        gv = g.entries[gi, gj]
        for i, j in zip(*np.nonzero(f.entries)):
            arr[i * r2 + gi, j * c2 + gj] = gv * f.entries[i, j]
    return LinearMap._wrap(arr, f.dom_factors + g.dom_factors, f.cod_factors + g.cod_factors)


def tensor(*maps: LinearMap) -> LinearMap:
    return reduce(kron, maps)


def inverse(f: LinearMap) -> LinearMap:
    if f.rows != f.cols:
        raise ShapeMismatch(f"inverse needs a square map, got {f.rows}x{f.cols}")
    n = f.rows
    x = np.array(f.entries, dtype=object)
    y = identity(n).entries.copy()

    # 前進消去: 対角を 1、下三角を 0 に
    for i in range(n):
        pivot = next((j for j in range(i, n) if x[j, i] != ZERO), None)
        if pivot is None:
            raise Singular("matrix is not invertible")
        if pivot != i:
            x[[i, pivot]] = x[[pivot, i]]
            y[[i, pivot]] = y[[pivot, i]]
        p = x[i, i]
        x[i] = x[i] / p
        y[i] = y[i] / p
        for j in range(i + 1, n):
            if x[j, i] != ZERO:
                c = x[j, i]
                x[j] = x[j] - c * x[i]
                y[j] = y[j] - c * y[i]

    # 後退消去
    for j in range(n - 2, -1, -1):
        for i in range(j + 1, n):
            if x[j, i] != ZERO:
                c = x[j, i]
                x[j] = x[j] - c * x[i]
                y[j] = y[j] - c * y[i]

    return LinearMap._wrap(y, f.cod_factors, f.dom_factors)


def _pivots(arr: np.ndarray) -> tuple[int, ...]:
    x = np.array(arr, dtype=object)
    n_rows, n_cols = x.shape
    out: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if x[i, c] != ZERO), None)
        if p is None:
            continue
        if p != r:
            x[[r, p]] = x[[p, r]]
        x[r] = x[r] / x[r, c]
        for i in range(r + 1, n_rows):
            if x[i, c] != ZERO:
                x[i] = x[i] - x[i, c] * x[r]
        out.append(c)
        r += 1
    return tuple(out)


def pivot_columns(f: LinearMap) -> tuple[int, ...]:
    """線形独立な列の添字（左から貪欲に選ぶ）。"""
    return _pivots(f.entries)


def pivot_rows(f: LinearMap) -> tuple[int, ...]:
    return _pivots(f.entries.T)


def swap_map(n: int) -> LinearMap:
    if n < 1:
        raise ShapeMismatch(f"swap needs n >= 1, got {n}")
    arr = _full(n * n, n * n)
    for i in range(n):
        for j in range(n):
            # e_i ⊗ e_j -> e_j ⊗ e_i
            arr[j * n + i, i * n + j] = ONE
    return LinearMap._wrap(arr, (n, n), (n, n))


def diff(lhs: LinearMap, rhs: LinearMap, limit: int = 8) -> tuple[Mismatch, ...]:
    """両辺の差分を（最大 limit 件）返す。空なら等しい。"""
    if lhs.entries.shape != rhs.entries.shape:
        raise ShapeMismatch(f"cannot compare {lhs.entries.shape} with {rhs.entries.shape}")
    if strip_units(lhs.dom_factors) != strip_units(rhs.dom_factors) or \
            strip_units(lhs.cod_factors) != strip_units(rhs.cod_factors):
        raise ShapeMismatch(
            f"cannot compare legs {list(lhs.cod_factors)}<-{list(lhs.dom_factors)} "
            f"with {list(rhs.cod_factors)}<-{list(rhs.dom_factors)}"
        )
    if not lhs.entries.size:
        return ()
    dom = strip_units(lhs.dom_factors)
    cod = strip_units(lhs.cod_factors)
    out: list[Mismatch] = []
    rows, cols = np.nonzero(lhs.entries != rhs.entries)
    for i, j in zip(rows, cols):
        out.append(Mismatch(_unravel(int(i), cod), _unravel(int(j), dom),
                            lhs.entries[i, j], rhs.entries[i, j]))
        if len(out) >= limit:
            break
    return tuple(out)
