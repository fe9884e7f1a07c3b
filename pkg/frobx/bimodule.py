"""
EM(Σ(Vect)) の机上モデル。

* 0-cell: Algebra
* 1-cell (V, φ): A1 -> A2,  φ: V⊗A2 -> A1⊗V （左自由 bimodule A1⊗V）
* 2-cell ρ: (V, φ) => (V', ψ),  ρ: V -> A1⊗V'

compose_one_cells(f, g) は図式の合成 "f∘g"（f の右に g を並べる）で、
台は V⊗V'、φ = (φ⊗V')∘(V⊗φ')。脚の平坦化は exact_core の規約のみなので、
結合子はすべて行列レベルで恒等写像になる。
"""

from __future__ import annotations
from dataclasses import dataclass, field
from math import prod

from .algebra import Algebra, mult_map, unit_map
from .errors import AxiomFailure, ObjectMismatch, ShapeMismatch
from .exact_core import LinearMap, compose, compose_all, identity, kron, strip_units
from .models import Check, CheckReport, equality_check, report_of

from logging import getLogger

logger = getLogger(__name__)


@dataclass(frozen=True)
class OneCell:
    dom: Algebra
    cod: Algebra
    carrier: tuple[int, ...]
    phi: LinearMap
    label: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        carrier = tuple(int(d) for d in self.carrier) or (1,)
        object.__setattr__(self, "carrier", carrier)
        want_dom = strip_units(carrier + (self.cod.dim,))
        want_cod = strip_units((self.dom.dim,) + carrier)
        if strip_units(self.phi.dom_factors) != want_dom or strip_units(self.phi.cod_factors) != want_cod:
            raise ShapeMismatch(
                f"phi of {self.label or 'cell'} must be {list(want_cod)}<-{list(want_dom)}, "
                f"got {list(self.phi.cod_factors)}<-{list(self.phi.dom_factors)}"
            )
        # 脚は常に V⊗A2 -> A1⊗V の形にそろえておく
        object.__setattr__(
            self, "phi", self.phi.with_legs(carrier + (self.cod.dim,), (self.dom.dim,) + carrier)
        )

    @property
    def carrier_dim(self) -> int:
        return prod(self.carrier)

    def __repr__(self) -> str:
        name = self.label or "OneCell"
        return f"{name}({self.dom.name} -> {self.cod.name}, V={list(self.carrier)})"


def same_cell(f: OneCell, g: OneCell) -> bool:
    return (
        f.dom == g.dom
        and f.cod == g.cod
        and strip_units(f.carrier) == strip_units(g.carrier)
        and f.phi == g.phi
    )


def _require_same(f: OneCell, g: OneCell, what: str) -> None:
    if not same_cell(f, g):
        raise ObjectMismatch(f"{what}: {f!r} and {g!r} are different 1-cells")


def check_one_cell(cell: OneCell, limit: int = 8) -> CheckReport:
    a1, a2 = cell.dom, cell.cod
    v = identity(cell.carrier)
    phi = cell.phi
    m1, m2 = mult_map(a1), mult_map(a2)
    id1, id2 = identity(a1.dim), identity(a2.dim)

    mult = equality_check(
        "multiplication-square",
        compose_all(kron(m1, v), kron(id1, phi), kron(phi, id2)),
        compose(phi, kron(v, m2)),
        limit,
    )
    unit = equality_check(
        "unit-triangle",
        compose(phi, kron(v, unit_map(a2))),
        kron(unit_map(a1), v),
        limit,
    )
    return report_of(mult, unit)


def identity_one_cell(alg: Algebra) -> OneCell:
    n = alg.dim
    return OneCell(alg, alg, (1,), identity(n).with_legs((1, n), (n, 1)), label=f"1_{alg.name}")


def compose_one_cells(f: OneCell, g: OneCell) -> OneCell:
    if f.cod != g.dom:
        raise ObjectMismatch(f"cannot compose {f!r} with {g!r}: {f.cod.name} != {g.dom.name}")
    vf = identity(f.carrier)
    vg = identity(g.carrier)
    phi = compose(kron(f.phi, vg), kron(vf, g.phi))
    label = f"{f.label}{g.label}" if f.label and g.label else ""
    return OneCell(f.dom, g.cod, f.carrier + g.carrier, phi, label=label)


def compose_path(*cells: OneCell) -> OneCell:
    """compose_path(f, g, h) = f∘g∘h。"""
    out = cells[0]
    for c in cells[1:]:
        out = compose_one_cells(out, c)
    return out


@dataclass(frozen=True)
class TwoCell:
    src: OneCell
    tgt: OneCell
    rho: LinearMap

    def __post_init__(self) -> None:
        if self.src.dom != self.tgt.dom or self.src.cod != self.tgt.cod:
            raise ObjectMismatch(f"2-cell between {self.src!r} and {self.tgt!r}: boundaries differ")
        dom = self.src.carrier
        cod = (self.src.dom.dim,) + self.tgt.carrier
        if strip_units(self.rho.dom_factors) != strip_units(dom) or \
                strip_units(self.rho.cod_factors) != strip_units(cod):
            raise ShapeMismatch(
                f"rho must be {list(cod)}<-{list(dom)}, "
                f"got {list(self.rho.cod_factors)}<-{list(self.rho.dom_factors)}"
            )
        object.__setattr__(self, "rho", self.rho.with_legs(dom, cod))


def check_two_cell(t: TwoCell, limit: int = 8) -> CheckReport:
    a1, a2 = t.src.dom, t.src.cod
    m1 = mult_map(a1)
    id1, id2 = identity(a1.dim), identity(a2.dim)
    vt = identity(t.tgt.carrier)
    lhs = compose_all(kron(m1, vt), kron(id1, t.tgt.phi), kron(t.rho, id2))
    rhs = compose_all(kron(m1, vt), kron(id1, t.rho), t.src.phi)
    return report_of(equality_check("coherence-square", lhs, rhs, limit))


def frame(src: OneCell, tgt: OneCell, rho: LinearMap) -> TwoCell:
    """行列 rho を src => tgt の 2-cell として包み直す（脚は付け替え）。"""
    if rho.cols != src.carrier_dim or rho.rows != src.dom.dim * tgt.carrier_dim:
        raise ShapeMismatch(
            f"a {rho.rows}x{rho.cols} map cannot frame {src!r} => {tgt!r}"
        )
    return TwoCell(src, tgt, rho.with_legs(src.carrier, (src.dom.dim,) + tgt.carrier))


def unit_two_cell(src: OneCell, tgt: OneCell) -> TwoCell:
    """ρ = ι1⊗V。src と tgt が単位脚を除いて同じ 1-cell のときの恒等 2-cell。"""
    _require_same(src, tgt, "unit 2-cell")
    rho = kron(unit_map(src.dom), identity(src.carrier))
    return frame(src, tgt, rho)


def identity_two_cell(cell: OneCell) -> TwoCell:
    return unit_two_cell(cell, cell)


def vertical_compose(s: TwoCell, t: TwoCell) -> TwoCell:
    """s: φ => ψ のあとに t: ψ => χ。ρ = (m1⊗V'')∘(A1⊗ρ_t)∘ρ_s。"""
    _require_same(s.tgt, t.src, "vertical composite")
    a1 = s.src.dom
    rho = compose_all(
        kron(mult_map(a1), identity(t.tgt.carrier)),
        kron(identity(a1.dim), t.rho),
        s.rho,
    )
    return frame(s.src, t.tgt, rho)


def vertical_chain(*cells: TwoCell) -> TwoCell:
    out = cells[0]
    for c in cells[1:]:
        out = vertical_compose(out, c)
    return out


def whisker_left(f: OneCell, t: TwoCell) -> TwoCell:
    """f t : f∘src => f∘tgt。ρ = (φ_f⊗V')∘(W⊗ρ_t)。"""
    if f.cod != t.src.dom:
        raise ObjectMismatch(f"cannot whisker {f!r} on the left of a 2-cell from {t.src.dom.name}")
    rho = compose(kron(f.phi, identity(t.tgt.carrier)), kron(identity(f.carrier), t.rho))
    return frame(compose_one_cells(f, t.src), compose_one_cells(f, t.tgt), rho)


def whisker_right(t: TwoCell, g: OneCell) -> TwoCell:
    """t g : src∘g => tgt∘g。ρ = ρ_t⊗W。"""
    if t.src.cod != g.dom:
        raise ObjectMismatch(f"cannot whisker {g!r} on the right of a 2-cell into {t.src.cod.name}")
    rho = kron(t.rho, identity(g.carrier))
    return frame(compose_one_cells(t.src, g), compose_one_cells(t.tgt, g), rho)


def horizontal_compose(s: TwoCell, t: TwoCell) -> TwoCell:
    """s * t = (s g') ∘ (f t)。interchange により (f t')∘(s g) とも一致する。"""
    return vertical_compose(whisker_left(s.src, t), whisker_right(s, t.tgt))


def two_cells_equal(s: TwoCell, t: TwoCell) -> bool:
    return same_cell(s.src, t.src) and same_cell(s.tgt, t.tgt) and s.rho == t.rho


def two_cell_check(name: str, s: TwoCell, t: TwoCell, limit: int = 8) -> Check:
    if not (same_cell(s.src, t.src) and same_cell(s.tgt, t.tgt)):
        raise ObjectMismatch(f"{name}: the two 2-cells have different boundaries")
    return equality_check(name, s.rho, t.rho, limit)


@dataclass(frozen=True)
class Bimodule:
    left_algebra: Algebra
    right_algebra: Algebra
    carrier: tuple[int, ...]
    left_action: LinearMap
    right_action: LinearMap
    report: CheckReport


def realize_bimodule(cell: OneCell, limit: int = 8) -> Bimodule:
    """A1⊗V に左から m1⊗V、右から (m1⊗V)∘(A1⊗φ) で作用させる。"""
    a1, a2 = cell.dom, cell.cod
    v = identity(cell.carrier)
    m1, m2 = mult_map(a1), mult_map(a2)
    id1, id2 = identity(a1.dim), identity(a2.dim)
    space = (a1.dim,) + cell.carrier
    ids = identity(space)

    left = kron(m1, v)
    right = compose(kron(m1, v), kron(id1, cell.phi))

    checks = [
        equality_check("left-associativity", compose(left, kron(m1, ids)), compose(left, kron(id1, left)), limit),
        equality_check("left-unit", compose(left, kron(unit_map(a1), ids)), ids, limit),
        equality_check("right-associativity", compose(right, kron(right, id2)), compose(right, kron(ids, m2)), limit),
        equality_check("right-unit", compose(right, kron(ids, unit_map(a2))), ids, limit),
        equality_check(
            "actions-commute",
            compose(right, kron(left, id2)),
            compose(left, kron(id1, right)),
            limit,
        ),
    ]
    report = CheckReport(tuple(checks))
    if not report.passed:
        raise AxiomFailure(f"{cell!r} does not realize a bimodule: {[c.name for c in report.failures]}")
    return Bimodule(a1, a2, space, left, right, report)
