"""
EM(Σ(Vect)) の中の随伴・mate・Frobenius ambijunction。

随伴 L ⊣ R は L: X -> Y, R: Y -> X で
  unit   i: 1_Y => R∘L
  counit e: L∘R => 1_X
（∘ は bimodule.compose_one_cells の図式順）。zig-zag は
  (R e)·(i R) = 1_R,  (e L)·(L i) = 1_L
"""

from __future__ import annotations
from dataclasses import dataclass, field
from math import prod
from typing import Optional

from .algebra import (
    Algebra,
    FrobeniusStructure,
    build_frobenius,
    counit_map,
    mult_map,
    unit_map,
)
from .bimodule import (
    OneCell,
    TwoCell,
    check_one_cell,
    check_two_cell,
    compose_one_cells,
    frame,
    identity_one_cell,
    identity_two_cell,
    same_cell,
    two_cell_check,
    unit_two_cell,
    vertical_compose,
    whisker_left,
    whisker_right,
)
from .catalog import ground
from .errors import AxiomFailure, ObjectMismatch, ShapeMismatch
from .exact_core import LinearMap, compose_all, identity, kron, tensor
from .models import Check, CheckReport, equality_check, report_of

from logging import getLogger

logger = getLogger(__name__)


@dataclass(frozen=True)
class Adjunction:
    left: OneCell
    right: OneCell
    unit: TwoCell
    counit: TwoCell
    verified: bool = False
    report: CheckReport = field(default_factory=CheckReport, compare=False)

    @property
    def lower(self) -> Algebra:
        """L の始点 X（counit の行き先）。"""
        return self.left.dom

    @property
    def upper(self) -> Algebra:
        """L の終点 Y（unit の始点）。"""
        return self.left.cod


@dataclass(frozen=True)
class Ambijunction:
    fwd: Adjunction
    bwd: Adjunction

    @property
    def induction(self) -> OneCell:
        return self.fwd.left

    @property
    def restriction(self) -> OneCell:
        return self.fwd.right


@dataclass(frozen=True)
class Monad:
    endo: OneCell
    mu: TwoCell
    eta: TwoCell
    report: CheckReport


@dataclass(frozen=True)
class Comonad:
    endo: OneCell
    delta: TwoCell
    counit: TwoCell
    report: CheckReport


def _zigzags(left: OneCell, right: OneCell, unit: TwoCell, counit: TwoCell, limit: int) -> tuple[Check, Check]:
    right_side = vertical_compose(whisker_right(unit, right), whisker_left(right, counit))
    left_side = vertical_compose(whisker_left(left, unit), whisker_right(counit, left))
    return (
        two_cell_check("zigzag-right", right_side, identity_two_cell(right), limit),
        two_cell_check("zigzag-left", left_side, identity_two_cell(left), limit),
    )


def _require_boundaries(left: OneCell, right: OneCell, unit: TwoCell, counit: TwoCell) -> None:
    if left.dom != right.cod or left.cod != right.dom:
        raise ObjectMismatch(f"{left!r} and {right!r} do not run in opposite directions")
    if not same_cell(unit.src, identity_one_cell(left.cod)) or \
            not same_cell(unit.tgt, compose_one_cells(right, left)):
        raise ObjectMismatch("unit must be a 2-cell 1_Y => R∘L")
    if not same_cell(counit.src, compose_one_cells(left, right)) or \
            not same_cell(counit.tgt, identity_one_cell(left.dom)):
        raise ObjectMismatch("counit must be a 2-cell L∘R => 1_X")


def check_triangles(adj: Adjunction, limit: int = 8) -> CheckReport:
    _require_boundaries(adj.left, adj.right, adj.unit, adj.counit)
    report = report_of(*_zigzags(adj.left, adj.right, adj.unit, adj.counit, limit))
    if not report.passed:
        logger.warning(f"triangle identities fail: {[c.name for c in report.failures]}")
    return report


def make_adjunction(left: OneCell, right: OneCell, unit: TwoCell, counit: TwoCell, limit: int = 8) -> Adjunction:
    """境界を合わせ直したうえで zig-zag を検査して Adjunction を作る。"""
    unit = frame(identity_one_cell(left.cod), compose_one_cells(right, left), unit.rho)
    counit = frame(compose_one_cells(left, right), identity_one_cell(left.dom), counit.rho)
    cells = check_two_cell(unit, limit).prefixed("unit-") + check_two_cell(counit, limit).prefixed("counit-")
    report = cells + check_triangles(Adjunction(left, right, unit, counit), limit)
    return Adjunction(left, right, unit, counit, verified=report.passed, report=report)


def identity_adjunction(alg: Algebra) -> Adjunction:
    one = identity_one_cell(alg)
    twice = compose_one_cells(one, one)
    return make_adjunction(one, one, unit_two_cell(one, twice), unit_two_cell(twice, one))


def compose_adjunctions(a1: Adjunction, a2: Adjunction, limit: int = 8) -> Adjunction:
    """L1 ⊣ R1 (X->Y) と L2 ⊣ R2 (Y->Z) から L1∘L2 ⊣ R2∘R1 (X->Z)。"""
    if not (a1.verified and a2.verified):
        raise ObjectMismatch("both adjunctions must be verified before composing")
    if a1.left.cod != a2.left.dom:
        raise ObjectMismatch(
            f"middle objects differ: {a1.left.cod.name} != {a2.left.dom.name}"
        )
    l1, r1, i1, e1 = a1.left, a1.right, a1.unit, a1.counit
    l2, r2, i2, e2 = a2.left, a2.right, a2.unit, a2.counit
    left = compose_one_cells(l1, l2)
    right = compose_one_cells(r2, r1)

    # ī = (R2 i1 L2)·i2,  ē = e1·(L1 e2 R1)
    unit = vertical_compose(i2, whisker_left(r2, whisker_right(i1, l2)))
    counit = vertical_compose(whisker_left(l1, whisker_right(e2, r1)), e1)
    adj = make_adjunction(left, right, unit, counit, limit)
    logger.info(f"composed adjunction over {left.dom.name} -> {left.cod.name}: verified={adj.verified}")
    return adj


@dataclass(frozen=True)
class MateSandwich:
    """
    first·(W ρ G)·last の形の縦合成を ρ について前計算したもの:
      ρ ↦ post∘(A⊗W⊗ρ⊗G)∘pre
    """

    src: OneCell
    tgt: OneCell
    pre: LinearMap
    post: LinearMap
    outer: tuple[int, ...]
    inner: tuple[int, ...]
    rho_dom: tuple[int, ...]
    rho_cod: tuple[int, ...]

    def apply(self, rho: LinearMap) -> TwoCell:
        if rho.cols != prod(self.rho_dom) or rho.rows != prod(self.rho_cod):
            raise ShapeMismatch(
                f"a {rho.rows}x{rho.cols} map does not fit {list(self.rho_cod)}<-{list(self.rho_dom)}"
            )
        rho = rho.with_legs(self.rho_dom, self.rho_cod)
        middle = kron(identity(self.outer), kron(rho, identity(self.inner)))
        return frame(self.src, self.tgt, compose_all(self.post, middle, self.pre))


def _sandwich(src: OneCell, tgt: OneCell, first: TwoCell, whisker: OneCell,
              rho_dom: tuple[int, ...], rho_tgt: tuple[int, ...], inner: tuple[int, ...],
              last: TwoCell) -> MateSandwich:
    """first·(whisker ρ inner)·last。ρ の行き先の台は rho_tgt、ρ の係数環は whisker.cod。"""
    base = src.dom
    mu = mult_map(base)
    idb = identity(base.dim)
    rest = rho_tgt + inner
    mid_tgt = whisker.carrier + rest
    # ρ_mid = (φ_w⊗V)∘(W⊗ρ⊗G) を vertical_compose の式に差し込んだ残り
    post = compose_all(
        kron(mu, identity(last.tgt.carrier)),
        kron(idb, last.rho),
        kron(mu, identity(mid_tgt)),
        kron(idb, kron(whisker.phi, identity(rest))),
    )
    return MateSandwich(
        src=src,
        tgt=tgt,
        pre=first.rho,
        post=post,
        outer=(base.dim,) + whisker.carrier,
        inner=inner,
        rho_dom=rho_dom,
        rho_cod=(whisker.cod.dim,) + rho_tgt,
    )


def _require_verified(*adjs: Adjunction) -> None:
    if not all(adj.verified for adj in adjs):
        raise ObjectMismatch("adjunctions must be verified before taking mates")


def mate_sandwich(adj: Adjunction, adj2: Adjunction, a: OneCell, b: OneCell) -> MateSandwich:
    """
    F ⊣ U (X->Y), F' ⊣ U' (X'->Y'), a: X'->X, b: Y'->Y で
    ξ: b∘U => U'∘a を ζ: F'∘b => a∘F に送る写像。

    ζ = (e' a F)·(F' ξ F)·(F' b i)
    """
    _require_verified(adj, adj2)
    f, u, i = adj.left, adj.right, adj.unit
    f2, u2, e2 = adj2.left, adj2.right, adj2.counit
    f2b = compose_one_cells(f2, b)
    af = compose_one_cells(a, f)
    return _sandwich(
        f2b, af,
        first=whisker_left(f2b, i),
        whisker=f2,
        rho_dom=compose_one_cells(b, u).carrier,
        rho_tgt=compose_one_cells(u2, a).carrier,
        inner=f.carrier,
        last=whisker_right(e2, af),
    )


def mate_inv_sandwich(adj: Adjunction, adj2: Adjunction, a: OneCell, b: OneCell) -> MateSandwich:
    """ζ: F'∘b => a∘F から ξ = (U' a e)·(U' ζ U)·(i' b U)。"""
    _require_verified(adj, adj2)
    u, e = adj.right, adj.counit
    f2, u2, i2 = adj2.left, adj2.right, adj2.unit
    bu = compose_one_cells(b, u)
    u2a = compose_one_cells(u2, a)
    return _sandwich(
        bu, u2a,
        first=whisker_right(i2, bu),
        whisker=u2,
        rho_dom=compose_one_cells(f2, b).carrier,
        rho_tgt=compose_one_cells(a, adj.left).carrier,
        inner=u.carrier,
        last=whisker_left(u2a, e),
    )


def mate(adj: Adjunction, adj2: Adjunction, a: OneCell, b: OneCell, xi: TwoCell) -> TwoCell:
    _require_verified(adj, adj2)
    if not (same_cell(xi.src, compose_one_cells(b, adj.right))
            and same_cell(xi.tgt, compose_one_cells(adj2.right, a))):
        raise ObjectMismatch("ξ must be a 2-cell b∘U => U'∘a")
    return mate_sandwich(adj, adj2, a, b).apply(xi.rho)


def mate_inv(adj: Adjunction, adj2: Adjunction, a: OneCell, b: OneCell, zeta: TwoCell) -> TwoCell:
    _require_verified(adj, adj2)
    if not (same_cell(zeta.src, compose_one_cells(adj2.left, b))
            and same_cell(zeta.tgt, compose_one_cells(a, adj.left))):
        raise ObjectMismatch("ζ must be a 2-cell F'∘b => a∘F")
    return mate_inv_sandwich(adj, adj2, a, b).apply(zeta.rho)


def induction_cell(fs: FrobeniusStructure) -> OneCell:
    """F = (Q, η): A -> Q。"""
    a = fs.algebra
    return OneCell(a, ground(), (1,), unit_map(a).with_legs((1, 1), (a.dim, 1)), label="F")


def restriction_cell(fs: FrobeniusStructure) -> OneCell:
    """U = (A, μ): Q -> A。"""
    a = fs.algebra
    return OneCell(ground(), a, (a.dim,), mult_map(a).with_legs((a.dim, a.dim), (1, a.dim)), label="U")


def build_ambijunction(fs: FrobeniusStructure, limit: int = 8) -> Ambijunction:
    a = fs.algebra
    n = a.dim
    f = induction_cell(fs)
    u = restriction_cell(fs)
    uf = compose_one_cells(u, f)
    fu = compose_one_cells(f, u)
    one_q = identity_one_cell(ground())
    one_a = identity_one_cell(a)

    # F ⊣ U: i は η、e は A⊗Q の恒等（乗法は行き先の bimodule 側で効く）
    i = frame(one_q, uf, unit_map(a))
    e = frame(fu, one_a, identity(n))
    # U ⊣ F: j は Casimir、k は ε
    j = frame(one_a, fu, fs.casimir)
    k = frame(uf, one_q, counit_map(fs))

    fwd = make_adjunction(f, u, i, e, limit)
    bwd = make_adjunction(u, f, j, k, limit)
    if not (fwd.verified and bwd.verified):
        failed = fwd.report.failures + bwd.report.failures
        raise AxiomFailure(f"{a.name}: ambijunction fails {[c.name for c in failed]}")
    logger.info(f"{a.name}: ambijunction F ⊣ U ⊣ F verified")
    return Ambijunction(fwd, bwd)


def monad_from_adjunction(adj: Adjunction, limit: int = 8) -> Monad:
    """(R∘L, R e L, i)。"""
    left, right = adj.left, adj.right
    t = compose_one_cells(right, left)
    mu = whisker_left(right, whisker_right(adj.counit, left))
    mu = frame(compose_one_cells(t, t), t, mu.rho)
    eta = frame(identity_one_cell(t.dom), t, adj.unit.rho)

    assoc = two_cell_check(
        "monad-associativity",
        vertical_compose(whisker_right(mu, t), mu),
        vertical_compose(whisker_left(t, mu), mu),
        limit,
    )
    lunit = two_cell_check(
        "monad-left-unit", vertical_compose(whisker_right(eta, t), mu), identity_two_cell(t), limit
    )
    runit = two_cell_check(
        "monad-right-unit", vertical_compose(whisker_left(t, eta), mu), identity_two_cell(t), limit
    )
    return Monad(t, mu, eta, report_of(assoc, lunit, runit))


def comonad_from_adjunction(adj: Adjunction, limit: int = 8) -> Comonad:
    """(L∘R, L i R, e)。"""
    left, right = adj.left, adj.right
    g = compose_one_cells(left, right)
    delta = whisker_left(left, whisker_right(adj.unit, right))
    delta = frame(g, compose_one_cells(g, g), delta.rho)
    counit = frame(g, identity_one_cell(g.dom), adj.counit.rho)

    coassoc = two_cell_check(
        "comonad-coassociativity",
        vertical_compose(delta, whisker_right(delta, g)),
        vertical_compose(delta, whisker_left(g, delta)),
        limit,
    )
    lcounit = two_cell_check(
        "comonad-left-counit", vertical_compose(delta, whisker_right(counit, g)), identity_two_cell(g), limit
    )
    rcounit = two_cell_check(
        "comonad-right-counit", vertical_compose(delta, whisker_left(g, counit)), identity_two_cell(g), limit
    )
    return Comonad(g, delta, counit, report_of(coassoc, lcounit, rcounit))


def _algebra_of(amb: Ambijunction) -> Algebra:
    return amb.fwd.left.dom


def self_adjunction_from_ambijunction(amb: Ambijunction, limit: int = 8) -> Adjunction:
    """
    T = U∘F 上の T ⊣ T。
      ι = (U j F)·i
      σ = k·(U e F)
    """
    f, u = amb.fwd.left, amb.fwd.right
    i, e = amb.fwd.unit, amb.fwd.counit
    j, k = amb.bwd.unit, amb.bwd.counit
    t = compose_one_cells(u, f)

    iota = vertical_compose(i, whisker_left(u, whisker_right(j, f)))
    sigma = vertical_compose(whisker_left(u, whisker_right(e, f)), k)
    adj = make_adjunction(t, t, iota, sigma, limit)

    alg = _algebra_of(amb)
    n = alg.dim
    eps = amb.bwd.counit.rho.with_legs((n,), (1,))
    sigma_is_pairing = equality_check(
        "sigma-is-counit-of-mult",
        adj.counit.rho.with_legs((n, n), (1,)),
        compose_all(eps, mult_map(alg)),
        limit,
    )
    report = adj.report + report_of(sigma_is_pairing)
    return Adjunction(adj.left, adj.right, adj.unit, adj.counit, verified=report.passed, report=report)


def frobenius_from_ambijunction(amb: Ambijunction, limit: int = 8) -> FrobeniusStructure:
    """
    fwd から monoid (U e F, i)、bwd から comonoid (U j F, k) を取り出し、
    T ⊣ T を検査してから FrobeniusStructure に組み直す。
    """
    base = amb.fwd.left.cod
    if base.dim != 1:
        raise ObjectMismatch(f"round trip needs an ambijunction over Q, got {base.name}")
    alg = _algebra_of(amb)
    n = alg.dim

    monad = monad_from_adjunction(amb.fwd, limit)
    comonad = comonad_from_adjunction(amb.bwd, limit)
    selfadj = self_adjunction_from_ambijunction(amb, limit)
    for what, rep in (("monad", monad.report), ("comonad", comonad.report), ("self-adjunction", selfadj.report)):
        if not rep.passed:
            raise AxiomFailure(f"{alg.name}: derived {what} fails {[c.name for c in rep.failures]}")

    mu = monad.mu.rho.with_legs((n, n), (n,))
    eta = monad.eta.rho.with_legs((1,), (n,))
    delta = comonad.delta.rho.with_legs((n,), (n, n))
    eps = comonad.counit.rho.with_legs((n,), (1,))

    rebuilt = Algebra.from_maps(alg.name, alg.basis, mu, eta)
    fs = build_frobenius(rebuilt, eps.row(0), limit)
    if fs.comult != delta:
        raise AxiomFailure(f"{alg.name}: comultiplication U j F disagrees with the dual-basis Δ")
    logger.info(f"{alg.name}: Frobenius structure recovered from the ambijunction")
    return fs


def adjoint_comonad(fs: FrobeniusStructure, amb: Optional[Ambijunction] = None) -> tuple[LinearMap, LinearMap]:
    """
    T ⊣ T の (ι, σ) から右随伴 comonad を行列で組む:
      ε = σ∘(η⊗A)
      δ = (A⊗A⊗σ)∘(A⊗A⊗μ⊗A)∘(A⊗ι⊗A⊗A)∘(ι⊗A)
    """
    amb = amb or build_ambijunction(fs)
    selfadj = self_adjunction_from_ambijunction(amb)
    n = fs.dim
    iota = selfadj.unit.rho.with_legs((1,), (n, n))
    sigma = selfadj.counit.rho.with_legs((n, n), (1,))
    idn = identity(n)
    mu = mult_map(fs.algebra)

    eps = compose_all(sigma, kron(unit_map(fs.algebra), idn)).with_legs((n,), (1,))
    delta = compose_all(
        tensor(idn, idn, sigma),
        tensor(idn, idn, mu, idn),
        tensor(idn, iota, idn, idn),
        kron(iota, idn),
    ).with_legs((n,), (n, n))
    return delta, eps


def adjoint_comonad_report(fs: FrobeniusStructure, amb: Optional[Ambijunction] = None, limit: int = 8) -> CheckReport:
    delta, eps = adjoint_comonad(fs, amb)
    return report_of(
        equality_check("adjoint-comonad-delta", delta, fs.comult, limit),
        equality_check("adjoint-comonad-counit", eps, counit_map(fs), limit),
    )


def self_adjunction_cells(fs: FrobeniusStructure, amb: Optional[Ambijunction] = None) -> tuple[Adjunction, Adjunction, OneCell]:
    """mate の標準例に使う (T ⊣ T, Q 上の恒等随伴, T)。"""
    amb = amb or build_ambijunction(fs)
    selfadj = self_adjunction_from_ambijunction(amb)
    return selfadj, identity_adjunction(ground()), selfadj.left


def ambijunction_cell_report(amb: Ambijunction, limit: int = 8) -> CheckReport:
    f, u = amb.fwd.left, amb.fwd.right
    return (
        check_one_cell(f, limit).prefixed("F-")
        + check_one_cell(u, limit).prefixed("U-")
        + amb.fwd.report.prefixed("fwd-")
        + amb.bwd.report.prefixed("bwd-")
    )
