"""
Frobenius 多元環上の加群と余加群、およびその相互変換。

  加群   ν : A⊗M -> M
  余加群 ν̄ : M -> A⊗M

ν̄ = (A⊗ν)∘(C⊗M)、ν̃ = (σ⊗M)∘(A⊗ν̄)。互いに逆（T ⊣ T の zig-zag）。
"""

from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import FrobeniusStructure, counit_map, mult_map, pairing_map, unit_map
from .errors import AxiomFailure, ShapeMismatch
from .exact_core import (
    LinearMap,
    column_vector,
    compose,
    identity,
    inverse,
    kron,
    pivot_columns,
    pivot_rows,
    strip_units,
    zeros,
)
from .models import CheckReport, equality_check, report_of

from logging import getLogger

logger = getLogger(__name__)


def _require_legs(f: LinearMap, dom: tuple[int, ...], cod: tuple[int, ...], what: str) -> LinearMap:
    if strip_units(f.dom_factors) != strip_units(dom) or strip_units(f.cod_factors) != strip_units(cod):
        raise ShapeMismatch(
            f"{what} must be {list(cod)}<-{list(dom)}, got {list(f.cod_factors)}<-{list(f.dom_factors)}"
        )
    return f.with_legs(dom, cod)


def module_axioms(fs: FrobeniusStructure, carrier_dim: int, action: LinearMap, limit: int = 8) -> CheckReport:
    n, m = fs.dim, carrier_dim
    idm = identity(m)
    return report_of(
        equality_check("module-unit", compose(action, kron(unit_map(fs.algebra), idm)), idm, limit),
        equality_check(
            "module-associativity",
            compose(action, kron(mult_map(fs.algebra), idm)),
            compose(action, kron(identity(n), action)),
            limit,
        ),
    )


def comodule_axioms(fs: FrobeniusStructure, carrier_dim: int, coaction: LinearMap, limit: int = 8) -> CheckReport:
    n, m = fs.dim, carrier_dim
    idm = identity(m)
    return report_of(
        equality_check("comodule-counit", compose(kron(counit_map(fs), idm), coaction), idm, limit),
        equality_check(
            "comodule-coassociativity",
            compose(kron(fs.comult, idm), coaction),
            compose(kron(identity(n), coaction), coaction),
            limit,
        ),
    )


@dataclass(frozen=True)
class ModuleAction:
    frob: FrobeniusStructure
    carrier_dim: int
    action: LinearMap

    def __post_init__(self) -> None:
        n, m = self.frob.dim, self.carrier_dim
        action = _require_legs(self.action, (n, m), (m,), "module action")
        object.__setattr__(self, "action", action)
        report = module_axioms(self.frob, m, action)
        if not report.passed:
            raise AxiomFailure(f"not a module over {self.frob.algebra.name}: {[c.name for c in report.failures]}")

    @classmethod
    def regular(cls, fs: FrobeniusStructure) -> ModuleAction:
        return cls(fs, fs.dim, mult_map(fs.algebra))

    @classmethod
    def free(cls, fs: FrobeniusStructure, multiplicity: int) -> ModuleAction:
        """A⊗V に μ⊗V で作用する自由加群。"""
        n = fs.dim
        action = kron(mult_map(fs.algebra), identity(multiplicity))
        return cls(fs, n * multiplicity, action.with_legs((n, n * multiplicity), (n * multiplicity,)))

    @classmethod
    def from_matrices(cls, fs: FrobeniusStructure, images: Sequence[LinearMap]) -> ModuleAction:
        """基底 e_i の作用行列 images[i]（M -> M）から加群を作る。"""
        n = fs.dim
        if len(images) != n:
            raise ShapeMismatch(f"need {n} action matrices, got {len(images)}")
        m = images[0].rows if images else 0
        entries = zeros((n, m), (m,)).entries.copy()
        for i, x in enumerate(images):
            if x.rows != m or x.cols != m:
                raise ShapeMismatch(f"action matrix {i} is {x.rows}x{x.cols}, expected {m}x{m}")
            entries[:, i * m:(i + 1) * m] = x.entries
        return cls(fs, m, LinearMap(entries, (n, m), (m,)))

    @classmethod
    def left_ideal(cls, fs: FrobeniusStructure, generator: Sequence[Fraction]) -> ModuleAction:
        """
        正則加群の部分加群 A·x。座標は e_i·x の張る空間から選んだ独立な列で取る。
        x が零因子なら自由加群にならない（双対数の x なら 1 次元の単純加群）。
        """
        n = fs.dim
        mu = mult_map(fs.algebra)
        x = column_vector(generator, cod=(n,))
        # 列 i が e_i·x
        span = compose(mu, kron(identity(n), x)).with_legs((n,), (n,))
        cols = pivot_columns(span)
        r = len(cols)
        if r == 0:
            return cls(fs, 0, zeros((n, 0), (0,)))
        basis = LinearMap(span.entries[:, list(cols)], (r,), (n,))
        rows = list(pivot_rows(basis))
        coords = inverse(LinearMap(basis.entries[rows, :], (r,), (r,)))

        images = []
        for i in range(n):
            e_i = column_vector([int(k == i) for k in range(n)])
            moved = compose(mu, kron(e_i, basis))
            images.append(compose(coords, LinearMap(moved.entries[rows, :], (r,), (r,))))
        return cls.from_matrices(fs, images)

    def images(self) -> tuple[LinearMap, ...]:
        """基底 e_i ごとの作用行列（from_matrices の逆）。"""
        m = self.carrier_dim
        return tuple(
            LinearMap(self.action.entries[:, i * m:(i + 1) * m], (m,), (m,)) for i in range(self.frob.dim)
        )


def direct_sum(first: ModuleAction, second: ModuleAction) -> ModuleAction:
    fs = first.frob
    if second.frob.algebra != fs.algebra:
        raise ShapeMismatch("direct sum of modules over different algebras")
    p, q = first.carrier_dim, second.carrier_dim
    images = []
    for x, y in zip(first.images(), second.images()):
        block = zeros((p + q,), (p + q,)).entries.copy()
        block[:p, :p] = x.entries
        block[p:, p:] = y.entries
        images.append(LinearMap(block, (p + q,), (p + q,)))
    return ModuleAction.from_matrices(fs, images)


@dataclass(frozen=True)
class ComoduleCoaction:
    frob: FrobeniusStructure
    carrier_dim: int
    coaction: LinearMap

    def __post_init__(self) -> None:
        n, m = self.frob.dim, self.carrier_dim
        coaction = _require_legs(self.coaction, (m,), (n, m), "comodule coaction")
        object.__setattr__(self, "coaction", coaction)
        report = comodule_axioms(self.frob, m, coaction)
        if not report.passed:
            raise AxiomFailure(f"not a comodule over {self.frob.algebra.name}: {[c.name for c in report.failures]}")


def module_to_comodule(fs: FrobeniusStructure, module: ModuleAction) -> ComoduleCoaction:
    n, m = fs.dim, module.carrier_dim
    # ν̄(x) = Σ_i e_i ⊗ ν(e^i ⊗ x)
    coaction = compose(kron(identity(n), module.action), kron(fs.casimir, identity(m)))
    return ComoduleCoaction(fs, m, coaction.with_legs((m,), (n, m)))


def comodule_to_module(fs: FrobeniusStructure, comodule: ComoduleCoaction) -> ModuleAction:
    n, m = fs.dim, comodule.carrier_dim
    action = compose(kron(pairing_map(fs), identity(m)), kron(identity(n), comodule.coaction))
    return ModuleAction(fs, m, action.with_legs((n, m), (m,)))


def free_module_coaction_agreement(fs: FrobeniusStructure, carrier_dim: int, limit: int = 8) -> CheckReport:
    """自由加群 (A⊗V, μ⊗V) から作った余作用が余自由余作用 Δ⊗V と一致するか。"""
    free = ModuleAction.free(fs, carrier_dim)
    n = fs.dim
    induced = module_to_comodule(fs, free).coaction.with_legs((n, carrier_dim), (n, n, carrier_dim))
    cofree = kron(fs.comult, identity(carrier_dim))
    return report_of(equality_check(f"free-coaction-agreement[{carrier_dim}]", induced, cofree, limit))


@dataclass(frozen=True)
class FrobeniusExtension:
    induced: ModuleAction
    coinduced: ModuleAction
    iso: LinearMap
    report: CheckReport


def coinduced_module(fs: FrobeniusStructure, carrier_dim: int) -> ModuleAction:
    """Hom(A, V) ≅ A*⊗V 上の (a·f)(b) = f(b·a)。"""
    alg = fs.algebra
    n, m = fs.dim, carrier_dim
    nm = n * m
    entries = zeros((n, nm), (nm,)).entries.copy()
    for b in range(n):
        for i in range(n):
            for p in range(n):
                c = alg.mul[b][i][p]
                if c:
                    for w in range(m):
                        entries[b * m + w, (i * n + p) * m + w] = c
    return ModuleAction(fs, nm, LinearMap(entries, (n, nm), (nm,)))


def induction_coinduction_iso(fs: FrobeniusStructure, carrier_dim: int, limit: int = 8) -> FrobeniusExtension:
    """Φ(a⊗w) = ε(−·a)⊗w は Ind(V) -> CoInd(V) の A 線形同型。"""
    n, m = fs.dim, carrier_dim
    nm = n * m
    induced = ModuleAction.free(fs, m)
    coinduced = coinduced_module(fs, m)
    iso = kron(fs.gram, identity(m)).with_legs((nm,), (nm,))

    linear = equality_check(
        "induction-coinduction-module-map",
        compose(iso, induced.action),
        compose(coinduced.action, kron(identity(n), iso)),
        limit,
    )
    # G は build_frobenius で可逆と確認済み
    invertible = equality_check(
        "induction-coinduction-invertible", compose(inverse(iso), iso), identity(nm), limit
    )
    report = report_of(linear, invertible)
    if not report.passed:
        logger.warning(f"{fs.algebra.name}: induction and coinduction do not agree")
    return FrobeniusExtension(induced, coinduced, iso, report)
