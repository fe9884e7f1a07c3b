"""
構造定数で与えた多元環と、その上の Frobenius 構造。

e_i·e_j = Σ_k mul[i][j][k]·e_k。乗法 μ の行列は μ[k, (i, j)] = mul[i][j][k]
（exact_core の kron 規約どおり i が major）。
"""

from __future__ import annotations
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import AxiomFailure, DegenerateForm, DimensionMismatch, Singular
from .exact_core import (
    LinearMap,
    column_vector,
    compose,
    compose_all,
    from_rows,
    identity,
    inverse,
    kron,
    rat_parse,
    row_vector,
    swap_map,
    zeros,
)
from .models import Check, CheckReport, equality_check, report_of

from logging import getLogger

logger = getLogger(__name__)


def _rat(x: Fraction | int | str) -> Fraction:
    return rat_parse(x) if isinstance(x, str) else Fraction(x)


@dataclass(frozen=True)
class Algebra:
    name: str
    basis: tuple[str, ...]
    mul: tuple[tuple[tuple[Fraction, ...], ...], ...]
    unit: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        n = len(self.basis)
        basis = tuple(str(b) for b in self.basis)
        try:
            mul = tuple(
                tuple(tuple(_rat(x) for x in self.mul[i][j]) for j in range(len(self.mul[i])))
                for i in range(len(self.mul))
            )
        except TypeError as e:
            raise DimensionMismatch(f"structure constants are not a 3D grid: {e}") from e
        unit = tuple(_rat(x) for x in self.unit)
        if len(mul) != n or any(len(row) != n for row in mul) or \
                any(len(v) != n for row in mul for v in row):
            raise DimensionMismatch(f"{self.name}: structure constants must be {n}x{n}x{n}")
        if len(unit) != n:
            raise DimensionMismatch(f"{self.name}: unit has {len(unit)} coordinates, dim is {n}")
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "unit", unit)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def mult_matrix(self) -> LinearMap:
        n = self.dim
        rows = [[self.mul[i][j][k] for i in range(n) for j in range(n)] for k in range(n)]
        return from_rows(rows, dom=(n, n), cod=(n,)) if n else zeros((0, 0), (0,))

    @cached_property
    def unit_column(self) -> LinearMap:
        return column_vector(self.unit, cod=(self.dim,))

    def product(self, a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
        n = self.dim
        return tuple(
            sum((a[i] * b[j] * self.mul[i][j][k] for i in range(n) for j in range(n)), Fraction(0))
            for k in range(n)
        )

    @classmethod
    def from_maps(cls, name: str, basis: Sequence[str], mult: LinearMap, unit: LinearMap) -> Algebra:
        n = len(basis)
        if mult.rows != n or mult.cols != n * n or unit.rows != n or unit.cols != 1:
            raise DimensionMismatch(f"{name}: maps do not match a {n}-dimensional basis")
        mul = tuple(
            tuple(tuple(mult[k, i * n + j] for k in range(n)) for j in range(n)) for i in range(n)
        )
        return cls(name=name, basis=tuple(basis), mul=mul, unit=unit.column(0))


def mult_map(alg: Algebra) -> LinearMap:
    return alg.mult_matrix


def unit_map(alg: Algebra) -> LinearMap:
    return alg.unit_column.with_legs((1,), (alg.dim,))


def counit_map(fs: FrobeniusStructure) -> LinearMap:
    return row_vector(fs.counit_vec, dom=(fs.algebra.dim,))


def pairing_map(fs: FrobeniusStructure) -> LinearMap:
    """σ = ε∘μ : A⊗A -> Q"""
    return compose(counit_map(fs), mult_map(fs.algebra))


def validate_algebra(alg: Algebra, limit: int = 8) -> CheckReport:
    n = alg.dim
    if len(alg.mul) != n or len(alg.unit) != n:
        raise DimensionMismatch(f"{alg.name}: grid/basis/unit sizes disagree")
    mu = mult_map(alg)
    eta = unit_map(alg)
    idn = identity(n)

    # witness の (row, col) は (q,), (i, j, k) そのもの
    assoc = equality_check(
        "associativity",
        compose(mu, kron(mu, idn)),
        compose(mu, kron(idn, mu)),
        limit,
    )
    left = equality_check("unit", compose(mu, kron(eta, idn)), idn, limit)
    right = equality_check("unit", compose(mu, kron(idn, eta)), idn, limit)
    unit = Check(
        name="unit",
        passed=left.passed and right.passed,
        witnesses=(left.witnesses + right.witnesses)[:limit],
    )
    report = report_of(assoc, unit)
    if not report.passed:
        logger.warning(f"{alg.name}: algebra axioms fail: {[c.name for c in report.failures]}")
    return report


def is_commutative(alg: Algebra) -> bool:
    mu = mult_map(alg)
    if alg.dim == 0:
        return True
    return compose(mu, swap_map(alg.dim)) == mu


@dataclass(frozen=True)
class FrobeniusStructure:
    algebra: Algebra
    counit_vec: tuple[Fraction, ...]
    gram: LinearMap
    dual_basis: tuple[tuple[Fraction, ...], ...]
    casimir: LinearMap
    comult: LinearMap
    report: CheckReport = field(default_factory=CheckReport, compare=False)

    @property
    def dim(self) -> int:
        return self.algebra.dim


def gram_matrix(alg: Algebra, counit_vec: Sequence[Fraction]) -> LinearMap:
    n = alg.dim
    rows = [
        [sum((alg.mul[i][j][k] * counit_vec[k] for k in range(n)), Fraction(0)) for j in range(n)]
        for i in range(n)
    ]
    return from_rows(rows, dom=(n,), cod=(n,))


def build_frobenius(alg: Algebra, counit_vec: Sequence[Fraction | int | str], limit: int = 8) -> FrobeniusStructure:
    n = alg.dim
    counit = tuple(_rat(x) for x in counit_vec)
    if len(counit) != n:
        raise DimensionMismatch(f"{alg.name}: counit has {len(counit)} coordinates, dim is {n}")

    validity = validate_algebra(alg, limit)
    if not validity.passed:
        raise AxiomFailure(f"{alg.name} is not an associative unital algebra")

    gram = gram_matrix(alg, counit)
    try:
        gram_inv = inverse(gram)
    except Singular as e:
        raise DegenerateForm(f"{alg.name}: counit {list(counit)} gives a singular Gram matrix") from e

    # 双対基底は ε(e^i·e_j) = δ_ij。e^i は G^{-1} の第 i 行。
    dual_basis = tuple(gram_inv.row(i) for i in range(n))
    casimir = column_vector(
        [gram_inv[p, q] for p in range(n) for q in range(n)], cod=(n, n)
    )
    # Δ(a) = (a⊗1)·C = Σ_i a·e_i ⊗ e^i
    comult = compose(
        kron(mult_map(alg), identity(n)), kron(identity(n), casimir)
    ).with_legs((n,), (n, n))

    fs = FrobeniusStructure(
        algebra=alg,
        counit_vec=counit,
        gram=gram,
        dual_basis=dual_basis,
        casimir=casimir,
        comult=comult,
    )
    report = check_frobenius(fs, limit) + report_of(_expansion_check(fs, limit))
    if not report.passed:
        raise AxiomFailure(
            f"{alg.name}: nondegenerate form but {[c.name for c in report.failures]} fail"
        )
    logger.info(f"{alg.name}: Frobenius structure certified ({len(report)} checks)")
    return FrobeniusStructure(
        algebra=alg,
        counit_vec=counit,
        gram=gram,
        dual_basis=dual_basis,
        casimir=casimir,
        comult=comult,
        report=report,
    )


def _expansion_check(fs: FrobeniusStructure, limit: int) -> Check:
    # a = Σ e_i ε(e^i a) = Σ ε(a e_i) e^i : T ⊣ T の zig-zag そのもの
    n = fs.dim
    idn = identity(n)
    sigma = pairing_map(fs)
    c = fs.casimir
    left = equality_check("dual-basis-expansion", compose(kron(idn, sigma), kron(c, idn)), idn, limit)
    right = equality_check("dual-basis-expansion", compose(kron(sigma, idn), kron(idn, c)), idn, limit)
    return Check(
        name="dual-basis-expansion",
        passed=left.passed and right.passed,
        witnesses=(left.witnesses + right.witnesses)[:limit],
    )


def check_frobenius(fs: FrobeniusStructure, limit: int = 8) -> CheckReport:
    n = fs.dim
    idn = identity(n)
    mu = mult_map(fs.algebra)
    eps = counit_map(fs)
    delta = fs.comult
    c = fs.casimir

    coassoc = equality_check(
        "coassociativity",
        compose(kron(delta, idn), delta),
        compose(kron(idn, delta), delta),
        limit,
    )
    left = equality_check("counit", compose(kron(eps, idn), delta), idn, limit)
    right = equality_check("counit", compose(kron(idn, eps), delta), idn, limit)
    counit = Check("counit", left.passed and right.passed, (left.witnesses + right.witnesses)[:limit])

    middle = compose(delta, mu)
    frob_left = equality_check(
        "frobenius-left", compose(kron(idn, mu), kron(delta, idn)), middle, limit
    )
    frob_right = equality_check(
        "frobenius-right", compose(kron(mu, idn), kron(idn, delta)), middle, limit
    )
    casimir = equality_check(
        "casimir-invariance",
        compose(kron(mu, idn), kron(idn, c)),
        compose(kron(idn, mu), kron(c, idn)),
        limit,
    )
    report = report_of(coassoc, counit, frob_left, frob_right, casimir)
    if not report.passed:
        logger.warning(
            f"{fs.algebra.name}: Frobenius checks fail: {[x.name for x in report.failures]}"
        )
    return report


def is_symmetric(fs: FrobeniusStructure) -> bool:
    if fs.dim == 0:
        return True
    sigma = pairing_map(fs)
    return compose(sigma, swap_map(fs.dim)) == sigma


def rescale_counit(fs: FrobeniusStructure, q: Fraction | int) -> FrobeniusStructure:
    q = Fraction(q)
    if q == 0:
        raise DegenerateForm("rescaling the counit by 0")
    return build_frobenius(fs.algebra, [q * x for x in fs.counit_vec])


def casimir_sandwich(fs: FrobeniusStructure) -> LinearMap:
    """a ↦ Σ_i e_i·a·e^i（C を a で挟む作用素）。"""
    n = fs.dim
    mu = mult_map(fs.algebra)
    idn = identity(n)
    return compose_all(
        mu, kron(mu, idn), kron(idn, swap_map(n)), kron(fs.casimir, idn)
    ).with_legs((n,), (n,))
