from __future__ import annotations
from dataclasses import dataclass
from typing import Optional

from .adjunction import (
    adjoint_comonad_report,
    ambijunction_cell_report,
    build_ambijunction,
    frobenius_from_ambijunction,
    mate,
    mate_inv_sandwich,
    mate_sandwich,
    self_adjunction_cells,
    self_adjunction_from_ambijunction,
)
from .algebra import (
    Algebra,
    FrobeniusStructure,
    check_frobenius,
    counit_map,
    gram_matrix,
    is_commutative,
    is_symmetric,
    mult_map,
    unit_map,
    validate_algebra,
)
from .bimodule import compose_one_cells, frame, identity_one_cell
from .catalog import ground
from .diagrams import evaluate_text, genus_word, surface_invariant
from .errors import Singular
from .exact_core import LinearMap, inverse, rat_format
from .models import AuditResult, Check, CheckReport, equality_check, report_of
from .representations import (
    ModuleAction,
    comodule_to_module,
    free_module_coaction_agreement,
    induction_coinduction_iso,
    module_to_comodule,
)
from .sampling import make_rng, random_map, random_module

from logging import getLogger

logger = getLogger(__name__)


@dataclass(frozen=True)
class AuditConfig:
    # mate の往復を試す乱択 2-cell の数
    random_trials: int = 100
    seed: int = 0
    max_witnesses: int = 8
    random_modules: int = 20
    max_module_dim: int = 4
    free_carriers: tuple[int, ...] = (1, 2, 3, 4)


def _rows(f: LinearMap) -> list[list[str]]:
    return f.to_rows()


def _vec(v) -> list[str]:
    return [rat_format(x) for x in v]


class FrobeniusAudit:
    """CLI の各サブコマンドに対応する検査をまとめたもの。"""

    def __init__(self, config: AuditConfig = AuditConfig()) -> None:
        self._cfg = config

    @property
    def config(self) -> AuditConfig:
        return self._cfg

    @property
    def _limit(self) -> int:
        return self._cfg.max_witnesses

    def validate(self, alg: Algebra) -> AuditResult:
        report = validate_algebra(alg, self._limit)
        return AuditResult(
            "validate",
            report,
            {"dim": alg.dim, "commutative": is_commutative(alg) if report.passed else False},
        )

    def gram(self, alg: Algebra, counit_vec) -> AuditResult:
        g = gram_matrix(alg, counit_vec)
        try:
            g_inv: Optional[LinearMap] = inverse(g)
        except Singular:
            g_inv = None
        check = Check("nondegenerate", g_inv is not None, note=None if g_inv is not None else "Gram matrix is singular")
        return AuditResult(
            "gram",
            report_of(check),
            {"gram": _rows(g), "gram_inverse": _rows(g_inv) if g_inv is not None else None},
        )

    def frobenius(self, fs: FrobeniusStructure) -> AuditResult:
        return AuditResult(
            "frobenius",
            check_frobenius(fs, self._limit),
            {
                "gram": _rows(fs.gram),
                "dual_basis": [_vec(v) for v in fs.dual_basis],
                "comultiplication": _rows(fs.comult),
                "casimir": _vec(fs.casimir.column(0)),
                "symmetric": is_symmetric(fs),
            },
        )

    def delta(self, fs: FrobeniusStructure) -> AuditResult:
        return AuditResult(
            "delta", check_frobenius(fs, self._limit), {"comultiplication": _rows(fs.comult)}
        )

    def ambijunction(self, fs: FrobeniusStructure) -> AuditResult:
        amb = build_ambijunction(fs, self._limit)
        report = ambijunction_cell_report(amb, self._limit)
        for m in (1, 2):
            report += induction_coinduction_iso(fs, m, self._limit).report.prefixed(f"V{m}-")
        return AuditResult(
            "ambijunction",
            report,
            {
                "unit_i": _rows(amb.fwd.unit.rho),
                "counit_e": _rows(amb.fwd.counit.rho),
                "unit_j": _rows(amb.bwd.unit.rho),
                "counit_k": _rows(amb.bwd.counit.rho),
            },
        )

    def roundtrip(self, fs: FrobeniusStructure) -> AuditResult:
        lim = self._limit
        amb = build_ambijunction(fs, lim)
        back = frobenius_from_ambijunction(amb, lim)
        report = report_of(
            equality_check("roundtrip-mult", mult_map(back.algebra), mult_map(fs.algebra), lim),
            equality_check("roundtrip-unit", unit_map(back.algebra), unit_map(fs.algebra), lim),
            equality_check("roundtrip-comult", back.comult, fs.comult, lim),
            equality_check("roundtrip-counit", counit_map(back), counit_map(fs), lim),
            equality_check("roundtrip-casimir", back.casimir, fs.casimir, lim),
        )
        report += self_adjunction_from_ambijunction(amb, lim).report.prefixed("self-")

        regular = ModuleAction.regular(fs)
        co = module_to_comodule(fs, regular)
        report += report_of(
            equality_check("regular-module-roundtrip", comodule_to_module(fs, co).action, regular.action, lim),
            equality_check("regular-coaction-is-comult", co.coaction, fs.comult, lim),
        )
        if fs.dim <= self._cfg.max_module_dim:
            report += report_of(self._random_module_roundtrips(fs))
        for m in self._cfg.free_carriers:
            report += free_module_coaction_agreement(fs, m, lim)
        return AuditResult("roundtrip", report, {"dim": fs.dim})

    def _random_module_roundtrips(self, fs: FrobeniusStructure) -> Check:
        rng = make_rng(self._cfg.seed)
        witnesses: tuple = ()
        passed = True
        for _ in range(self._cfg.random_modules):
            mod = random_module(fs, rng, self._cfg.max_module_dim)
            co = module_to_comodule(fs, mod)
            c = equality_check("random-module-roundtrip", comodule_to_module(fs, co).action, mod.action, self._limit)
            if not c.passed:
                passed = False
                witnesses = witnesses or c.witnesses
        return Check("random-module-roundtrip", passed, witnesses)

    def mate_demo(self, fs: FrobeniusStructure, seed: Optional[int] = None) -> AuditResult:
        lim = self._limit
        n = fs.dim
        amb = build_ambijunction(fs, lim)
        tt, idq, t = self_adjunction_cells(fs, amb)
        one = identity_one_cell(ground())
        mu = mult_map(fs.algebra)
        # ξ: T∘T => 1∘T と ζ: 1∘T => T∘T の間を行き来する
        to_zeta = mate_sandwich(tt, idq, t, t)
        to_xi = mate_inv_sandwich(tt, idq, t, t)

        zeta_mu = to_zeta.apply(mu)
        eta_xi = frame(compose_one_cells(one, one), compose_one_cells(t, one), unit_map(fs.algebra))
        zeta_eta = mate(idq, tt, one, one, eta_xi)
        mu_back = to_xi.apply(fs.comult)
        report = report_of(
            equality_check("mate-of-mult-is-comult", zeta_mu.rho, fs.comult, lim),
            equality_check("mate-of-unit-is-counit", zeta_eta.rho, counit_map(fs), lim),
            equality_check("inverse-mate-of-comult-is-mult", mu_back.rho, mu, lim),
        )
        report += adjoint_comonad_report(fs, amb, lim)

        rng = make_rng(self._cfg.seed if seed is None else seed)
        fwd_ok, bwd_ok = True, True
        fwd_w: tuple = ()
        bwd_w: tuple = ()
        for _ in range(self._cfg.random_trials):
            xi = random_map(rng, (n, n), (n,))
            c = equality_check("x", to_xi.apply(to_zeta.apply(xi).rho).rho, xi, lim)
            if not c.passed:
                fwd_ok, fwd_w = False, fwd_w or c.witnesses
            zeta = random_map(rng, (n,), (n, n))
            c = equality_check("x", to_zeta.apply(to_xi.apply(zeta).rho).rho, zeta, lim)
            if not c.passed:
                bwd_ok, bwd_w = False, bwd_w or c.witnesses
        report += report_of(
            Check("mate-inverse-of-mate", fwd_ok, fwd_w),
            Check("mate-of-inverse-mate", bwd_ok, bwd_w),
        )
        return AuditResult("mate-demo", report, {"trials": self._cfg.random_trials})

    def tqft(self, fs: FrobeniusStructure, genus: Optional[int] = None, word: Optional[str] = None) -> AuditResult:
        values: dict = {}
        if genus is not None:
            values["invariant"] = rat_format(surface_invariant(fs, genus))
            values["word"] = genus_word(genus)
        if word is not None:
            values["matrix"] = _rows(evaluate_text(fs, word))
        return AuditResult("tqft", CheckReport(), values)
