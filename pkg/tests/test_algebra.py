from dataclasses import replace
from fractions import Fraction

import pytest

from frobx.algebra import (
    Algebra,
    build_frobenius,
    casimir_sandwich,
    check_frobenius,
    counit_map,
    gram_matrix,
    is_commutative,
    is_symmetric,
    mult_map,
    pairing_map,
    rescale_counit,
    unit_map,
    validate_algebra,
)
from frobx.catalog import dual_numbers, group_algebra_z2, matrix_algebra, trace_counit, twisted_counit
from frobx.errors import AxiomFailure, DegenerateForm, DimensionMismatch
from frobx.exact_core import column_vector, compose, from_rows, identity, inverse, kron, swap_map


def _broken_assoc() -> Algebra:
    # dual numbers with x·1 changed to 1
    z, o = Fraction(0), Fraction(1)
    mul = (((o, z), (z, o)), ((o, z), (z, z)))
    return Algebra(name="broken", basis=("1", "x"), mul=mul, unit=(o, z))


def test_validate_catalog_algebras():
    for alg in (dual_numbers(), group_algebra_z2(), matrix_algebra(2)):
        assert validate_algebra(alg).passed


def test_validate_reports_associativity_witness():
    report = validate_algebra(_broken_assoc())
    assert not report.passed
    assoc = report.get("associativity")
    assert not assoc.passed
    assert assoc.witnesses
    w = assoc.witnesses[0]
    assert len(w.row) == 1 and len(w.col) == 3
    assert w.lhs != w.rhs


def test_algebra_rejects_bad_grid():
    with pytest.raises(DimensionMismatch):
        Algebra(name="bad", basis=("1", "x"), mul=(((1, 0),),), unit=(1, 0))
    with pytest.raises(DimensionMismatch):
        Algebra(name="bad", basis=("1",), mul=(((1,),),), unit=(1, 0))


def test_mult_and_unit_maps():
    z2 = group_algebra_z2()
    assert mult_map(z2) == from_rows([[1, 0, 0, 1], [0, 1, 1, 0]], dom=(2, 2), cod=(2,))
    assert unit_map(z2) == column_vector([1, 0])
    assert z2.product((0, 1), (0, 1)) == (1, 0)


def test_dual_numbers_structure():
    fs = build_frobenius(dual_numbers(), (0, 1))
    assert fs.gram == from_rows([[0, 1], [1, 0]])
    # e^1 = x, e^2 = 1
    assert fs.dual_basis == ((0, 1), (1, 0))
    assert fs.comult.column(0) == (0, 1, 1, 0)
    assert fs.comult.column(1) == (0, 0, 0, 1)
    assert fs.casimir == column_vector([0, 1, 1, 0], cod=(2, 2))
    assert compose(counit_map(fs), unit_map(fs.algebra))[0, 0] == 0
    assert fs.report.passed
    assert "dual-basis-expansion" in fs.report.names()


def test_group_algebra_structure():
    fs = build_frobenius(group_algebra_z2(), (1, 0))
    assert fs.gram == identity(2)
    assert fs.comult.column(0) == (1, 0, 0, 1)
    assert fs.comult.column(1) == (0, 1, 1, 0)
    assert is_symmetric(fs)


def test_degenerate_counit():
    with pytest.raises(DegenerateForm):
        build_frobenius(dual_numbers(), (1, 0))
    assert gram_matrix(dual_numbers(), (1, 0)) == from_rows([[1, 0], [0, 0]])


def test_build_frobenius_rejects_non_algebra():
    with pytest.raises(AxiomFailure):
        build_frobenius(_broken_assoc(), (0, 1))
    with pytest.raises(DimensionMismatch):
        build_frobenius(dual_numbers(), (0, 1, 0))


def test_frobenius_checks_names():
    fs = build_frobenius(dual_numbers(), (0, 1))
    report = check_frobenius(fs)
    assert report.names() == [
        "coassociativity",
        "counit",
        "frobenius-left",
        "frobenius-right",
        "casimir-invariance",
    ]
    assert report.passed


def test_perturbed_comult_breaks_coassociativity():
    fs = build_frobenius(dual_numbers(), (0, 1))
    broken = replace(fs, comult=fs.comult.with_entry(1, 1, 1))
    report = check_frobenius(broken)
    assert not report.get("coassociativity").passed
    assert report.get("coassociativity").witnesses


def test_matrix_algebra_trace_form():
    fs = build_frobenius(matrix_algebra(2), trace_counit(2))
    assert fs.report.passed
    assert is_symmetric(fs)
    assert not is_commutative(fs.algebra)
    # E_ij の双対は E_ji
    for a in range(4):
        i, j = divmod(a, 2)
        dual = [0] * 4
        dual[j * 2 + i] = 1
        assert fs.dual_basis[a] == tuple(dual)


def test_matrix_algebra_twisted_form():
    assert twisted_counit(2) == (1, 0, 1, 1)
    fs = build_frobenius(matrix_algebra(2), twisted_counit(2))
    assert fs.report.passed
    assert not is_symmetric(fs)
    assert check_frobenius(fs).get("casimir-invariance").passed


def test_rescaled_counit():
    for fs in (
        build_frobenius(dual_numbers(), (0, 1)),
        build_frobenius(matrix_algebra(2), twisted_counit(2)),
    ):
        for q in (Fraction(2), Fraction(-1), Fraction(1, 3)):
            r = rescale_counit(fs, q)
            assert r.report.passed
            assert r.gram == fs.gram.scale(q)
            assert r.dual_basis == tuple(tuple(x / q for x in v) for v in fs.dual_basis)
            assert r.casimir == fs.casimir.scale(1 / q)
            assert r.comult == fs.comult.scale(1 / q)
        with pytest.raises(DegenerateForm):
            rescale_counit(fs, 0)


def _swapped_gram(fs):
    # (i, j) 成分は ε(e_j·e_i)
    n = fs.dim
    row = compose(pairing_map(fs), swap_map(n))
    return from_rows([[row[0, i * n + j] for j in range(n)] for i in range(n)])


def test_swapped_pairing_is_nondegenerate():
    for fs in (
        build_frobenius(dual_numbers(), (0, 1)),
        build_frobenius(group_algebra_z2(), (1, 0)),
        build_frobenius(matrix_algebra(2), trace_counit(2)),
        build_frobenius(matrix_algebra(2), twisted_counit(2)),
    ):
        swapped = _swapped_gram(fs)
        assert compose(inverse(swapped), swapped) == identity(fs.dim)
        for i in range(fs.dim):
            for j in range(fs.dim):
                assert swapped[i, j] == fs.gram[j, i]


def test_commutativity():
    assert is_commutative(dual_numbers())
    assert is_commutative(group_algebra_z2())
    assert not is_commutative(matrix_algebra(2))


def test_casimir_sandwich_on_matrices():
    fs = build_frobenius(matrix_algebra(2), trace_counit(2))
    # a -> Σ E_ij a E_ji = tr(a)·1
    expected = from_rows([[1, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 1]])
    assert casimir_sandwich(fs) == expected


def test_from_maps_roundtrip():
    alg = group_algebra_z2()
    rebuilt = Algebra.from_maps(alg.name, alg.basis, mult_map(alg), unit_map(alg))
    assert rebuilt == alg
    fs = build_frobenius(rebuilt, (1, 0))
    assert compose(kron(counit_map(fs), identity(2)), fs.comult) == identity(2)
