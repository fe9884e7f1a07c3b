import pytest

from frobx.adjunction import build_ambijunction, induction_cell, restriction_cell
from frobx.algebra import build_frobenius, mult_map
from frobx.bimodule import (
    OneCell,
    check_one_cell,
    check_two_cell,
    compose_one_cells,
    compose_path,
    frame,
    horizontal_compose,
    identity_one_cell,
    identity_two_cell,
    realize_bimodule,
    same_cell,
    two_cells_equal,
    vertical_chain,
    vertical_compose,
    whisker_left,
    whisker_right,
)
from frobx.catalog import dual_numbers, ground, group_algebra_z2, matrix_algebra, trace_counit, twisted_counit
from frobx.errors import AxiomFailure, ObjectMismatch, ShapeMismatch
from frobx.exact_core import column_vector, compose, identity, kron, strip_units, swap_map
from frobx.sampling import make_rng, random_map


def _dual():
    return build_frobenius(dual_numbers(), (0, 1))


def _left_mult(fs, c):
    # a -> c·a
    n = fs.dim
    return compose(mult_map(fs.algebra), kron(column_vector(c), identity(n)))


def test_induction_and_restriction_are_one_cells():
    fs = _dual()
    for cell in (induction_cell(fs), restriction_cell(fs)):
        assert check_one_cell(cell).passed


def test_swapped_action_on_matrices_fails():
    fs = build_frobenius(matrix_algebra(2), trace_counit(2))
    phi = compose(mult_map(fs.algebra), swap_map(4)).with_legs((4, 4), (1, 4))
    cell = OneCell(ground(), fs.algebra, (4,), phi)
    report = check_one_cell(cell)
    assert not report.get("multiplication-square").passed
    assert report.get("unit-triangle").passed


def test_realize_bimodule_names_only_failing_checks():
    fs = build_frobenius(matrix_algebra(2), trace_counit(2))
    phi = compose(mult_map(fs.algebra), swap_map(4)).with_legs((4, 4), (1, 4))
    cell = OneCell(ground(), fs.algebra, (4,), phi)
    with pytest.raises(AxiomFailure) as err:
        realize_bimodule(cell)
    message = str(err.value)
    assert "right-associativity" in message
    for ok in ("right-unit", "left-unit", "left-associativity", "actions-commute"):
        assert ok not in message


def test_one_cell_shape_is_enforced():
    fs = _dual()
    with pytest.raises(ShapeMismatch):
        OneCell(ground(), fs.algebra, (3,), mult_map(fs.algebra))


def test_identity_one_cell_is_unit_for_composition():
    fs = _dual()
    u = restriction_cell(fs)
    f = induction_cell(fs)
    assert check_one_cell(identity_one_cell(fs.algebra)).passed
    assert same_cell(compose_one_cells(u, identity_one_cell(fs.algebra)), u)
    assert same_cell(compose_one_cells(identity_one_cell(ground()), u), u)
    assert same_cell(compose_path(identity_one_cell(fs.algebra), f, identity_one_cell(ground())), f)


def test_composition_checks_objects():
    fs = _dual()
    u = restriction_cell(fs)
    with pytest.raises(ObjectMismatch):
        compose_one_cells(u, u)
    uf = compose_one_cells(u, induction_cell(fs))
    assert uf.carrier_dim == 2
    assert check_one_cell(uf).passed


def test_ambijunction_cells_are_coherent():
    fs = _dual()
    amb = build_ambijunction(fs)
    for t in (amb.fwd.unit, amb.fwd.counit, amb.bwd.unit, amb.bwd.counit):
        assert check_two_cell(t).passed


def test_corrupted_counit_fails_coherence():
    fs = _dual()
    e = build_ambijunction(fs).fwd.counit
    bad = frame(e.src, e.tgt, e.rho.with_entry(0, 1, 1))
    assert not check_two_cell(bad).passed


def test_vertical_identity_laws():
    fs = _dual()
    e = build_ambijunction(fs).fwd.counit
    assert two_cells_equal(vertical_compose(identity_two_cell(e.src), e), e)
    assert two_cells_equal(vertical_compose(e, identity_two_cell(e.tgt)), e)


def test_vertical_composition_is_associative():
    fs = _dual()
    f = induction_cell(fs)
    rng = make_rng(3)
    for _ in range(20):
        s, t, r = (frame(f, f, random_map(rng, (1,), (2,))) for _ in range(3))
        assert two_cells_equal(
            vertical_compose(vertical_compose(s, t), r),
            vertical_compose(s, vertical_compose(t, r)),
        )
        assert check_two_cell(vertical_chain(s, t, r)).passed


def test_whiskering_identity_is_identity():
    fs = _dual()
    f, u = induction_cell(fs), restriction_cell(fs)
    t = compose_one_cells(u, f)
    assert two_cells_equal(
        whisker_left(f, identity_two_cell(t)), identity_two_cell(compose_one_cells(f, t))
    )
    assert two_cells_equal(
        whisker_right(identity_two_cell(u), f), identity_two_cell(compose_one_cells(u, f))
    )


def test_interchange_law():
    fs = _dual()
    f, u = induction_cell(fs), restriction_cell(fs)
    rng = make_rng(5)
    for _ in range(20):
        # s: U => U は左からの積、t: F => F は A の元
        s = frame(u, u, _left_mult(fs, random_map(rng, (1,), (2,)).column(0)))
        t = frame(f, f, random_map(rng, (1,), (2,)))
        assert check_two_cell(s).passed
        assert check_two_cell(t).passed
        lhs = vertical_compose(whisker_left(u, t), whisker_right(s, f))
        rhs = vertical_compose(whisker_right(s, f), whisker_left(u, t))
        assert two_cells_equal(lhs, rhs)
        assert two_cells_equal(horizontal_compose(s, t), lhs)


def test_whiskering_distributes_over_vertical():
    fs = _dual()
    f, u = induction_cell(fs), restriction_cell(fs)
    rng = make_rng(9)
    s = frame(f, f, random_map(rng, (1,), (2,)))
    t = frame(f, f, random_map(rng, (1,), (2,)))
    assert two_cells_equal(
        whisker_right(vertical_compose(s, t), u),
        vertical_compose(whisker_right(s, u), whisker_right(t, u)),
    )
    assert two_cells_equal(
        whisker_left(u, vertical_compose(s, t)),
        vertical_compose(whisker_left(u, s), whisker_left(u, t)),
    )


def test_two_cell_boundaries():
    fs = _dual()
    f = induction_cell(fs)
    with pytest.raises(ObjectMismatch):
        frame(f, identity_one_cell(fs.algebra), column_vector([1, 0]))
    e = build_ambijunction(fs).fwd.counit
    with pytest.raises(ObjectMismatch):
        vertical_compose(e, e)


def test_realize_bimodule():
    fs = _dual()
    u, f = restriction_cell(fs), induction_cell(fs)
    for cell in (u, f, compose_one_cells(f, u), identity_one_cell(fs.algebra)):
        b = realize_bimodule(cell)
        assert b.report.passed
        assert len(b.report) == 5


def test_one_cell_composition_is_associative():
    for fs in (_dual(), build_frobenius(matrix_algebra(2), twisted_counit(2))):
        u, f = restriction_cell(fs), induction_cell(fs)
        one_a = identity_one_cell(fs.algebra)
        uf = compose_one_cells(u, f)
        for x, y, z in ((u, f, u), (f, u, f), (u, one_a, f), (one_a, f, u), (uf, uf, uf)):
            lhs = compose_one_cells(compose_one_cells(x, y), z)
            rhs = compose_one_cells(x, compose_one_cells(y, z))
            assert same_cell(lhs, rhs)
            assert lhs.phi == rhs.phi


def test_composites_stay_one_cells():
    for fs in (_dual(), build_frobenius(group_algebra_z2(), (1, 0)),
               build_frobenius(matrix_algebra(2), twisted_counit(2))):
        u, f = restriction_cell(fs), induction_cell(fs)
        for cell in (compose_path(u, f, u), compose_path(f, u, f), compose_path(u, f, u, f),
                     compose_path(f, u, f, u)):
            assert check_one_cell(cell).passed


def test_realized_composite_is_tensor_over_middle_algebra():
    for fs in (_dual(), build_frobenius(group_algebra_z2(), (1, 0))):
        u, f = restriction_cell(fs), induction_cell(fs)
        for first, second in ((u, f), (f, u)):
            left = realize_bimodule(first)
            whole = realize_bimodule(compose_one_cells(first, second))
            # (x⊗v)·a は second の φ で v·a を (a'⊗v') に直し、a' を first 側の右作用で吸収する
            outer = (first.dom.dim,) + first.carrier
            absorbed = compose(
                kron(left.right_action, identity(second.carrier)),
                kron(identity(outer), second.phi),
            )
            assert whole.right_action == absorbed
            assert whole.left_action == kron(left.left_action, identity(second.carrier))
        n = fs.dim
        # U∘F は A⊗_A A ≅ A、F∘U は A⊗A
        assert strip_units(realize_bimodule(compose_one_cells(u, f)).carrier) == (n,)
        assert strip_units(realize_bimodule(compose_one_cells(f, u)).carrier) == (n, n)
