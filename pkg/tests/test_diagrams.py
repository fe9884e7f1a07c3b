import pytest

from frobx.algebra import build_frobenius
from frobx.catalog import dual_numbers, group_algebra_z2, matrix_algebra, trace_counit, twisted_counit
from frobx.diagrams import (
    Generator,
    evaluate_text,
    evaluate_word,
    genus_word,
    handle_operator,
    parse_word,
    surface_invariant,
)
from frobx.errors import NotCommutative, StrandMismatch, WordSyntaxError
from frobx.exact_core import from_rows, identity


def _dual():
    return build_frobenius(dual_numbers(), (0, 1))


def _z2():
    return build_frobenius(group_algebra_z2(), (1, 0))


def _all():
    return [
        _dual(),
        _z2(),
        build_frobenius(matrix_algebra(2), trace_counit(2)),
        build_frobenius(matrix_algebra(2), twisted_counit(2)),
    ]


def test_parse_word():
    w = parse_word("u | d | m | c")
    assert len(w.slices) == 4
    assert w.in_strands == 0 and w.out_strands == 0
    assert str(w) == "u | d | m | c"

    w = parse_word("d i|i m")
    assert w.slices[0].gens == (Generator.COMULT, Generator.IDENTITY)
    assert w.in_strands == 2 and w.out_strands == 2
    assert Generator.SWAP.arity == (2, 2)


def test_parse_strand_mismatch():
    with pytest.raises(StrandMismatch) as e:
        parse_word("u | d | c")
    assert e.value.slice_index == 3
    assert e.value.expected == 2
    assert e.value.actual == 1
    assert "strand mismatch at slice 3" in str(e.value)


def test_parse_syntax_errors():
    cases = {
        "u | x | c": 4,
        "u | | c": 4,
        "": 0,
        "u |": 2,
    }
    for text, pos in cases.items():
        with pytest.raises(WordSyntaxError) as e:
            parse_word(text)
        assert e.value.position == pos, text


def test_simple_evaluations():
    fs = _dual()
    assert evaluate_text(fs, "i") == identity(2)
    assert evaluate_text(fs, "i | i") == evaluate_text(fs, "i")
    assert evaluate_text(fs, "d | m") == from_rows([[0, 0], [2, 0]])
    assert evaluate_text(fs, "u | c")[0, 0] == 0
    assert evaluate_text(fs, "u | d") == fs.casimir


def test_handle_operator():
    assert handle_operator(_dual()) == from_rows([[0, 0], [2, 0]])
    assert handle_operator(_z2()) == identity(2).scale(2)
    mat = build_frobenius(matrix_algebra(2), trace_counit(2))
    # Σ a·E_ij·E_ji = 2a
    assert handle_operator(mat) == identity(4).scale(2)


def test_surface_invariants():
    fs = _dual()
    assert [surface_invariant(fs, g) for g in (0, 1, 2)] == [0, 2, 0]
    z2 = _z2()
    for g in range(6):
        assert surface_invariant(z2, g) == 2 ** g
    assert surface_invariant(z2, 1) == z2.dim


def test_surface_invariant_matches_word():
    for fs in (_dual(), _z2()):
        for g in range(4):
            assert evaluate_text(fs, genus_word(g))[0, 0] == surface_invariant(fs, g)
    assert genus_word(0) == "u | c"
    assert genus_word(2) == "u | d | m | d | m | c"


def test_surface_invariant_errors():
    mat = build_frobenius(matrix_algebra(2), trace_counit(2))
    with pytest.raises(NotCommutative) as e:
        surface_invariant(mat, 1)
    assert "algebra is not commutative: mat2" in str(e.value)
    with pytest.raises(ValueError):
        surface_invariant(_z2(), -1)


def test_frobenius_moves():
    for fs in _all():
        middle = evaluate_text(fs, "m | d")
        assert evaluate_text(fs, "d i | i m") == middle
        assert evaluate_text(fs, "i d | m i") == middle
        assert evaluate_text(fs, "d | i c") == identity(fs.dim)
        assert evaluate_text(fs, "u i | m") == identity(fs.dim)


def test_swaps_vanish_for_commutative_algebras():
    for fs in (_dual(), _z2()):
        assert evaluate_text(fs, "s | m") == evaluate_text(fs, "m")
        assert evaluate_text(fs, "d | s") == evaluate_text(fs, "d")
        assert evaluate_text(fs, "u | d | s | m | c") == evaluate_text(fs, "u | d | m | c")
    for fs in _all():
        assert evaluate_text(fs, "s | s") == identity((fs.dim, fs.dim))


def test_evaluate_word_accepts_parsed_word():
    fs = _z2()
    word = parse_word("u | d | m | c")
    assert evaluate_word(fs, word) == evaluate_text(fs, str(word))
