from fractions import Fraction

import pytest

from frobx.errors import MalformedRational, ShapeMismatch, Singular, ZeroDenominator
from frobx.exact_core import (
    compose,
    diff,
    from_rows,
    identity,
    inverse,
    kron,
    pivot_columns,
    pivot_rows,
    rat_format,
    rat_parse,
    swap_map,
    zeros,
)
from frobx.sampling import make_rng, random_invertible, random_map


def test_rat_parse_canonical():
    assert rat_parse("3/6") == Fraction(1, 2)
    assert rat_parse("-4") == Fraction(-4)
    assert rat_format(rat_parse("-10/4")) == "-5/2"
    assert rat_format(Fraction(7)) == "7"


def test_rat_parse_errors():
    with pytest.raises(ZeroDenominator):
        rat_parse("1/0")
    for bad in ["", "abc", "1/-2", "1.5", "--1", " 3 ", "3\n", "\u0661\u0662", "1/\u0662"]:
        with pytest.raises(MalformedRational):
            rat_parse(bad)


def test_compose_identity_and_legs():
    assert compose(identity(2), identity(2)) == identity(2)

    f = from_rows([[1, 0], [0, 1], [1, 1], [2, 0]], dom=(2,), cod=(2, 2))
    g = from_rows([[1, 0, 0, 1], [0, 1, 1, 0]], dom=(2, 2), cod=(2,))
    h = compose(g, f)
    assert h.dom_factors == (2,)
    assert h.cod_factors == (2,)
    assert h == from_rows([[3, 0], [1, 2]])


def test_compose_rejects_leg_mismatch():
    f = identity((2, 2))
    g = identity(4)
    with pytest.raises(ShapeMismatch):
        compose(g, f)
    with pytest.raises(ShapeMismatch):
        compose(identity(3), identity(2))


def test_unit_legs_are_elided():
    f = from_rows([[1, 2], [3, 4]])
    assert kron(f, identity(1)) == f
    assert kron(identity(1), f) == f
    assert compose(f.with_legs((1, 2), (2, 1)), f) == compose(f, f)


def test_kron_index_convention():
    assert kron(identity(2), identity(3)) == identity((2, 3))
    f = from_rows([[1, 2], [3, 4]])
    g = from_rows([[0, 1], [1, 0]])
    k = kron(f, g)
    # (i_f, i_g), (j_f, j_g) -> f[i_f, j_f] * g[i_g, j_g]
    assert k[1 * 2 + 0, 0 * 2 + 1] == 3
    assert k[0 * 2 + 1, 1 * 2 + 0] == 2


def test_braid_relation():
    s, i = swap_map(2), identity(2)
    lhs = compose(kron(s, i), compose(kron(i, s), kron(s, i)))
    rhs = compose(kron(i, s), compose(kron(s, i), kron(i, s)))
    assert lhs == rhs


def test_inverse():
    p = from_rows([[0, 1], [1, 0]])
    assert inverse(p) == p
    assert inverse(identity(3)) == identity(3)
    with pytest.raises(Singular):
        inverse(from_rows([[1, 1], [1, 1]]))
    q = from_rows([["1/2", 1], [0, 3]])
    assert compose(inverse(q), q) == identity(2)
    assert compose(q, inverse(q)) == identity(2)


def test_swap_map():
    assert swap_map(1) == identity(1)
    s = swap_map(2)
    assert s[0, 0] == 1 and s[3, 3] == 1
    assert s[1, 2] == 1 and s[2, 1] == 1
    assert s[1, 1] == 0
    for n in range(1, 5):
        assert compose(swap_map(n), swap_map(n)) == identity((n, n))
    with pytest.raises(ShapeMismatch):
        swap_map(0)


def test_diff_reports_leg_indices():
    a = identity((2, 2))
    b = a.with_entry(3, 1, 5)
    (w,) = diff(b, a)
    assert w.row == (1, 1)
    assert w.col == (0, 1)
    assert w.lhs == 5 and w.rhs == 0
    assert diff(a, a) == ()


def test_random_associativity_and_interchange():
    rng = make_rng(7)
    for _ in range(100):
        a, b, c, d = (int(x) for x in rng.integers(1, 4, size=4))
        f = random_map(rng, (a,), (b,))
        g = random_map(rng, (b,), (c,))
        h = random_map(rng, (c,), (d,))
        assert compose(compose(h, g), f) == compose(h, compose(g, f))

        f2 = random_map(rng, (c,), (a,))
        g2 = random_map(rng, (a,), (d,))
        assert kron(compose(g, f), compose(g2, f2)) == compose(kron(g, g2), kron(f, f2))


def test_random_inverse():
    rng = make_rng(11)
    for n in (1, 2, 3, 4):
        p, p_inv = random_invertible(rng, n)
        assert compose(p_inv, p) == identity(n)
        assert compose(p, p_inv) == identity(n)


def test_linear_map_is_immutable():
    f = identity(2)
    with pytest.raises(ValueError):
        f.entries[0, 0] = Fraction(3)
    g = f.with_entry(0, 0, 3)
    assert f[0, 0] == 1 and g[0, 0] == 3


def test_pivot_columns_and_rows():
    f = from_rows([[1, 2, 3], [2, 4, 6], [0, 0, 1]])
    assert pivot_columns(f) == (0, 2)
    assert pivot_rows(f) == (0, 2)
    assert pivot_columns(identity(3)) == (0, 1, 2)
    assert pivot_columns(zeros((2,), (2,))) == ()
