"""よく使う多元環と余単位の見本。"""

from __future__ import annotations
from fractions import Fraction
from functools import lru_cache

from .algebra import Algebra

Z, O = Fraction(0), Fraction(1)


@lru_cache(maxsize=None)
def ground() -> Algebra:
    """体 Q 自身（1 次元、e·e = e）。"""
    return Algebra(name="Q", basis=("1",), mul=(((O,),),), unit=(O,))


def dual_numbers() -> Algebra:
    # basis (1, x), x² = 0
    mul = (
        ((O, Z), (Z, O)),
        ((Z, O), (Z, Z)),
    )
    return Algebra(name="dual_numbers", basis=("1", "x"), mul=mul, unit=(O, Z))


def group_algebra_z2() -> Algebra:
    # basis (1, t), t² = 1
    mul = (
        ((O, Z), (Z, O)),
        ((Z, O), (O, Z)),
    )
    return Algebra(name="group_z2", basis=("1", "t"), mul=mul, unit=(O, Z))


def matrix_algebra(n: int = 2) -> Algebra:
    """M_n(Q)。基底 E_ij は i*n + j 番目。"""
    d = n * n
    basis = tuple(f"E{i + 1}{j + 1}" for i in range(n) for j in range(n))
    mul = []
    for a in range(d):
        i, j = divmod(a, n)
        row = []
        for b in range(d):
            k, l = divmod(b, n)
            v = [Z] * d
            if j == k:
                v[i * n + l] = O
            row.append(tuple(v))
        mul.append(tuple(row))
    unit = tuple(O if a // n == a % n else Z for a in range(d))
    name = "mat2" if n == 2 else f"mat{n}"
    return Algebra(name=name, basis=basis, mul=tuple(mul), unit=unit)


def trace_counit(n: int = 2) -> tuple[Fraction, ...]:
    return tuple(O if a // n == a % n else Z for a in range(n * n))


def twisted_counit(n: int = 2) -> tuple[Fraction, ...]:
    """ε(X) = tr(X·P)、P は対角と (0, 1) 成分が 1 の上三角。対称でない Frobenius 形式。"""
    p = [[O if i == j or (i, j) == (0, 1) else Z for j in range(n)] for i in range(n)]
    # tr(E_ij P) = P[j][i]
    return tuple(p[a % n][a // n] for a in range(n * n))
