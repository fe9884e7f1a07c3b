"""
テスト・監査用の乱択。すべて numpy.random.Generator を受け取り、seed で再現できる。
成分は {-2, ..., 2} の整数（有理数として扱う）。
"""

from __future__ import annotations
from fractions import Fraction
from math import prod
from typing import Sequence

import numpy as np

from .algebra import FrobeniusStructure
from .errors import Singular
from .exact_core import LinearMap, compose, identity, inverse, kron
from .representations import ModuleAction, direct_sum

ENTRY_RANGE = (-2, 2)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_map(rng: np.random.Generator, dom: Sequence[int], cod: Sequence[int]) -> LinearMap:
    lo, hi = ENTRY_RANGE
    arr = rng.integers(lo, hi + 1, size=(prod(cod), prod(dom)))
    return LinearMap(arr.astype(object), tuple(dom), tuple(cod))


def random_invertible(rng: np.random.Generator, n: int, attempts: int = 64) -> tuple[LinearMap, LinearMap]:
    """(P, P^-1)。"""
    for _ in range(attempts):
        p = random_map(rng, (n,), (n,))
        try:
            return p, inverse(p)
        except Singular:
            continue
    raise Singular(f"no invertible {n}x{n} sample in {attempts} attempts")


def random_left_ideal(fs: FrobeniusStructure, rng: np.random.Generator) -> ModuleAction:
    """A·(e_j·r)。e_j は乱択の基底元、r は乱択の元。零因子を含むので自由でない加群も出る。"""
    n = fs.dim
    j = int(rng.integers(0, n))
    e_j = tuple(Fraction(int(i == j)) for i in range(n))
    r = random_map(rng, (1,), (n,)).column(0)
    return ModuleAction.left_ideal(fs, fs.algebra.product(e_j, r))


def random_module(fs: FrobeniusStructure, rng: np.random.Generator, max_dim: int = 4) -> ModuleAction:
    """
    左イデアルと自由加群 A⊗Q^k の直和を、乱択の可逆行列で共役したもの（次元 ≤ max_dim）。
    """
    n = fs.dim
    if n > max_dim:
        raise ValueError(f"{fs.algebra.name} has dim {n} > {max_dim}; no free module fits")
    ideal = random_left_ideal(fs, rng)
    # 零加群だけにはしない
    lo = 0 if ideal.carrier_dim else 1
    k = int(rng.integers(lo, (max_dim - ideal.carrier_dim) // n + 1))
    mod = direct_sum(ideal, ModuleAction.free(fs, k)) if k else ideal
    m = mod.carrier_dim
    p, p_inv = random_invertible(rng, m)
    action = compose(compose(p, mod.action), kron(identity(n), p_inv))
    return ModuleAction(fs, m, action)


def random_z2_representation(rng: np.random.Generator, dim: int) -> LinearMap:
    """T² = id を満たす dim 次の行列（P D P^-1、D は ±1 の対角）。"""
    p, p_inv = random_invertible(rng, dim)
    signs = rng.choice([-1, 1], size=dim)
    d = LinearMap(np.diag(signs).astype(object), (dim,), (dim,))
    return compose(compose(p, d), p_inv)
