"""
コボルディズム語の DSL と、その Frobenius 構造による評価。

    word  := slice ('|' slice)*
    slice := gen+
    gen   := 'u' | 'c' | 'm' | 'd' | 'i' | 's'

テキストの左から右 = 時間の下から上 = 行列の右から左。
スライス内は左から kron（exact_core の規約どおり左が major）。

例: 2 次元の A で "i m" は入力 3 本、(a, b, c) の平坦化添字 a*4 + b*2 + c を
a ⊗ (b·c) の添字 a*2 + (b·c) に送る。
"""

from __future__ import annotations
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .algebra import FrobeniusStructure, counit_map, is_commutative, mult_map, unit_map
from .errors import NotCommutative, StrandMismatch, WordSyntaxError
from .exact_core import LinearMap, compose, identity, swap_map, tensor

from logging import getLogger

logger = getLogger(__name__)


class Generator(str, Enum):
    UNIT = "u"
    COUNIT = "c"
    MULT = "m"
    COMULT = "d"
    IDENTITY = "i"
    SWAP = "s"

    @property
    def arity(self) -> tuple[int, int]:
        return _ARITY[self]


_ARITY = {
    Generator.UNIT: (0, 1),
    Generator.COUNIT: (1, 0),
    Generator.MULT: (2, 1),
    Generator.COMULT: (1, 2),
    Generator.IDENTITY: (1, 1),
    Generator.SWAP: (2, 2),
}


@dataclass(frozen=True)
class Slice:
    gens: tuple[Generator, ...]

    @property
    def in_strands(self) -> int:
        return sum(g.arity[0] for g in self.gens)

    @property
    def out_strands(self) -> int:
        return sum(g.arity[1] for g in self.gens)


@dataclass(frozen=True)
class DiagramWord:
    slices: tuple[Slice, ...]

    @property
    def in_strands(self) -> int:
        return self.slices[0].in_strands

    @property
    def out_strands(self) -> int:
        return self.slices[-1].out_strands

    def __str__(self) -> str:
        return " | ".join(" ".join(g.value for g in s.gens) for s in self.slices)


def _tokenize(text: str) -> list[list[tuple[Generator, int]]]:
    slices: list[list[tuple[Generator, int]]] = [[]]
    bar_pos = 0
    for pos, ch in enumerate(text):
        if ch.isspace():
            continue
        if ch == "|":
            if not slices[-1]:
                raise WordSyntaxError("empty slice before '|'", pos)
            slices.append([])
            bar_pos = pos
            continue
        try:
            slices[-1].append((Generator(ch), pos))
        except ValueError:
            raise WordSyntaxError(f"unexpected character {ch!r}", pos) from None
    if not slices[-1]:
        raise WordSyntaxError("empty slice at end of word" if len(slices) > 1 else "empty word",
                              bar_pos if len(slices) > 1 else len(text))
    return slices


def parse_word(text: str) -> DiagramWord:
    raw = _tokenize(text)
    slices = tuple(Slice(tuple(g for g, _ in s)) for s in raw)
    for k in range(1, len(slices)):
        arriving = slices[k - 1].out_strands
        needed = slices[k].in_strands
        if arriving != needed:
            # スライス番号は 1 始まり
            raise StrandMismatch(k + 1, arriving, needed)
    return DiagramWord(slices)


def generator_map(fs: FrobeniusStructure, gen: Generator) -> LinearMap:
    n = fs.dim
    if gen is Generator.UNIT:
        return unit_map(fs.algebra)
    if gen is Generator.COUNIT:
        return counit_map(fs)
    if gen is Generator.MULT:
        return mult_map(fs.algebra)
    if gen is Generator.COMULT:
        return fs.comult
    if gen is Generator.IDENTITY:
        return identity(n)
    return swap_map(n)


def evaluate_word(fs: FrobeniusStructure, word: DiagramWord) -> LinearMap:
    n = fs.dim
    result = identity((1,) if word.in_strands == 0 else (n,) * word.in_strands)
    for s in word.slices:
        result = compose(tensor(*(generator_map(fs, g) for g in s.gens)), result)
    dom = (n,) * word.in_strands or (1,)
    cod = (n,) * word.out_strands or (1,)
    return result.with_legs(dom, cod)


def evaluate_text(fs: FrobeniusStructure, text: str) -> LinearMap:
    return evaluate_word(fs, parse_word(text))


def handle_operator(fs: FrobeniusStructure) -> LinearMap:
    return evaluate_text(fs, "d | m")


def genus_word(genus: int) -> str:
    if genus < 0:
        raise ValueError(f"genus must be >= 0, got {genus}")
    return " | ".join(["u"] + ["d | m"] * genus + ["c"])


def surface_invariant(fs: FrobeniusStructure, genus: int) -> Fraction:
    """Z(Σ_g) = ε(H^g(1))。"""
    if genus < 0:
        raise ValueError(f"genus must be >= 0, got {genus}")
    if not is_commutative(fs.algebra):
        raise NotCommutative(f"algebra is not commutative: {fs.algebra.name}")
    h = handle_operator(fs)
    v = unit_map(fs.algebra)
    for _ in range(genus):
        v = compose(h, v)
    value = compose(counit_map(fs), v)[0, 0]
    logger.info(f"{fs.algebra.name}: Z(genus {genus}) = {value}")
    return value
