"""Finitely generated group actions, words and marked points.

Letters are signed integers: ``k`` is the generator ``gk`` and ``-k`` its
inverse.  Words are always stored free-reduced.  Letters are ordered
``g1 < g1^-1 < g2 < g2^-1 < ...`` and words length-lexicographically, which
makes :func:`loop_canon` a genuine normal form for conjugacy-and-inversion
classes in a free group.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence


class UnsupportedError(RuntimeError):
    """The requested operation needs a free presentation (or a rep library)."""


class WordSyntaxError(ValueError):
    pass


class GenSym(NamedTuple):
    index: int
    inverse: bool

    @classmethod
    def from_letter(cls, letter: int) -> "GenSym":
        return cls(abs(letter), letter < 0)

    @property
    def letter(self) -> int:
        return -self.index if self.inverse else self.index

    def __str__(self):
        return f"g{self.index}^-1" if self.inverse else f"g{self.index}"


def _letter_key(letter: int) -> int:
    return 2 * abs(letter) - (letter > 0)


def reduce_letters(letters: Iterable[int]) -> tuple:
    out: list = []
    for x in letters:
        if x == 0:
            raise ValueError("0 is not a generator letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True, order=False)
class Word:
    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", reduce_letters(self.letters))

    @classmethod
    def gen(cls, i: int, power: int = 1) -> "Word":
        letter = i if power > 0 else -i
        return cls((letter,) * abs(power))

    @classmethod
    def parse(cls, text: str, names=None) -> "Word":
        return parse_word(text, names)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple(-x for x in reversed(self.letters)))

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def gensyms(self):
        return [GenSym.from_letter(x) for x in self.letters]

    def max_index(self) -> int:
        return max((abs(x) for x in self.letters), default=0)

    def sort_key(self):
        return (len(self.letters), tuple(_letter_key(x) for x in self.letters))

    def __lt__(self, other: "Word") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Word({format_word(self)!r})"


EMPTY = Word()

_TOKEN = re.compile(r"^([A-Za-z]+)(\d+)(?:\^(-?\d+))?$")


def parse_word(text: str, names=None) -> Word:
    """Parse whitespace-separated ``gK`` / ``gK^-1`` tokens; ``e`` is the empty word.

    ``names`` optionally maps token names (e.g. ``a1``) to generator indices;
    powers ``gK^n`` for any nonzero integer ``n`` are accepted.
    """
    tokens = text.split()
    if tokens in ([], ["e"], ["1"]):
        return EMPTY
    letters = []
    for tok in tokens:
        if tok == "e":
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise WordSyntaxError(f"bad generator token {tok!r} in {text!r}")
        base = m.group(1) + m.group(2)
        if names is not None:
            if base not in names:
                raise WordSyntaxError(f"unknown generator {base!r}")
            index = names[base]
        elif m.group(1) == "g":
            index = int(m.group(2))
            if index < 1:
                raise WordSyntaxError(f"generator index must be >= 1 in {tok!r}")
        else:
            raise WordSyntaxError(f"unknown generator {base!r}")
        power = int(m.group(3)) if m.group(3) is not None else 1
        if power == 0:
            continue
        letters.extend([index if power > 0 else -index] * abs(power))
    return Word(tuple(letters))


def format_word(w: Word, names=None) -> str:
    if not w.letters:
        return "e"
    inv = {v: k for k, v in names.items()} if names else None
    out = []
    for x in w.letters:
        base = inv[abs(x)] if inv else f"g{abs(x)}"
        out.append(base if x > 0 else f"{base}^-1")
    return " ".join(out)


def reduce(w) -> Word:
    """Free reduction; accepts a Word or any iterable of signed letters."""
    if isinstance(w, Word):
        return w
    return Word(tuple(w))


def cyclic_reduce(w: Word) -> Word:
    xs = list(w.letters)
    i, j = 0, len(xs) - 1
    while i < j and xs[i] == -xs[j]:
        i += 1
        j -= 1
    return Word(tuple(xs[i : j + 1]))


def _rotations(xs: tuple):
    for i in range(len(xs)):
        yield xs[i:] + xs[:i]


def loop_canon(w: Word, pres: "GAPresentation | None" = None) -> Word:
    """Least cyclic rotation of ``w`` or ``w^-1`` after cyclic reduction.

    Valid as a normal form only for free groups; with a non-free presentation
    this raises :class:`UnsupportedError`.
    """
    if pres is not None and not pres.free:
        raise UnsupportedError("loop canonical forms need a free presentation")
    c = cyclic_reduce(w)
    if not c.letters:
        return EMPTY
    candidates = list(_rotations(c.letters)) + list(_rotations(c.inverse().letters))
    best = min(candidates, key=lambda xs: tuple(_letter_key(x) for x in xs))
    return Word(best)


@dataclass(frozen=True)
class MarkedPoint:
    """The point ``prefix . p_orbit`` of the G-set (orbits are 1-based)."""

    prefix: Word
    orbit: int

    def sort_key(self):
        return (self.orbit,) + self.prefix.sort_key()

    def __lt__(self, other: "MarkedPoint") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return f"{format_word(self.prefix)}.p{self.orbit}"

    def __repr__(self):
        return f"MarkedPoint({self})"


def act(g: Word, p: MarkedPoint) -> MarkedPoint:
    return MarkedPoint(g * p.prefix, p.orbit)


def base_point(orbit: int) -> MarkedPoint:
    return MarkedPoint(EMPTY, orbit)


_POINT = re.compile(r"^(.*?)\s*\.\s*p(\d+)\s*$")


def parse_point(text: str, names=None) -> MarkedPoint:
    """Parse ``WORD . pJ`` (e.g. ``g1 g2^-1.p2`` or ``e.p1``)."""
    m = _POINT.match(text.strip())
    if not m:
        raise WordSyntaxError(f"bad marked point {text!r} (expected 'WORD.pJ')")
    word_text = m.group(1).strip() or "e"
    orbit = int(m.group(2))
    if orbit < 1:
        raise WordSyntaxError(f"orbit index must be >= 1 in {text!r}")
    return MarkedPoint(parse_word(word_text, names), orbit)


@dataclass(frozen=True)
class GAPresentation:
    """Generators ``g1..gm``, relator words, ``n`` orbit representatives and
    per-orbit stabilizer generators."""

    m: int
    n: int = 0
    relators: tuple = ()
    stabilizers: tuple = field(default=None)

    def __post_init__(self):
        stabs = self.stabilizers
        if stabs is None:
            stabs = tuple(() for _ in range(self.n))
        stabs = tuple(tuple(s) for s in stabs)
        if len(stabs) != self.n:
            raise ValueError(f"expected {self.n} stabilizer lists, got {len(stabs)}")
        object.__setattr__(self, "stabilizers", stabs)
        object.__setattr__(self, "relators", tuple(self.relators))
        for w in self.relators:
            if not w.letters:
                raise ValueError("relators must be nonempty words")
        for w in self.relators + tuple(x for s in stabs for x in s):
            if w.max_index() > self.m:
                raise ValueError(f"word {w} uses a generator beyond g{self.m}")

    @property
    def free(self) -> bool:
        return not self.relators and not any(self.stabilizers)

    def check_word(self, w: Word) -> None:
        if w.max_index() > self.m:
            raise ValueError(f"word {w} uses a generator beyond g{self.m}")

    def check_point(self, p: MarkedPoint) -> None:
        if not 1 <= p.orbit <= self.n:
            raise ValueError(f"orbit p{p.orbit} out of range 1..{self.n}")
        self.check_word(p.prefix)

    def to_json(self) -> dict:
        return {
            "generators": self.m,
            "relators": [format_word(w) for w in self.relators],
            "orbits": self.n,
            "stabilizers": [[format_word(w) for w in s] for s in self.stabilizers],
        }

    @classmethod
    def from_json(cls, data: dict) -> "GAPresentation":
        m = int(data["generators"])
        n = int(data.get("orbits", 0))
        relators = tuple(parse_word(t) for t in data.get("relators", []))
        stabs = data.get("stabilizers")
        if stabs is None:
            stabs = [[] for _ in range(n)]
        stabilizers = tuple(tuple(parse_word(t) for t in s) for s in stabs)
        return cls(m, n, relators, stabilizers)

    @classmethod
    def load(cls, path) -> "GAPresentation":
        return cls.from_json(json.loads(Path(path).read_text()))

    @classmethod
    def free_action(cls, m: int, n: int) -> "GAPresentation":
        return cls(m, n)


def random_word(rng, m: int, max_len: int, min_len: int = 0) -> Word:
    """A uniformly random reduced word of length in ``[min_len, max_len]``."""
    if m == 0:
        return EMPTY
    length = rng.randint(min_len, max_len)
    letters: list = []
    while len(letters) < length:
        x = rng.choice([i for i in range(1, m + 1)] + [-i for i in range(1, m + 1)])
        if letters and letters[-1] == -x:
            continue
        letters.append(x)
    return Word(tuple(letters))


def random_point(rng, pres: GAPresentation, max_len: int) -> MarkedPoint:
    return MarkedPoint(random_word(rng, pres.m, max_len), rng.randint(1, pres.n))


def words_up_to(m: int, max_len: int) -> Sequence[Word]:
    """All reduced words of length <= max_len, shortest first."""
    out = [EMPTY]
    frontier = [()]
    letters = [i for i in range(1, m + 1)] + [-i for i in range(1, m + 1)]
    for _ in range(max_len):
        nxt = []
        for xs in frontier:
            for x in letters:
                if xs and xs[-1] == -x:
                    continue
                nxt.append(xs + (x,))
        out.extend(Word(xs) for xs in nxt)
        frontier = nxt
    return out
