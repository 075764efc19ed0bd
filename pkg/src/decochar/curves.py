"""Oriented loops and arcs on a marked surface with boundary, their character
polynomials, and the seven local rules for characters of curves.

Curves are homotopy data: a loop is a word in the fundamental-group
generators, an arc is a pair of lifted endpoints ``(word, marked component)``.
A smoothing site is given explicitly as a rotation of each loop word (the
crossing moved to the basepoint) and, for arcs, the endpoint at which the
crossing is resolved.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .charalg import CharAlgebra, CharPoly, equal, generic_equal
from .groupact import EMPTY, GAPresentation, MarkedPoint, Word, WordSyntaxError, format_word, parse_word, random_word
from .oracle import OracleConfig, Verdict


class CurveError(ValueError):
    """Malformed curve data or smoothing site."""


@dataclass(frozen=True)
class SurfaceSpec:
    """A genus ``g`` surface with ``b >= 1`` boundary components and ``n``
    marked regions.  The fundamental group is free on
    ``a1, b1, ..., ag, bg, c1, ..., c_{b-1}``."""

    genus: int = 0
    boundary: int = 1
    marked: int = 0

    def __post_init__(self):
        if self.genus < 0 or self.marked < 0:
            raise CurveError("genus and marked count must be non-negative")
        if self.boundary < 1:
            raise CurveError("only surfaces with boundary (b >= 1) have free fundamental group")

    @property
    def rank(self) -> int:
        return 2 * self.genus + self.boundary - 1

    @property
    def names(self) -> Dict[str, int]:
        out: Dict[str, int] = {}
        for i in range(1, self.genus + 1):
            out[f"a{i}"] = 2 * i - 1
            out[f"b{i}"] = 2 * i
        for k in range(1, self.boundary):
            out[f"c{k}"] = 2 * self.genus + k
        # g1.. also accepted
        for i in range(1, self.rank + 1):
            out[f"g{i}"] = i
        return out

    def presentation(self) -> GAPresentation:
        return GAPresentation.free_action(self.rank, self.marked)

    def parse(self, text: str) -> Word:
        return parse_word(text, self.names)

    def show(self, w: Word) -> str:
        names = {k: v for k, v in self.names.items() if not k.startswith("g")}
        return format_word(w, names or None)


@dataclass(frozen=True)
class Loop:
    word: Word


@dataclass(frozen=True)
class Arc:
    source: MarkedPoint
    target: MarkedPoint

    def reversed(self) -> "Arc":
        return Arc(self.target, self.source)


CurveSpec = Union[Loop, Arc]


@dataclass
class CurveCollection:
    surface: SurfaceSpec
    curves: List[CurveSpec] = field(default_factory=list)

    def __add__(self, other: "CurveCollection") -> "CurveCollection":
        if other.surface != self.surface:
            raise CurveError("collections live on different surfaces")
        return CurveCollection(self.surface, self.curves + other.curves)

    @classmethod
    def from_json(cls, data: dict) -> "CurveCollection":
        surface = SurfaceSpec(int(data.get("genus", 0)), int(data.get("boundary", 1)),
                              int(data.get("marked", 0)))
        curves: List[CurveSpec] = []
        for k, item in enumerate(data.get("curves", [])):
            try:
                if "loop" in item:
                    curves.append(Loop(surface.parse(item["loop"])))
                elif "arc" in item:
                    a = item["arc"]
                    curves.append(Arc(_point(surface, a["from"]), _point(surface, a["to"])))
                else:
                    raise CurveError("expected a 'loop' or 'arc' entry")
            except (KeyError, TypeError, WordSyntaxError, CurveError) as exc:
                raise CurveError(f"curve {k}: {exc}") from None
        coll = cls(surface, curves)
        coll.validate()
        return coll

    @classmethod
    def load(cls, path) -> "CurveCollection":
        return cls.from_json(json.loads(Path(path).read_text()))

    def validate(self) -> None:
        for c in self.curves:
            if isinstance(c, Arc):
                for p in (c.source, c.target):
                    if not 1 <= p.orbit <= self.surface.marked:
                        raise CurveError(
                            f"arc endpoint references marked component {p.orbit}, "
                            f"surface has {self.surface.marked}"
                        )


def _point(surface: SurfaceSpec, data) -> MarkedPoint:
    word, orbit = data
    return MarkedPoint(surface.parse(str(word)), int(orbit))


def curve_char(alg: CharAlgebra, c: CurveSpec) -> CharPoly:
    if isinstance(c, Loop):
        return alg.loop(c.word)
    return alg.arc(c.source, c.target)


def to_char(coll: CurveCollection, alg: Optional[CharAlgebra] = None) -> CharPoly:
    """Product of the characters of the curves in the collection."""
    coll.validate()
    alg = alg or CharAlgebra(coll.surface.presentation())
    return alg.product(curve_char(alg, c) for c in coll.curves)


# --- graphical rules -------------------------------------------------------------


def rotate(w: Word, i: int) -> Word:
    """The loop word read from position ``i`` (a conjugate of ``w``)."""
    xs = w.letters
    if not xs:
        return w
    if not 0 <= i < len(xs):
        raise CurveError(f"site position {i} outside loop of length {len(xs)}")
    return Word(xs[i:] + xs[:i])


def _moved(g: Word, p: MarkedPoint) -> MarkedPoint:
    return MarkedPoint(g * p.prefix, p.orbit)


RULE_NAMES = {
    1: "contractible loop",
    2: "contractible arc",
    3: "loop reversal",
    4: "arc reversal",
    5: "loop-loop smoothing",
    6: "loop-arc smoothing",
    7: "arc-arc smoothing",
}


def graphical_rule(alg: CharAlgebra, rule: int, *args) -> Tuple[CharPoly, CharPoly]:
    """``(lhs, rhs)`` for one local rule at an explicit site.

    1. ``(u,)``: the loop ``u u^-1`` is ``2``.
    2. ``(p,)``: the arc from ``p`` to itself is ``0``.
    3. ``(g,)``: ``[g] = [g^-1]``.
    4. ``(p, q)``: ``[p,q] = -[q,p]``.
    5. ``(g, i, h, j)``: loops crossing at positions ``i`` of ``g`` and
       ``j`` of ``h``; with ``g', h'`` the rotated words,
       ``[g][h] = [g'h'] + [g'^-1 h']``.
    6. ``(g, i, p, q, end)``: loop ``g`` crossing arc ``(p,q)`` next to the
       endpoint ``end`` (``"source"`` or ``"target"``); with ``k`` the
       rotated loop carried to that endpoint,
       ``[g][p,q] = [kp,q] + [k^-1 p,q]`` (resp. ``[p,kq] + [p,k^-1 q]``).
    7. ``(p, q, p2, q2)``: ``[p,q][p2,q2] = [p,q2][p2,q] + [p,p2][q,q2]``.
    """
    if rule == 1:
        (u,) = args
        return alg.loop(u * u.inverse()), alg.const(2)
    if rule == 2:
        (p,) = args
        return alg.arc(p, p), alg.zero
    if rule == 3:
        (g,) = args
        return alg.loop(g), alg.loop(g.inverse())
    if rule == 4:
        p, q = args
        return alg.arc(p, q), -alg.arc(q, p)
    if rule == 5:
        g, i, h, j = args
        g2, h2 = rotate(g, i), rotate(h, j)
        return alg.loop(g) * alg.loop(h), alg.loop(g2 * h2) + alg.loop(g2.inverse() * h2)
    if rule == 6:
        g, i, p, q, end = args
        if end not in ("source", "target"):
            raise CurveError(f"arc end must be 'source' or 'target', got {end!r}")
        base = p if end == "source" else q
        k = base.prefix * rotate(g, i) * base.prefix.inverse()
        lhs = alg.loop(g) * alg.arc(p, q)
        if end == "source":
            return lhs, alg.arc(_moved(k, p), q) + alg.arc(_moved(k.inverse(), p), q)
        return lhs, alg.arc(p, _moved(k, q)) + alg.arc(p, _moved(k.inverse(), q))
    if rule == 7:
        p, q, p2, q2 = args
        lhs = alg.arc(p, q) * alg.arc(p2, q2)
        return lhs, alg.arc(p, q2) * alg.arc(p2, q) + alg.arc(p, p2) * alg.arc(q, q2)
    raise CurveError(f"unknown graphical rule {rule!r} (expected 1..7)")


def random_site(rule: int, rng: random.Random, surface: SurfaceSpec, max_len: int = 5) -> tuple:
    m, n = surface.rank, surface.marked

    def word(min_len=0):
        return random_word(rng, m, max_len, min_len=min_len if m else 0)

    def point():
        if n == 0:
            raise CurveError("arc rules need at least one marked component")
        return MarkedPoint(word(), rng.randint(1, n))

    if rule == 1:
        return (word(),)
    if rule == 2:
        return (point(),)
    if rule == 3:
        return (word(),)
    if rule == 4:
        return (point(), point())
    if rule == 5:
        g, h = word(1), word(1)
        return (g, rng.randrange(max(len(g), 1)), h, rng.randrange(max(len(h), 1)))
    if rule == 6:
        g = word(1)
        return (g, rng.randrange(max(len(g), 1)), point(), point(), rng.choice(["source", "target"]))
    if rule == 7:
        return (point(), point(), point(), point())
    raise CurveError(f"unknown graphical rule {rule!r} (expected 1..7)")


def verify_rule(surface: SurfaceSpec, rule: int, args: tuple,
                cfg: Optional[OracleConfig] = None) -> Verdict:
    """Oracle check of one rule instance.  Symbols are kept verbatim so both
    sides are evaluated as written, without canonical forms doing the work."""
    alg = CharAlgebra(surface.presentation(), canonical=False)
    lhs, rhs = graphical_rule(alg, rule, *args)
    return equal(lhs, rhs, cfg)


def verify_rule_generic(surface: SurfaceSpec, rule: int, args: tuple) -> bool:
    alg = CharAlgebra(surface.presentation(), canonical=False)
    lhs, rhs = graphical_rule(alg, rule, *args)
    return generic_equal(lhs, rhs)
