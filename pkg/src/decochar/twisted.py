"""Twisted characters for a central extension by explicit central letters.

The extended group has the base generators ``g1..gm`` followed by one
generator per central letter.  A twisted representation sends each central
letter ``z`` to ``s(z) * Id``; on characters this means ``[z g] = s(z) [g]``
and ``[z p, q] = s(z) [p, q]``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .charalg import ArcSym, CharAlgebra, CharPoly, LoopSym
from .groupact import GAPresentation, MarkedPoint, UnsupportedError, Word
from .linalg2 import Mat2
from .oracle import OracleConfig
from .rep import Rep, sample_free_rep


class ExtensionError(ValueError):
    pass


@dataclass(frozen=True)
class CentralLetter:
    name: str
    order: int  # 0 means infinite order
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ExtensionError(f"sign of {self.name} must be +1 or -1")
        if self.order < 0:
            raise ExtensionError(f"order of {self.name} must be >= 0")
        if self.sign == -1 and self.order % 2 == 1:
            # z^order = e forces s(z)^order = 1
            raise ExtensionError(
                f"{self.name} has odd order {self.order}; sign -1 is not a character"
            )


@dataclass(frozen=True)
class CentralExtSpec:
    base: GAPresentation
    central: Tuple[CentralLetter, ...]

    def __post_init__(self):
        object.__setattr__(self, "central", tuple(self.central))
        names = [z.name for z in self.central]
        if len(set(names)) != len(names):
            raise ExtensionError("central letter names must be distinct")

    @classmethod
    def from_json(cls, base: GAPresentation, data: dict) -> "CentralExtSpec":
        try:
            letters = [
                CentralLetter(str(z["name"]), int(z.get("order", 0)), int(z.get("sign", 1)))
                for z in data["central"]
            ]
        except (KeyError, TypeError) as exc:
            raise ExtensionError(f"bad extension spec: {exc}") from None
        return cls(base, letters)

    @classmethod
    def load(cls, base: GAPresentation, path) -> "CentralExtSpec":
        return cls.from_json(base, json.loads(Path(path).read_text()))

    @property
    def rank(self) -> int:
        return self.base.m + len(self.central)

    def presentation(self) -> GAPresentation:
        """The extended group as a free group; centrality is imposed by
        :func:`twist_normalize` and by the twisted sampler."""
        if not self.base.free:
            raise UnsupportedError("twisted characters need a free base presentation")
        return GAPresentation.free_action(self.rank, self.base.n)

    def index(self, name: str) -> int:
        for k, z in enumerate(self.central):
            if z.name == name:
                return self.base.m + k + 1
        raise ExtensionError(f"unknown central letter {name!r}")

    def letter(self, name: str) -> Word:
        return Word((self.index(name),))

    def names(self) -> Dict[str, int]:
        out = {f"g{i}": i for i in range(1, self.base.m + 1)}
        for z in self.central:
            out[z.name] = self.index(z.name)
        return out

    def with_signs(self, sign: int) -> "CentralExtSpec":
        return CentralExtSpec(self.base, [CentralLetter(z.name, z.order, sign) for z in self.central])

    def algebra(self) -> CharAlgebra:
        return CharAlgebra(self.presentation())


def strip_central(spec: CentralExtSpec, w: Word) -> Tuple[Word, int]:
    """Remove the central letters of ``w``; return the rest and the sign."""
    m = spec.base.m
    sign = 1
    exps = [0] * len(spec.central)
    rest = []
    for x in w.letters:
        if abs(x) > m:
            exps[abs(x) - m - 1] += 1 if x > 0 else -1
        else:
            rest.append(x)
    for z, e in zip(spec.central, exps):
        if z.order:
            e %= z.order
        if z.sign == -1 and e % 2:
            sign = -sign
    return Word(tuple(rest)), sign


def twist_normalize(f: CharPoly, spec: CentralExtSpec) -> CharPoly:
    """Move every central letter out of its symbol and into the coefficient."""
    alg = f.algebra
    out = alg.zero
    for mono, c in f.terms.items():
        term = alg.const(c)
        for s in mono:
            if isinstance(s, LoopSym):
                w, sign = strip_central(spec, s.word)
                term = term * alg.loop(w).scale(sign)
            else:
                pw, s1 = strip_central(spec, s.p.prefix)
                qw, s2 = strip_central(spec, s.q.prefix)
                term = term * alg.arc(MarkedPoint(pw, s.p.orbit), MarkedPoint(qw, s.q.orbit)).scale(s1 * s2)
        out = out + term
    return out


def sample_twisted_rep(spec: CentralExtSpec, rng: random.Random, field) -> Rep:
    """Free sample of the base, with each central letter sent to ``s(z) Id``.
    The base matrices and decorations are drawn exactly as an untwisted
    sample with the same generator would draw them."""
    pres = spec.presentation()
    base = sample_free_rep(spec.base, rng, field)
    mats = list(base.gen_mats) + [Mat2.scalar(field(z.sign), field) for z in spec.central]
    return Rep(pres, mats, base.decorations, field)


def twisted_config(spec: CentralExtSpec, cfg: Optional[OracleConfig] = None) -> OracleConfig:
    cfg = cfg or OracleConfig()
    return OracleConfig(cfg.field, cfg.samples, cfg.seed, None,
                        lambda rng: sample_twisted_rep(spec, rng, cfg.field))


def kernel_relations(spec: CentralExtSpec, alg: CharAlgebra, name: str, g: Word,
                     p: MarkedPoint, q: MarkedPoint) -> List[Tuple[str, CharPoly, CharPoly]]:
    """``[z g] = s(z)[g]`` and ``[z p, q] = s(z)[p, q]`` as literal pairs."""
    z = spec.letter(name)
    s = next(c.sign for c in spec.central if c.name == name)
    return [
        ("TW-LOOP", alg.loop(z * g), alg.loop(g).scale(s)),
        ("TW-ARC", alg.arc(MarkedPoint(z * p.prefix, p.orbit), q), alg.arc(p, q).scale(s)),
    ]
