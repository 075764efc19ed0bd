"""Concrete representations ``(G, M) -> (SL2, V)`` and elementary characters.

A :class:`Rep` is a sample point of the representation variety: one matrix per
generator and one decoration vector per orbit representative.  Evaluating
characters on sampled reps is the identity-testing oracle for everything else
in the package.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, List, Optional, Sequence

from .fields import Field, check_sampling_field
from .groupact import GAPresentation, MarkedPoint, UnsupportedError, Word, format_word
from .linalg2 import Mat2, Vec2, omega, sample_sl2, sample_vec


@dataclass(frozen=True)
class Violation:
    kind: str  # "det", "relator" or "stabilizer"
    index: int
    word: Optional[Word]
    detail: str

    def __str__(self):
        return self.detail


@dataclass(frozen=True, eq=False)
class Rep:
    presentation: GAPresentation
    gen_mats: tuple
    decorations: tuple
    field: object

    def __post_init__(self):
        object.__setattr__(self, "gen_mats", tuple(self.gen_mats))
        object.__setattr__(self, "decorations", tuple(self.decorations))
        if len(self.gen_mats) != self.presentation.m:
            raise ValueError(
                f"expected {self.presentation.m} matrices, got {len(self.gen_mats)}"
            )
        if len(self.decorations) != self.presentation.n:
            raise ValueError(
                f"expected {self.presentation.n} decorations, got {len(self.decorations)}"
            )
        object.__setattr__(self, "_cache", {})

    def letter(self, x: int) -> Mat2:
        A = self.gen_mats[abs(x) - 1]
        # inverse of an SL2 matrix is its adjoint; validate() flags det != 1
        return A if x > 0 else A.iota()

    def conjugate(self, a: Mat2) -> "Rep":
        """``a . rho``: matrices conjugated by ``a``, decorations moved by ``a``."""
        a_inv = a.inverse()
        return Rep(
            self.presentation,
            [a @ g @ a_inv for g in self.gen_mats],
            [a @ v for v in self.decorations],
            self.field,
        )

    def to_json(self) -> dict:
        return {
            "matrices": [[[str(x) for x in row] for row in g.rows()] for g in self.gen_mats],
            "decorations": [[str(v.x), str(v.y)] for v in self.decorations],
        }


def eval_word(r: Rep, w: Word) -> Mat2:
    cache = r._cache
    hit = cache.get(w.letters)
    if hit is not None:
        return hit
    if not w.letters:
        out = Mat2.identity(r.field)
    else:
        out = eval_word(r, Word(w.letters[:-1])) @ r.letter(w.letters[-1])
    if len(cache) < 50_000:
        cache[w.letters] = out
    return out


def decoration(r: Rep, p: MarkedPoint) -> Vec2:
    return eval_word(r, p.prefix) @ r.decorations[p.orbit - 1]


def chi_loop(r: Rep, w: Word):
    return eval_word(r, w).trace()


def chi_arc(r: Rep, p: MarkedPoint, q: MarkedPoint):
    return omega(decoration(r, p), decoration(r, q))


def validate(r: Rep) -> List[Violation]:
    """Every violated defining relation of the representation variety."""
    out: List[Violation] = []
    pres = r.presentation
    for i, g in enumerate(r.gen_mats, start=1):
        if g.det() != 1:
            out.append(Violation("det", i, None, f"det(rho(g{i})) = {g.det()} != 1"))
    ident = Mat2.identity(r.field)
    for i, w in enumerate(pres.relators, start=1):
        if eval_word(r, w) != ident:
            out.append(
                Violation("relator", i, w, f"relator {format_word(w)} does not evaluate to Id")
            )
    for j, stabs in enumerate(pres.stabilizers, start=1):
        d = r.decorations[j - 1]
        for s in stabs:
            if eval_word(r, s) @ d != d:
                out.append(
                    Violation(
                        "stabilizer",
                        j,
                        s,
                        f"stabilizer {format_word(s)} of orbit p{j} moves its decoration",
                    )
                )
    return out


def sample_free_rep(pres: GAPresentation, rng: random.Random, field: Field) -> Rep:
    check_sampling_field(field)
    mats = [sample_sl2(rng, field) for _ in range(pres.m)]
    vecs = [sample_vec(rng, field) for _ in range(pres.n)]
    return Rep(pres, mats, vecs, field)


def sample_rep(
    pres: GAPresentation,
    rng: random.Random,
    field: Field,
    library: Optional[Sequence[Rep]] = None,
) -> Rep:
    """Free case: independent SL2 samples and uniform decorations.
    Otherwise: a draw from the user-provided library."""
    if pres.free:
        return sample_free_rep(pres, rng, field)
    if not library:
        raise UnsupportedError(
            "non-free presentation: supply representations (--reps) for the oracle"
        )
    return library[rng.randrange(len(library))]


def generic_rep(pres: GAPresentation):
    """The rep with indeterminate entries over a Laurent ring (free case only)."""
    from .symbolic import LaurentRing

    if not pres.free:
        raise UnsupportedError("generic evaluation needs a free presentation")
    names = []
    for i in range(1, pres.m + 1):
        names += [f"a{i}", f"b{i}", f"c{i}"]
    for j in range(1, pres.n + 1):
        names += [f"x{j}", f"y{j}"]
    ring = LaurentRing(names)
    mats = []
    for i in range(pres.m):
        a, b, c = ring.var(3 * i), ring.var(3 * i + 1), ring.var(3 * i + 2)
        mats.append(Mat2(a, b, c, (ring.one + b * c) * ring.var(3 * i, -1)))
    base = 3 * pres.m
    vecs = [Vec2(ring.var(base + 2 * j), ring.var(base + 2 * j + 1)) for j in range(pres.n)]
    return Rep(pres, mats, vecs, ring)


def rep_from_json(data: dict, pres: GAPresentation, field: Field) -> Rep:
    mats = [Mat2.from_rows(rows, field) for rows in data.get("matrices", [])]
    vecs = [Vec2(field(x), field(y)) for x, y in data.get("decorations", [])]
    return Rep(pres, mats, vecs, field)


def load_reps(path, pres: GAPresentation, field: Field) -> List[Rep]:
    """Load one representation object or a list of them."""
    data = json.loads(Path(path).read_text())
    items = data if isinstance(data, list) else data.get("representations", [data])
    return [rep_from_json(item, pres, field) for item in items]


RepSampler = Callable[[random.Random], Rep]
