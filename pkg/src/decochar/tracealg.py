"""Trace words, mixed invariants and mixed concomitants.

A word is a tuple of letters; the letter alphabet is pluggable.  The mixed
alphabet on ``End(V)^m + V^n`` has

* ``("X", i)``   the coordinate function ``X_i``,
* ``("Xi", i)``  its adjoint ``X_i^iota``,
* ``("T", j, k)`` the outer product function ``Th(j,k) = v_j v_k^perp``.

:class:`InvExpr` is a polynomial in trace symbols ``tr(word)`` (keyed by the
least cyclic rotation of the word); :class:`ConExpr` is an ``InvExpr``-linear
combination of words, the empty word being ``Id``.  Neither carries a normal
form beyond that; identities are verified by exact evaluation.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .groupact import GAPresentation
from .linalg2 import Mat2, Vec2, outer, sample_mat, sample_vec
from .oracle import OracleConfig, Verdict, compare

Letter = tuple
TraceWord = Tuple[Letter, ...]
InvMono = Tuple[TraceWord, ...]


class ShapeError(ValueError):
    """Arguments of the wrong shape for a relation schema or substitution."""


# --- alphabets ---------------------------------------------------------------


class Alphabet:
    """Letter-level behaviour: ordering, adjoint, evaluation, normalization."""

    name = "abstract"

    def key(self, letter: Letter):
        raise NotImplementedError

    def iota_letter(self, letter: Letter) -> Tuple[int, Letter]:
        raise NotImplementedError

    def matrix(self, point, letter: Letter) -> Mat2:
        raise NotImplementedError

    def degree(self, letter: Letter) -> int:
        return 1

    def vector_degree(self, letter: Letter) -> int:
        return 0

    def show(self, letter: Letter) -> str:
        return str(letter)

    def normalize(self, word: TraceWord) -> TraceWord:
        return tuple(word)

    def trace_key(self, word: TraceWord) -> TraceWord:
        """Least cyclic rotation; the empty word stays empty."""
        word = self.normalize(word)
        if not word:
            return ()
        keys = [self.key(x) for x in word]
        best = min(range(len(word)), key=lambda i: keys[i:] + keys[:i])
        return word[best:] + word[:best]


class MixedAlphabet(Alphabet):
    name = "mixed"

    def key(self, letter):
        kind = letter[0]
        if kind == "X":
            return (0, letter[1], 0)
        if kind == "Xi":
            return (0, letter[1], 1)
        if kind == "T":
            return (1, letter[1], letter[2])
        raise ShapeError(f"not a mixed letter: {letter!r}")

    def iota_letter(self, letter):
        kind = letter[0]
        if kind == "X":
            return 1, ("Xi", letter[1])
        if kind == "Xi":
            return 1, ("X", letter[1])
        # (v_j v_k^perp)^iota = -v_k v_j^perp
        return -1, ("T", letter[2], letter[1])

    def matrix(self, point, letter):
        kind = letter[0]
        if kind == "X":
            return point.mats[letter[1] - 1]
        if kind == "Xi":
            return point.mats[letter[1] - 1].iota()
        return outer(point.vecs[letter[1] - 1], point.vecs[letter[2] - 1])

    def degree(self, letter):
        return 2 if letter[0] == "T" else 1

    def vector_degree(self, letter):
        return 2 if letter[0] == "T" else 0

    def show(self, letter):
        if letter[0] == "T":
            return f"Th({letter[1]},{letter[2]})"
        return f"{letter[0]}({letter[1]})"


MIXED = MixedAlphabet()


def X(i: int) -> Letter:
    return ("X", i)


def Xi(i: int) -> Letter:
    return ("Xi", i)


def Th(j: int, k: int) -> Letter:
    return ("T", j, k)


@dataclass
class MixedPoint:
    """A point of ``End(V)^m + V^n``."""

    mats: Sequence[Mat2]
    vecs: Sequence[Vec2]
    field: object
    _cache: dict = dc_field(default_factory=dict, repr=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.mats)

    @property
    def n(self) -> int:
        return len(self.vecs)

    def conjugate(self, a: Mat2) -> "MixedPoint":
        a_inv = a.inverse()
        return MixedPoint([a @ x @ a_inv for x in self.mats], [a @ v for v in self.vecs],
                          self.field)

    def to_json(self) -> dict:
        return {
            "matrices": [[[str(x) for x in row] for row in g.rows()] for g in self.mats],
            "decorations": [[str(v.x), str(v.y)] for v in self.vecs],
        }


def sample_point(m: int, n: int, rng: random.Random, field) -> MixedPoint:
    """Uniform point of ``End(V)^m + V^n`` (matrices need not be invertible)."""
    return MixedPoint([sample_mat(rng, field) for _ in range(m)],
                      [sample_vec(rng, field) for _ in range(n)], field)


def word_matrix(alpha: Alphabet, point, word: TraceWord) -> Mat2:
    cache = getattr(point, "_cache", None)
    key = (alpha.name, word)
    if cache is not None and key in cache:
        return cache[key]
    if not word:
        out = Mat2.identity(point.field)
    else:
        out = word_matrix(alpha, point, word[:-1]) @ alpha.matrix(point, word[-1])
    if cache is not None and len(cache) < 50_000:
        cache[key] = out
    return out


def show_word(alpha: Alphabet, word: TraceWord) -> str:
    return "*".join(alpha.show(x) for x in word) if word else "Id"


# --- expressions ---------------------------------------------------------------


def _fraction(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class InvExpr:
    """Commutative polynomial in trace symbols over ``Q``."""

    __slots__ = ("alpha", "terms")

    def __init__(self, alpha: Alphabet, terms: Optional[Dict[InvMono, Fraction]] = None):
        self.alpha = alpha
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, alpha: Alphabet, c) -> "InvExpr":
        return cls(alpha, {(): _fraction(c)})

    @classmethod
    def trace(cls, alpha: Alphabet, word: Iterable[Letter]) -> "InvExpr":
        key = alpha.trace_key(tuple(word))
        if not key:
            return cls.const(alpha, 2)
        return cls(alpha, {(key,): Fraction(1)})

    def _lift(self, other):
        if isinstance(other, InvExpr):
            return other
        if isinstance(other, (int, Fraction)):
            return InvExpr.const(self.alpha, other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out.get(k, 0) + c
        return InvExpr(self.alpha, out)

    __radd__ = __add__

    def __neg__(self):
        return InvExpr(self.alpha, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ConExpr):
            return NotImplemented
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out: Dict[InvMono, Fraction] = {}
        key = lambda w: [self.alpha.key(x) for x in w]  # noqa: E731
        for k1, c1 in self.terms.items():
            for k2, c2 in o.terms.items():
                k = tuple(sorted(k1 + k2, key=lambda w: (len(w), key(w))))
                out[k] = out.get(k, 0) + c1 * c2
        return InvExpr(self.alpha, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max(
            (sum(self.alpha.degree(x) for w in k for x in w) for k in self.terms), default=0
        )

    def vector_degrees(self) -> set:
        return {sum(self.alpha.vector_degree(x) for w in k for x in w) for k in self.terms}

    @property
    def parity(self) -> Optional[int]:
        """Common parity of the degree in the vector variables (``None`` if mixed)."""
        ps = {d % 2 for d in self.vector_degrees()}
        return ps.pop() if len(ps) == 1 else (0 if not ps else None)

    def evaluate(self, point):
        f = point.field
        total = f.zero
        for k, c in self.terms.items():
            term = f(c)
            for w in k:
                term = term * word_matrix(self.alpha, point, w).trace()
            total = total + term
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, c in self.terms.items():
            body = "*".join(f"tr({show_word(self.alpha, w)})" for w in k)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts)

    __repr__ = __str__


class ConExpr:
    """``InvExpr``-linear combination of words; keys are ``(inv_monomial, word)``."""

    __slots__ = ("alpha", "terms")

    def __init__(self, alpha: Alphabet, terms: Optional[Dict[Tuple[InvMono, TraceWord], Fraction]] = None):
        self.alpha = alpha
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def word(cls, alpha: Alphabet, word: Iterable[Letter], coeff=1) -> "ConExpr":
        return cls(alpha, {((), alpha.normalize(tuple(word))): _fraction(coeff)})

    @classmethod
    def scalar(cls, inv) -> "ConExpr":
        """``inv * Id``."""
        if isinstance(inv, InvExpr):
            return cls(inv.alpha, {(k, ()): c for k, c in inv.terms.items()})
        raise TypeError("scalar() needs an InvExpr")

    @classmethod
    def identity(cls, alpha: Alphabet) -> "ConExpr":
        return cls(alpha, {((), ()): Fraction(1)})

    def _lift(self, other):
        if isinstance(other, ConExpr):
            return other
        if isinstance(other, InvExpr):
            return ConExpr.scalar(other)
        if isinstance(other, (int, Fraction)):
            return ConExpr(self.alpha, {((), ()): _fraction(other)})
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out.get(k, 0) + c
        return ConExpr(self.alpha, out)

    __radd__ = __add__

    def __neg__(self):
        return ConExpr(self.alpha, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out: Dict = {}
        for (i1, w1), c1 in self.terms.items():
            for (i2, w2), c2 in o.terms.items():
                inv = (InvExpr(self.alpha, {i1: Fraction(1)}) * InvExpr(self.alpha, {i2: Fraction(1)}))
                (ik,) = inv.terms
                k = (ik, self.alpha.normalize(w1 + w2))
                out[k] = out.get(k, 0) + c1 * c2
        return ConExpr(self.alpha, out)

    def __rmul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o * self

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def iota(self) -> "ConExpr":
        out: Dict = {}
        for (inv, w), c in self.terms.items():
            sign, wi = iota_letters(self.alpha, w)
            k = (inv, self.alpha.normalize(wi))
            out[k] = out.get(k, 0) + sign * c
        return ConExpr(self.alpha, out)

    def tr(self) -> InvExpr:
        out = InvExpr(self.alpha)
        for (inv, w), c in self.terms.items():
            out = out + InvExpr(self.alpha, {inv: c}) * InvExpr.trace(self.alpha, w)
        return out

    def degree(self) -> int:
        return max(
            (
                sum(self.alpha.degree(x) for t in inv for x in t)
                + sum(self.alpha.degree(x) for x in w)
                for (inv, w) in self.terms
            ),
            default=0,
        )

    def vector_degrees(self) -> set:
        vd = self.alpha.vector_degree
        return {
            sum(vd(x) for t in inv for x in t) + sum(vd(x) for x in w) for (inv, w) in self.terms
        }

    @property
    def parity(self) -> Optional[int]:
        ps = {d % 2 for d in self.vector_degrees()}
        return ps.pop() if len(ps) == 1 else (0 if not ps else None)

    def evaluate(self, point) -> Mat2:
        f = point.field
        total = Mat2.zero(f)
        for (inv, w), c in self.terms.items():
            s = f(c)
            for t in inv:
                s = s * word_matrix(self.alpha, point, t).trace()
            total = total + word_matrix(self.alpha, point, w).scale(s)
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (inv, w), c in self.terms.items():
            bits = [f"tr({show_word(self.alpha, t)})" for t in inv]
            if w or not bits:
                bits.append(show_word(self.alpha, w))
            body = "*".join(bits)
            parts.append(body if c == 1 else f"{c}*{body}")
        return " + ".join(parts)

    __repr__ = __str__


def iota_letters(alpha: Alphabet, word: TraceWord) -> Tuple[int, TraceWord]:
    sign = 1
    out = []
    for x in reversed(word):
        s, y = alpha.iota_letter(x)
        sign *= s
        out.append(y)
    return sign, tuple(out)


def iota_word(word: TraceWord, alpha: Alphabet = MIXED) -> ConExpr:
    sign, w = iota_letters(alpha, tuple(word))
    return ConExpr.word(alpha, w, sign)


def tr_word(word: TraceWord, alpha: Alphabet = MIXED) -> InvExpr:
    return InvExpr.trace(alpha, word)


def W(*letters, alpha: Alphabet = MIXED) -> ConExpr:
    """Convenience constructor: the word made of ``letters`` (or ``Id``)."""
    return ConExpr.word(alpha, letters)


def tr(e) -> InvExpr:
    if isinstance(e, ConExpr):
        return e.tr()
    return InvExpr.trace(MIXED, tuple(e))


def eval_con(e: ConExpr, point) -> Mat2:
    _check_point(e, point)
    return e.evaluate(point)


def eval_inv(e: InvExpr, point):
    _check_point(e, point)
    return e.evaluate(point)


def _letters(e) -> Iterable[Letter]:
    if isinstance(e, InvExpr):
        for k in e.terms:
            for w in k:
                yield from w
    else:
        for inv, w in e.terms:
            for t in inv:
                yield from t
            yield from w


def arity(e) -> Tuple[int, int]:
    """Smallest ``(m, n)`` a mixed expression can be evaluated on."""
    m = n = 0
    for x in _letters(e):
        if x[0] == "T":
            n = max(n, x[1], x[2])
        else:
            m = max(m, x[1])
    return m, n


def _check_point(e, point) -> None:
    if e.alpha is not MIXED:
        return
    m, n = arity(e)
    if m > point.m or n > point.n:
        raise ShapeError(f"expression needs (m, n) >= ({m}, {n}); point has ({point.m}, {point.n})")


# --- the nu substitution --------------------------------------------------------


def grid_index(m: int, n: int, j: int, k: int) -> int:
    return m + (j - 1) * n + k


def nu_letter(m: int, n: int, letter: Letter) -> Tuple[int, Letter]:
    if letter[0] == "T":
        raise ShapeError("nu acts on pure matrix words (no outer-product letters)")
    i = letter[1]
    if i > m + n * n:
        raise ShapeError(f"letter index {i} exceeds source arity m + n^2 = {m + n * n}")
    if i <= m:
        return 1, letter
    j, k = divmod(i - m - 1, n)
    j, k = j + 1, k + 1
    if letter[0] == "X":
        return 1, Th(j, k)
    return -1, Th(k, j)


def nu_substitute(e, m: int, n: int):
    """Send ``X(m + (j-1) n + k)`` to ``Th(j,k)`` (and its adjoint to ``-Th(k,j)``)."""

    def sub_word(w):
        sign = 1
        out = []
        for x in w:
            s, y = nu_letter(m, n, x)
            sign *= s
            out.append(y)
        return sign, tuple(out)

    def sub_inv(inv):
        expr = InvExpr.const(MIXED, 1)
        for t in inv:
            s, w = sub_word(t)
            expr = expr * InvExpr.trace(MIXED, w) * s
        return expr

    if isinstance(e, InvExpr):
        out = InvExpr(MIXED)
        for k, c in e.terms.items():
            out = out + sub_inv(k) * c
        return out
    out = ConExpr(MIXED)
    for (inv, w), c in e.terms.items():
        s, w2 = sub_word(w)
        out = out + ConExpr.scalar(sub_inv(inv)) * ConExpr.word(MIXED, w2, s * c)
    return out


def grid_point(point: MixedPoint) -> MixedPoint:
    """``(A_1..A_m, v_1..v_n)`` to ``(A_1..A_m, Th(v_j, v_k) for all j, k)``."""
    grid = [outer(vj, vk) for vj in point.vecs for vk in point.vecs]
    return MixedPoint(list(point.mats) + grid, [], point.field)


# --- relation schemas -----------------------------------------------------------


def _w(x) -> ConExpr:
    if isinstance(x, ConExpr):
        return x
    return ConExpr.word(MIXED, tuple(x))


def _tr(x) -> InvExpr:
    return _w(x).tr()


def schema_F(A, B, C) -> InvExpr:
    A, B, C = _w(A), _w(B), _w(C)
    lhs = _tr(A * B * C) + _tr(C * B * A) + _tr(A) * _tr(B) * _tr(C)
    rhs = _tr(B) * _tr(A * C) + _tr(A * B) * _tr(C) + _tr(A) * _tr(B * C)
    return lhs - rhs


def schema_G(A, B) -> ConExpr:
    A, B = _w(A), _w(B)
    return (A * B + B * A - _tr(A) * B - _tr(B) * A
            - ConExpr.scalar(_tr(A * B)) + ConExpr.scalar(_tr(A) * _tr(B)))


def schema_INV2(A, i: int, j: int) -> InvExpr:
    A = _w(A)
    return _tr(A * W(Th(i, j))) - _tr(A * W(Th(j, i))) + _tr(A) * _tr(W(Th(j, i)))


def schema_INV3(A, B, i: int, j: int, i2: int, j2: int) -> InvExpr:
    A, B = _w(A), _w(B)
    return _tr(A * W(Th(i, j)) * B * W(Th(i2, j2))) - _tr(A * W(Th(i, j2))) * _tr(B * W(Th(i2, j)))


def schema_CON1(A, B) -> ConExpr:
    A, B = _w(A), _w(B)
    S = A + A.iota()
    return S * B - B * S


def schema_CON1_TR(A, B) -> ConExpr:
    A, B = _w(A), _w(B)
    t = ConExpr.scalar(_tr(A))
    return t * B - B * t


def schema_CON_EQUIV(A) -> ConExpr:
    """The bridge between the two packagings: ``A + A^iota - tr(A) Id``."""
    A = _w(A)
    return A + A.iota() - ConExpr.scalar(_tr(A))


def schema_CON2(A, i: int, j: int, i2: int, j2: int) -> ConExpr:
    A = _w(A)
    return (W(Th(i, j)) * A * W(Th(i2, j2)) - A * W(Th(i2, j)) * W(Th(i, j2))
            + W(Th(j, i2)) * A.iota() * W(Th(i, j2)))


def schema_CON2_TR(A, i: int, j: int, i2: int, j2: int) -> ConExpr:
    A = _w(A)
    return W(Th(i, j)) * A * W(Th(i2, j2)) - ConExpr.scalar(_tr(A * W(Th(i2, j)))) * W(Th(i, j2))


def schema_PLUCKER(i: int, j: int, i2: int, j2: int) -> InvExpr:
    t = lambda a, b: _tr(W(Th(a, b)))  # noqa: E731
    return t(i, j) * t(i2, j2) - t(i, j2) * t(i2, j) - t(i, i2) * t(j, j2)


def schema_ANTISYM(i: int, j: int) -> InvExpr:
    return _tr(W(Th(i, j))) + _tr(W(Th(j, i)))


# Kernel generators of nu live on the source side: words in m + n^2 plain
# matrix letters, where the grid letter X(m + (j-1) n + k) stands for Th(j,k).


def _grid(m: int, n: int, j: int, k: int, adjoint: bool = False) -> ConExpr:
    i = grid_index(m, n, j, k)
    return W(Xi(i) if adjoint else X(i))


def schema_KER1(A, m: int, n: int, i: int, j: int) -> InvExpr:
    A = _w(A)
    return _tr(A * _grid(m, n, i, j)) + _tr(A * _grid(m, n, j, i, adjoint=True))


def schema_KER2(A, B, m: int, n: int, i: int, j: int, i2: int, j2: int) -> InvExpr:
    A, B = _w(A), _w(B)
    return (_tr(A * _grid(m, n, i, j) * B * _grid(m, n, i2, j2))
            - _tr(A * _grid(m, n, i, j2)) * _tr(B * _grid(m, n, i2, j)))


def schema_KERC1(m: int, n: int, i: int, j: int) -> ConExpr:
    return _grid(m, n, i, j) + _grid(m, n, j, i, adjoint=True)


def schema_KERC2(B, m: int, n: int, i: int, j: int, i2: int, j2: int) -> ConExpr:
    B = _w(B)
    return (_grid(m, n, i, j) * B * _grid(m, n, i2, j2)
            - ConExpr.scalar(_tr(B * _grid(m, n, i2, j))) * _grid(m, n, i, j2))


def schema_KERC2_ALT(B, m: int, n: int, i: int, j: int, i2: int, j2: int) -> ConExpr:
    B = _w(B)
    return (_grid(m, n, i, j) * B * _grid(m, n, i2, j2)
            - B * _grid(m, n, i2, j) * _grid(m, n, i, j2)
            - _grid(m, n, i2, j, adjoint=True) * B.iota() * _grid(m, n, i, j2))


@dataclass(frozen=True)
class Schema:
    name: str
    build: Callable
    # "mixed": evaluate at a point of End(V)^m + V^n;
    # "source": evaluate at the grid point (kernel generators of nu)
    side: str
    words: int  # how many word arguments
    indices: int  # how many orbit indices
    needs_vectors: bool = True
    description: str = ""


SCHEMAS: Dict[str, Schema] = {
    s.name: s
    for s in [
        Schema("F", schema_F, "mixed", 3, 0, False, "F-relation on traces of three words"),
        Schema("G", schema_G, "mixed", 2, 0, False, "G-relation on two words"),
        Schema("INV2", schema_INV2, "mixed", 1, 2, True, "tr(A Th_ij) = tr(A Th_ji) - tr(A) tr(Th_ji)"),
        Schema("INV3", schema_INV3, "mixed", 2, 4, True, "tr(A Th_ij B Th_i'j') = tr(A Th_ij') tr(B Th_i'j)"),
        Schema("CON1", schema_CON1, "mixed", 2, 0, False, "(A + A^iota) commutes with B"),
        Schema("CON1-TR", schema_CON1_TR, "mixed", 2, 0, False, "tr(A) commutes with B"),
        Schema("CON-EQUIV", schema_CON_EQUIV, "mixed", 1, 0, False, "A + A^iota = tr(A) Id"),
        Schema("CON2", schema_CON2, "mixed", 1, 4, True, "Th A Th' contraction, adjoint form"),
        Schema("CON2-TR", schema_CON2_TR, "mixed", 1, 4, True, "Th A Th' contraction, trace form"),
        Schema("PLUCKER", schema_PLUCKER, "mixed", 0, 4, True, "quadratic Pluecker identity"),
        Schema("ANTISYM", schema_ANTISYM, "mixed", 0, 2, True, "tr(Th_ij) = -tr(Th_ji)"),
        Schema("KER1", schema_KER1, "source", 1, 2, True, "nu-kernel, linear generator"),
        Schema("KER2", schema_KER2, "source", 2, 4, True, "nu-kernel, quadratic generator"),
        Schema("KERC1", schema_KERC1, "source", 0, 2, True, "nu-kernel on concomitants, linear"),
        Schema("KERC2", schema_KERC2, "source", 1, 4, True, "nu-kernel on concomitants, trace form"),
        Schema("KERC2-ALT", schema_KERC2_ALT, "source", 1, 4, True, "nu-kernel on concomitants, adjoint form"),
    ]
}


def relation_schema(name: str, *args):
    """Build the expression that must vanish for schema ``name``."""
    try:
        schema = SCHEMAS[name]
    except KeyError:
        raise ShapeError(f"unknown schema {name!r}") from None
    try:
        return schema.build(*args)
    except TypeError as exc:
        raise ShapeError(f"schema {name}: {exc}") from None


def random_mixed_word(rng: random.Random, m: int, n: int, max_len: int,
                      adjoints: bool = True, min_len: int = 0) -> TraceWord:
    letters: List[Letter] = [X(i) for i in range(1, m + 1)]
    if adjoints:
        letters += [Xi(i) for i in range(1, m + 1)]
    letters += [Th(j, k) for j in range(1, n + 1) for k in range(1, n + 1)]
    if not letters:
        return ()
    length = rng.randint(min_len, max_len)
    return tuple(rng.choice(letters) for _ in range(length))


def random_source_word(rng: random.Random, m: int, n: int, max_len: int) -> TraceWord:
    total = m + n * n
    letters = [X(i) for i in range(1, total + 1)] + [Xi(i) for i in range(1, total + 1)]
    return tuple(rng.choice(letters) for _ in range(rng.randint(0, max_len)))


def random_schema_args(name: str, rng: random.Random, m: int, n: int, max_len: int) -> tuple:
    schema = SCHEMAS[name]
    if schema.side == "source":
        words = [random_source_word(rng, m, n, max_len) for _ in range(schema.words)]
        idx = [rng.randint(1, n) for _ in range(schema.indices)]
        return tuple(words) + (m, n) + tuple(idx)
    adjoints = name not in ("F", "G", "INV2", "INV3")
    words = [random_mixed_word(rng, m, n, max_len, adjoints) for _ in range(schema.words)]
    idx = [rng.randint(1, n) for _ in range(schema.indices)]
    return tuple(words) + tuple(idx)


def _zero_of(e, point):
    return Mat2.zero(point.field) if isinstance(e, ConExpr) else point.field.zero


def point_sampler(m: int, n: int, field, side: str = "mixed") -> Callable[[random.Random], MixedPoint]:
    def draw(rng):
        p = sample_point(m, n, rng, field)
        return grid_point(p) if side == "source" else p

    return draw


def vanishes(e, m: int, n: int, cfg: Optional[OracleConfig] = None, side: str = "mixed") -> Verdict:
    """Oracle check that ``e`` is identically zero on ``End(V)^m + V^n``
    (for ``side="source"``: on the outer-product grid points)."""
    cfg = cfg or OracleConfig()
    cfg = OracleConfig(cfg.field, cfg.samples, cfg.seed, None, point_sampler(m, n, cfg.field, side))
    pres = GAPresentation(m, n)
    return compare(e.evaluate, lambda pt: _zero_of(e, pt), pres, cfg, e.degree())


def nu_naturality(e, m: int, n: int, cfg: Optional[OracleConfig] = None) -> Verdict:
    """``eval(nu(e), P) == eval(e, grid(P))`` on sampled points ``P``."""
    cfg = cfg or OracleConfig()
    image = nu_substitute(e, m, n)
    cfg = OracleConfig(cfg.field, cfg.samples, cfg.seed, None, point_sampler(m, n, cfg.field))
    return compare(
        image.evaluate,
        lambda pt: e.evaluate(grid_point(pt)),
        GAPresentation(m, n),
        cfg,
        2 * max(e.degree(), 1),
    )


def all_index_tuples(n: int, k: int):
    return itertools.product(range(1, n + 1), repeat=k)
