"""Sparse Laurent polynomials over Q, used as a "generic point" scalar ring.

Evaluating a character expression at a representation whose matrix entries are
indeterminates gives an exact polynomial identity test: for a free group
acting freely, ``Rep(G, M) = SL2^m x V^n`` is irreducible, and an SL2 matrix
is parametrised on a dense open set by ``[[a, b], [c, (1 + b c) / a]]``.  Two
character polynomials are equal iff their generic evaluations coincide as
Laurent polynomials in the ``a_i, b_i, c_i, x_j, y_j``.

Only ring operations are supported, plus division by monomials.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Tuple

Exps = Tuple[int, ...]


class LaurentRing:
    """The ring ``Q[t_0^{+-1}, ..., t_{k-1}^{+-1}]`` with named variables."""

    name = "generic"
    order = None
    characteristic = 0

    def __init__(self, names):
        self.names = tuple(names)
        self.nvars = len(self.names)
        self._zero_exps = (0,) * self.nvars

    def __call__(self, x) -> "LPoly":
        if isinstance(x, LPoly):
            return x
        c = Fraction(x)
        return LPoly(self, {self._zero_exps: c} if c else {})

    @property
    def zero(self) -> "LPoly":
        return LPoly(self, {})

    @property
    def one(self) -> "LPoly":
        return LPoly(self, {self._zero_exps: Fraction(1)})

    def var(self, i: int, power: int = 1) -> "LPoly":
        e = [0] * self.nvars
        e[i] = power
        return LPoly(self, {tuple(e): Fraction(1)})

    def random_element(self, rng):
        raise TypeError("the generic ring has no random elements")

    def __repr__(self):
        return f"LaurentRing({', '.join(self.names)})"


class LPoly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: LaurentRing, terms: Dict[Exps, Fraction]):
        self.ring = ring
        self.terms = terms

    def _lift(self, other) -> "LPoly":
        if isinstance(other, LPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for e, c in o.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return LPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LPoly(self.ring, {})
            return LPoly(self.ring, {e: c * other for e, c in self.terms.items()})
        if not isinstance(other, LPoly):
            return NotImplemented
        out: Dict[Exps, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LPoly(self.ring, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, LPoly) and len(other.terms) == 1:
            (e2, c2), = other.terms.items()
            return LPoly(
                self.ring,
                {tuple(a - b for a, b in zip(e, e2)): c / c2 for e, c in self.terms.items()},
            )
        raise ZeroDivisionError("LPoly only divides by nonzero monomials")

    def __pow__(self, k: int):
        if k < 0:
            return self.ring.one / (self ** (-k))
        out = self.ring.one
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(
                (n if k == 1 else f"{n}^{k}") for n, k in zip(self.ring.names, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)
