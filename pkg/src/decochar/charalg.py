"""The commutative algebra on loop symbols ``[g]`` and arc symbols ``[p,q]``.

Symbols are interned in canonical form for free presentations: loops up to
conjugation and inversion, arcs up to simultaneous translation, with the
orientation sign moved into the coefficient.  The remaining relations

* R4: ``[g][h] = [gh] + [g^-1 h]``
* R5: ``[g][p,q] = [gp,q] + [g^-1 p,q]``
* R6: ``[p,q][p',q'] = [p,q'][p',q] + [p,p'][q,q']``
* POW: ``[g]^i = sum_{k < i/2} C(i,k) [g^(i-2k)]  (+ C(i,i/2) for even i)``

are directed rewrites applied at an explicit site.  There is no normal form;
equality is decided by the evaluation oracle.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Optional, Tuple, Union

from .groupact import EMPTY, GAPresentation, MarkedPoint, Word, format_word, loop_canon
from .oracle import OracleConfig, Verdict, compare
from .rep import Rep, chi_arc, chi_loop

log = logging.getLogger(__name__)

RULES = ("R4", "R5", "R6", "POW")


@dataclass(frozen=True)
class LoopSym:
    word: Word

    def sort_key(self):
        return (0,) + self.word.sort_key()

    def degree(self) -> int:
        return 3 * len(self.word)

    def evaluate(self, r: Rep):
        return chi_loop(r, self.word)

    def __str__(self):
        return f"loop({format_word(self.word)})"


@dataclass(frozen=True)
class ArcSym:
    p: MarkedPoint
    q: MarkedPoint

    def sort_key(self):
        return (1,) + self.p.sort_key() + (-1,) + self.q.sort_key()

    def degree(self) -> int:
        return 3 * (len(self.p.prefix) + len(self.q.prefix)) + 2

    def evaluate(self, r: Rep):
        return chi_arc(r, self.p, self.q)

    def __str__(self):
        return f"arc({self.p}, {self.q})"


Symbol = Union[LoopSym, ArcSym]
Monomial = Tuple[Symbol, ...]
ONE: Monomial = ()


def _sorted(symbols: Iterable[Symbol]) -> Monomial:
    return tuple(sorted(symbols, key=lambda s: s.sort_key()))


def monomial_str(mono: Monomial) -> str:
    return "*".join(str(s) for s in mono) if mono else "1"


class CharPoly:
    """A finite ``Fraction``-linear combination of canonical monomials."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "CharAlgebra", terms: Optional[Dict[Monomial, Fraction]] = None):
        self.algebra = algebra
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    def _lift(self, other) -> "CharPoly":
        if isinstance(other, CharPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return self.algebra.const(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out.get(m, 0) + c
        return CharPoly(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return CharPoly(self.algebra, {m: -c for m, c in self.terms.items()})

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
            return self.scale(other)
        if not isinstance(other, CharPoly):
            return NotImplemented
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _sorted(m1 + m2)
                out[m] = out.get(m, 0) + c1 * c2
        return CharPoly(self.algebra, out)

    __rmul__ = __mul__

    def scale(self, s) -> "CharPoly":
        s = Fraction(s)
        return CharPoly(self.algebra, {m: c * s for m, c in self.terms.items()})

    def __pow__(self, k: int) -> "CharPoly":
        if k < 0:
            raise ValueError("negative powers are not defined")
        out = self.algebra.const(1)
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

    def monomials(self):
        return sorted(self.terms, key=lambda m: (len(m), [s.sort_key() for s in m]))

    def constant(self) -> Fraction:
        return self.terms.get(ONE, Fraction(0))

    def degree(self) -> int:
        """Degree bound for the oracle: per monomial, the summed symbol degrees."""
        return max((sum(s.degree() for s in m) for m in self.terms), default=0)

    def loop_count(self) -> int:
        return max((sum(isinstance(s, LoopSym) for s in m) for m in self.terms), default=0)

    def evaluate(self, r: Rep):
        return evaluate(self, r)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in self.monomials():
            c = self.terms[m]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not m:
                body = str(a)
            elif a == 1:
                body = monomial_str(m)
            else:
                body = f"{a}*{monomial_str(m)}"
            parts.append((sign, body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return " ".join([head] + [f"{s} {b}" for s, b in parts[1:]])

    def __repr__(self):
        return f"CharPoly({self})"


class CharAlgebra:
    """Symbol factory and ring for a fixed presentation.

    ``canonical`` defaults to the presentation's freeness.  With
    ``canonical=False`` symbols are kept as given (free-reduced words), which
    is what the non-free oracle path and honest relation checks need.
    """

    def __init__(self, pres: GAPresentation, canonical: Optional[bool] = None):
        self.pres = pres
        self.canonical = pres.free if canonical is None else canonical
        if self.canonical and not pres.free:
            # loop_canon is only a normal form for free groups
            loop_canon(EMPTY, pres)

    def const(self, c) -> CharPoly:
        return CharPoly(self, {ONE: Fraction(c)})

    @property
    def zero(self) -> CharPoly:
        return CharPoly(self)

    @property
    def one(self) -> CharPoly:
        return self.const(1)

    def monomial(self, symbols: Iterable[Symbol], coeff=1) -> CharPoly:
        return CharPoly(self, {_sorted(symbols): Fraction(coeff)})

    def loop(self, w: Word) -> CharPoly:
        self.pres.check_word(w)
        if self.canonical:
            w = loop_canon(w)
        if not w:
            return self.const(2)
        return self.monomial([LoopSym(w)])

    def arc(self, p: MarkedPoint, q: MarkedPoint) -> CharPoly:
        self.pres.check_point(p)
        self.pres.check_point(q)
        if p == q:
            return self.zero
        if not self.canonical:
            return self.monomial([ArcSym(p, q)])
        sym, sign = canonical_arc(p, q)
        return self.monomial([sym], sign)

    def symbol(self, s: Symbol) -> CharPoly:
        if isinstance(s, LoopSym):
            return self.loop(s.word)
        return self.arc(s.p, s.q)

    def product(self, factors: Iterable[CharPoly]) -> CharPoly:
        out = self.one
        for f in factors:
            out = out * f
        return out


def canonical_arc(p: MarkedPoint, q: MarkedPoint) -> Tuple[ArcSym, int]:
    """Translate so the first point has empty prefix and pick the least
    orientation; returns the symbol and the orientation sign."""
    pin = p.prefix.inverse()
    qin = q.prefix.inverse()
    forward = ArcSym(MarkedPoint(EMPTY, p.orbit), MarkedPoint(pin * q.prefix, q.orbit))
    backward = ArcSym(MarkedPoint(EMPTY, q.orbit), MarkedPoint(qin * p.prefix, p.orbit))
    if backward.sort_key() < forward.sort_key():
        return backward, -1
    return forward, 1


def symbol_loop(alg: CharAlgebra, w: Word) -> CharPoly:
    return alg.loop(w)


def symbol_arc(alg: CharAlgebra, p: MarkedPoint, q: MarkedPoint) -> CharPoly:
    return alg.arc(p, q)


def evaluate(f: CharPoly, r: Rep):
    field = r.field
    total = field.zero
    cache: Dict[Symbol, object] = {}
    for mono, c in f.terms.items():
        term = field(c)
        for s in mono:
            v = cache.get(s)
            if v is None:
                v = cache[s] = s.evaluate(r)
            term = term * v
        total = total + term
    return total


# --- rewriting ---------------------------------------------------------------


@dataclass(frozen=True)
class Site:
    """Positions inside ``monomial``: one symbol (POW) or two (R4/R5/R6)."""

    monomial: Monomial
    first: int
    second: Optional[int] = None


def rule_rhs(alg: CharAlgebra, rule: str, a: Symbol, b: Optional[Symbol] = None,
             power: int = 0) -> CharPoly:
    """Right-hand side replacing the product ``a*b`` (or ``a^power`` for POW)."""
    if rule == "R4":
        g, h = a.word, b.word
        return alg.loop(g * h) + alg.loop(g.inverse() * h)
    if rule == "R5":
        g, p, q = a.word, b.p, b.q
        return alg.arc(MarkedPoint(g * p.prefix, p.orbit), q) + alg.arc(
            MarkedPoint(g.inverse() * p.prefix, p.orbit), q
        )
    if rule == "R6":
        p, q, p2, q2 = a.p, a.q, b.p, b.q
        return alg.arc(p, q2) * alg.arc(p2, q) + alg.arc(p, p2) * alg.arc(q, q2)
    if rule == "POW":
        return chebyshev_power(alg, a.word, power)
    raise ValueError(f"unknown rule {rule!r} (expected one of {', '.join(RULES)})")


def chebyshev_power(alg: CharAlgebra, g: Word, i: int) -> CharPoly:
    """``[g]^i`` written in the loops ``[g^j]``."""
    out = alg.zero
    for k in range((i + 1) // 2):
        out = out + alg.loop(g ** (i - 2 * k)).scale(comb(i, k))
    if i % 2 == 0:
        out = out + comb(i, i // 2)
    return out


def site_problem(f: CharPoly, rule: str, site: Site) -> Optional[str]:
    """Why ``site`` does not match ``rule`` in ``f``; ``None`` when it matches."""
    if rule not in RULES:
        return f"unknown rule {rule!r}"
    mono = site.monomial
    if mono not in f.terms:
        return f"monomial {monomial_str(mono)} does not occur"
    n = len(mono)
    if not 0 <= site.first < n:
        return f"symbol index {site.first} out of range"
    a = mono[site.first]
    if rule == "POW":
        if not isinstance(a, LoopSym):
            return "POW needs a loop symbol"
        if mono.count(a) < 2:
            return "POW needs a loop symbol with multiplicity >= 2"
        return None
    if site.second is None or not 0 <= site.second < n or site.second == site.first:
        return "rule needs two distinct symbol positions"
    b = mono[site.second]
    want = {"R4": (LoopSym, LoopSym), "R5": (LoopSym, ArcSym), "R6": (ArcSym, ArcSym)}[rule]
    if not (isinstance(a, want[0]) and isinstance(b, want[1])):
        return f"{rule} needs a {want[0].__name__} then an {want[1].__name__}"
    return None


def rewrite_step(f: CharPoly, rule: str, site: Site) -> CharPoly:
    """Replace the matched factor(s) of one monomial by the rule's right side.

    A site that does not match leaves ``f`` unchanged and logs the reason."""
    problem = site_problem(f, rule, site)
    if problem is not None:
        log.warning("rewrite %s skipped: %s", rule, problem)
        return f
    alg = f.algebra
    mono = site.monomial
    coeff = f.terms[mono]
    a = mono[site.first]
    if rule == "POW":
        power = mono.count(a)
        rest = tuple(s for s in mono if s != a)
        rhs = rule_rhs(alg, rule, a, power=power)
    else:
        b = mono[site.second]
        rest = tuple(s for k, s in enumerate(mono) if k not in (site.first, site.second))
        rhs = rule_rhs(alg, rule, a, b)
    out = dict(f.terms)
    del out[mono]
    return CharPoly(alg, out) + alg.monomial(rest, coeff) * rhs


def _heuristic_site(mono: Monomial) -> Optional[Tuple[str, Site]]:
    loops = [k for k, s in enumerate(mono) if isinstance(s, LoopSym)]
    if len(loops) < 2:
        return None
    counts = Counter(mono[k] for k in loops)
    for k in loops:
        if counts[mono[k]] >= 2:
            return "POW", Site(mono, k)
    return "R4", Site(mono, loops[0], loops[1])


def reduce_heuristic(f: CharPoly, max_steps: int = 100_000) -> CharPoly:
    """Apply POW and R4 until every monomial carries at most one loop symbol.

    Each step replaces a monomial by monomials with strictly fewer loop
    symbols, so the multiset of per-monomial loop counts decreases and the
    loop terminates; ``max_steps`` only guards against runaway inputs."""
    for _ in range(max_steps):
        for mono in f.monomials():
            hit = _heuristic_site(mono)
            if hit is not None:
                f = rewrite_step(f, *hit)
                break
        else:
            return f
    raise RuntimeError("reduce_heuristic exceeded its step budget")


# --- equality -----------------------------------------------------------------


def equal(f: CharPoly, h: CharPoly, cfg: Optional[OracleConfig] = None) -> Verdict:
    cfg = cfg or OracleConfig()
    pres = f.algebra.pres
    degree = max(f.degree(), h.degree())
    return compare(f.evaluate, h.evaluate, pres, cfg, degree)


def generic_equal(f: CharPoly, h: CharPoly) -> bool:
    """Exact polynomial identity test at the generic point (free case)."""
    from .rep import generic_rep

    r = generic_rep(f.algebra.pres)
    return evaluate(f - h, r) == 0


def chebyshev_value(i: int, x):
    """``2 T_i(x / 2)`` via ``T_0 = 1, T_1 = y, T_{k+1} = 2 y T_k - T_{k-1}``."""
    if i == 0:
        return 0 * x + 2
    y = x / 2
    prev, cur = 1, y
    for _ in range(i - 1):
        prev, cur = cur, 2 * y * cur - prev
    return 2 * cur
