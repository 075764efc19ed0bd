"""Words in the group-ring letters ``X_g`` and outer products ``Th_pq``, and
the maps ``chi`` (symbols to traces) and ``tau`` (words to symbols).

Letters are ``("G", word)`` for ``X_g`` and ``("P", p, q)`` for ``Th_pq``.
Words are kept absorbed: ``X_g Th_pq = Th_{gp,q}`` and ``Th_pq X_g =
Th_{p,g^-1 q}``, so a normalized word is empty (``Id``), a single ``X_g``, or
a product of outer products.

``tau(X_g) = [g]`` and ``tau(Th_{p1 q1} ... Th_{pn qn}) = [q1,p2] ... [qn,p1]``.
The identity ``tau(chi(r)) = 2 r`` is certified symbolically: expanding each
trace as ``tr(A) B = A B + A^iota B``, every expanded pair differs from
``tau(A) tau(B)`` by one instance of R4, R5 or R6 (or not at all).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .charalg import ArcSym, CharAlgebra, CharPoly, LoopSym, rule_rhs
from .groupact import (EMPTY, GAPresentation, MarkedPoint, Word, cyclic_reduce, format_word,
                       random_point, random_word)
from .linalg2 import Mat2, outer
from .oracle import OracleConfig, Verdict, compare
from .rep import Rep, decoration, eval_word
from .tracealg import Alphabet, ConExpr, InvExpr, TraceWord, iota_letters, word_matrix


class TGAlphabet(Alphabet):
    name = "tg"

    def key(self, letter):
        if letter[0] == "G":
            return (0,) + letter[1].sort_key()
        return (1,) + letter[1].sort_key() + (-1,) + letter[2].sort_key()

    def iota_letter(self, letter):
        if letter[0] == "G":
            return 1, ("G", letter[1].inverse())
        return -1, ("P", letter[2], letter[1])

    def matrix(self, r: Rep, letter) -> Mat2:
        if letter[0] == "G":
            return eval_word(r, letter[1])
        return outer(decoration(r, letter[1]), decoration(r, letter[2]))

    def degree(self, letter) -> int:
        if letter[0] == "G":
            return 3 * len(letter[1])
        return 3 * (len(letter[1].prefix) + len(letter[2].prefix)) + 2

    def vector_degree(self, letter) -> int:
        return 0 if letter[0] == "G" else 2

    def show(self, letter) -> str:
        if letter[0] == "G":
            return f"Xg({format_word(letter[1])})"
        return f"Th({letter[1]}, {letter[2]})"

    def normalize(self, word: TraceWord) -> TraceWord:
        out: List = []
        pending = EMPTY  # group element waiting to be absorbed on the right
        for x in word:
            if x[0] == "G":
                if out:
                    # Th_pq X_g = Th_{p, g^-1 q}
                    _, p, q = out[-1]
                    out[-1] = ("P", p, MarkedPoint(x[1].inverse() * q.prefix, q.orbit))
                else:
                    pending = pending * x[1]
            else:
                _, p, q = x
                if pending:
                    p = MarkedPoint(pending * p.prefix, p.orbit)
                    pending = EMPTY
                out.append(("P", p, q))
        if out:
            return tuple(out)
        return (("G", pending),) if pending else ()

    def trace_key(self, word: TraceWord) -> TraceWord:
        word = self.normalize(word)
        if len(word) == 1 and word[0][0] == "G":
            # tr X_g only depends on the cyclic class of g
            c = cyclic_reduce(word[0][1])
            if not c:
                return ()
            xs = c.letters
            best = min((Word(xs[i:] + xs[:i]) for i in range(len(xs))), key=Word.sort_key)
            return (("G", best),)
        return super().trace_key(word)


TG = TGAlphabet()


def Xg(w: Word) -> tuple:
    return ("G", w)


def Tpq(p: MarkedPoint, q: MarkedPoint) -> tuple:
    return ("P", p, q)


def tg_word(*letters) -> TraceWord:
    return TG.normalize(tuple(letters))


def show(word: TraceWord) -> str:
    from .tracealg import show_word

    return show_word(TG, word)


# --- chi and tau ---------------------------------------------------------------


def chi_symbol(s) -> InvExpr:
    if isinstance(s, LoopSym):
        return InvExpr.trace(TG, (Xg(s.word),))
    # chi([p,q]) = tr(Th_qp)
    return InvExpr.trace(TG, (Tpq(s.q, s.p),))


def chi_map(f: CharPoly) -> InvExpr:
    out = InvExpr(TG)
    for mono, c in f.terms.items():
        term = InvExpr.const(TG, c)
        for s in mono:
            term = term * chi_symbol(s)
        out = out + term
    return out


def tau_word(alg: CharAlgebra, word: TraceWord) -> CharPoly:
    """``tau`` on a single word, straight from the definition."""
    word = TG.normalize(word)
    if not word:
        return alg.loop(EMPTY)
    if word[0][0] == "G":
        return alg.loop(word[0][1])
    n = len(word)
    out = alg.one
    for k in range(n):
        q = word[k][2]
        p_next = word[(k + 1) % n][1]
        out = out * alg.arc(q, p_next)
    return out


def tau_map(alg: CharAlgebra, e) -> CharPoly:
    """Linear extension of ``tau``; trace coefficients use ``tau(tr(A) B) = tau(A) tau(B)``."""
    if isinstance(e, tuple):
        return tau_word(alg, e)
    if isinstance(e, InvExpr):
        e = ConExpr.scalar(e)
    out = alg.zero
    for (inv, w), c in e.terms.items():
        term = tau_word(alg, w).scale(c)
        for t in inv:
            term = term * tau_word(alg, t)
        out = out + term
    return out


def expand_traces(inv: InvExpr) -> ConExpr:
    """Rewrite every ``tr(A)`` as ``A + A^iota`` (trace-free words)."""
    out = ConExpr(TG)
    for mono, c in inv.terms.items():
        term = ConExpr.identity(TG).__mul__(c)
        for t in mono:
            term = _expand_one(t) * term
        out = out + term
    return out


def _expand_one(t: TraceWord) -> ConExpr:
    sign, ti = iota_letters(TG, t)
    return ConExpr.word(TG, t) + ConExpr.word(TG, ti, sign)


def tau_literal(alg: CharAlgebra, e: ConExpr) -> CharPoly:
    """``tau`` on a trace-free combination, from the word definition only."""
    out = alg.zero
    for (inv, w), c in e.terms.items():
        if inv:
            raise ValueError("tau_literal needs a trace-free expression")
        out = out + tau_word(alg, w).scale(c)
    return out


# --- symbolic certificate ------------------------------------------------------


@dataclass(frozen=True)
class Step:
    """``tau(A B) + tau(A^iota B) = tau(A) tau(B)`` via ``rule`` (or literally)."""

    a: TraceWord
    b: TraceWord
    rule: str
    ok: bool


def relation_instance(alg: CharAlgebra, a: TraceWord, b: TraceWord) -> Tuple[str, CharPoly, CharPoly]:
    """The relation instance ``(rule, lhs, rhs)`` linking ``tau(A) tau(B)`` to
    ``tau(A B) + tau(A^iota B)``, with the common factor already multiplied in."""
    a, b = TG.normalize(a), TG.normalize(b)
    if not a or not b:
        return "literal", tau_word(alg, a) * tau_word(alg, b), None
    if a[0][0] == "G" and b[0][0] == "G":
        g, h = a[0][1], b[0][1]
        lhs = alg.loop(g) * alg.loop(h)
        return "R4", lhs, rule_rhs(alg, "R4", LoopSym(g), LoopSym(h))
    if a[0][0] == "G":
        # B = Th_{p1 q1} ... Th_{pn qn}; the factor [qn, p1] meets [g]
        g = a[0][1]
        rest = _arc_product(alg, b, skip_last=True)
        qn, p1 = b[-1][2], b[0][1]
        lhs = alg.loop(g) * alg.arc(qn, p1)
        return "R5", rest * lhs, rest * rule_rhs(alg, "R5", LoopSym(g), ArcSym(qn, p1))
    if b[0][0] == "G":
        # A = Th_{p1 q1} ... Th_{pj qj}; the factor [qj, p1] meets [h]
        h = b[0][1]
        rest = _arc_product(alg, a, skip_last=True)
        qj, p1 = a[-1][2], a[0][1]
        lhs = alg.loop(h) * alg.arc(qj, p1)
        return "R5", rest * lhs, rest * rule_rhs(alg, "R5", LoopSym(h), ArcSym(qj, p1))
    # both pure outer-product words
    rest = _arc_product(alg, a, skip_last=True) * _arc_product(alg, b, skip_last=True)
    qj, p1 = a[-1][2], a[0][1]
    qn, pj1 = b[-1][2], b[0][1]
    lhs = alg.arc(qj, p1) * alg.arc(qn, pj1)
    return "R6", rest * lhs, rest * rule_rhs(alg, "R6", ArcSym(qj, p1), ArcSym(qn, pj1))


def _arc_product(alg: CharAlgebra, w: TraceWord, skip_last: bool) -> CharPoly:
    out = alg.one
    stop = len(w) - 1 if skip_last else len(w)
    for k in range(stop):
        out = out * alg.arc(w[k][2], w[k + 1][1])
    return out


def trace_product_step(alg: CharAlgebra, a: TraceWord, b: TraceWord) -> Step:
    """Check ``tau(A B) + tau(A^iota B) == tau(A) tau(B)`` through one relation."""
    sign, ai = iota_letters(TG, TG.normalize(a))
    expanded = tau_word(alg, a + b) + tau_word(alg, ai + b).scale(sign)
    product = tau_word(alg, a) * tau_word(alg, b)
    rule, lhs, rhs = relation_instance(alg, a, b)
    if rule == "literal":
        return Step(a, b, rule, expanded == product)
    return Step(a, b, rule, lhs == product and rhs == expanded)


@dataclass
class Certificate:
    monomial: tuple
    steps: List[Step]
    literal: CharPoly  # tau applied to the trace-free expansion of chi(r)
    target: CharPoly  # 2 r

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.steps)

    def rules(self) -> dict:
        out: dict = {}
        for s in self.steps:
            out[s.rule] = out.get(s.rule, 0) + 1
        return out


def _symbol_letter(s) -> TraceWord:
    if isinstance(s, LoopSym):
        return (Xg(s.word),)
    return (Tpq(s.q, s.p),)


def tau_chi_certificate(alg: CharAlgebra, mono: tuple) -> Certificate:
    """Certify ``tau(chi(r)) = 2 r`` for the monomial ``r = s1 s2 ... sk``.

    With ``E(r)`` the trace-free expansion of ``chi(r)``, ``E(s1 r') =
    sum_B (A1 B + A1^iota B)`` over the words ``B`` of ``E(r')``; each pair is
    checked against ``tau(A1) tau(B)`` and the recursion bottoms out at
    ``tau(Id) = [e] = 2``."""
    steps: List[Step] = []
    expansion = ConExpr.identity(TG)
    for s in reversed(mono):
        a = _symbol_letter(s)
        for (inv, b), c in expansion.terms.items():
            steps.append(trace_product_step(alg, a, b))
        expansion = _expand_one(a) * expansion
    literal = tau_literal(alg, expansion)
    return Certificate(mono, steps, literal, alg.monomial(mono, 2))


def tau_chi_oracle(alg: CharAlgebra, cert: Certificate, cfg: Optional[OracleConfig] = None) -> Verdict:
    cfg = cfg or OracleConfig()
    lhs, rhs = cert.literal, cert.target
    return compare(lhs.evaluate, rhs.evaluate, alg.pres, cfg, max(lhs.degree(), rhs.degree()))


def chi_tau_check(alg: CharAlgebra, word: TraceWord, cfg: Optional[OracleConfig] = None) -> Verdict:
    """``chi(tau(w))`` against ``tr(w)`` on sampled representations."""
    cfg = cfg or OracleConfig()
    image = tau_word(alg, word)
    w = TG.normalize(word)
    degree = max(image.degree(), sum(TG.degree(x) for x in w))
    return compare(
        image.evaluate,
        lambda r: word_matrix(TG, r, w).trace(),
        alg.pres,
        cfg,
        degree,
    )


# --- relations of the matrix character algebra ---------------------------------


def tr_central(a: TraceWord, b: TraceWord) -> ConExpr:
    """``tr(A) B - B tr(A)`` with ``tr(A) = A + A^iota`` spelled out."""
    t = _expand_one(TG.normalize(a))
    B = ConExpr.word(TG, b)
    return t * B - B * t


def theta_contract(p, q, p2, q2) -> ConExpr:
    """``Th_pq Th_p'q' - tr(Th_p'q) Th_pq'`` with the trace spelled out."""
    lhs = ConExpr.word(TG, (Tpq(p, q), Tpq(p2, q2)))
    rhs = _expand_one((Tpq(p2, q),)) * ConExpr.word(TG, (Tpq(p, q2),))
    return lhs - rhs


def stabilizer_relation(s: Word, orbit: int, other: MarkedPoint) -> ConExpr:
    """``(X_s - Id) Th_{p_j, p'}`` for a stabilizer word ``s`` of orbit ``j``."""
    base = MarkedPoint(EMPTY, orbit)
    th = (Tpq(base, other),)
    # keep X_s unabsorbed: (X_s - Id) Th must be checked as a matrix product
    return ConExpr(TG, {((), (Xg(s),) + th): Fraction(1), ((), th): Fraction(-1)})


def tg_relation(name: str, *args) -> ConExpr:
    if name == "TR-CENTRAL":
        return tr_central(*args)
    if name == "THETA-CONTRACT":
        return theta_contract(*args)
    if name == "STAB":
        return stabilizer_relation(*args)
    raise ValueError(f"unknown relation {name!r}")


def tg_vanishes(e: ConExpr, pres: GAPresentation, cfg: Optional[OracleConfig] = None) -> Verdict:
    """Matrix-valued check on sampled (or library) representations; words are
    evaluated letter by letter, so unabsorbed ``X_s`` factors stay honest."""
    cfg = cfg or OracleConfig()

    def value(r):
        f = r.field
        total = Mat2.zero(f)
        for (inv, w), c in e.terms.items():
            m = Mat2.identity(f)
            for x in w:
                m = m @ TG.matrix(r, x)
            total = total + m.scale(f(c))
        return total

    return compare(value, lambda r: Mat2.zero(r.field), pres, cfg, e.degree())


# --- random data -----------------------------------------------------------------


def random_tg_word(rng: random.Random, pres: GAPresentation, max_len: int,
                   min_len: int = 1) -> TraceWord:
    """Random product of ``X_g`` and ``Th_pq`` letters (before absorption)."""
    k = rng.randint(min_len, max(min_len, max_len))
    letters = []
    for _ in range(k):
        if pres.n and (pres.m == 0 or rng.random() < 0.6):
            letters.append(Tpq(random_point(rng, pres, 2), random_point(rng, pres, 2)))
        else:
            letters.append(Xg(random_word(rng, pres.m, 3, min_len=1)))
    return tuple(letters)


def random_basis_monomial(rng: random.Random, alg: CharAlgebra, max_degree: int,
                          max_len: int) -> Optional[tuple]:
    """A random monomial of ``H+`` with at most ``max_degree`` symbols."""
    pres = alg.pres
    for _ in range(100):
        f = alg.one
        for _ in range(rng.randint(1, max_degree)):
            if pres.n and (pres.m == 0 or rng.random() < 0.5):
                p = MarkedPoint(random_word(rng, pres.m, max_len // 2), rng.randint(1, pres.n))
                q = MarkedPoint(random_word(rng, pres.m, max_len - max_len // 2), rng.randint(1, pres.n))
                f = f * alg.arc(p, q)
            else:
                f = f * alg.loop(random_word(rng, pres.m, max_len, min_len=1))
        if len(f.terms) == 1:
            (mono,) = f.terms
            if mono:
                return mono
    return None
