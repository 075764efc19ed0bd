"""Relation suites: randomized instances of every relation family, oracle
checks, and a mutation battery that must be caught.

Families:

* ``char``: the relations among loop and arc characters (``R1``..``R10``,
  plus the ``R4-DEF``/``R5-DEF`` packagings).  Both sides are lists of raw
  symbol products evaluated directly on representations, so no canonical
  form can make an instance hold by construction.
* ``trace``: the mixed invariant/concomitant schemas of :mod:`tracealg`.
* ``tg``: trace centrality, outer-product contraction and stabilizer
  relations on matrix-valued characters (:mod:`tgm2`).
* ``twisted``: ``[z g] = s(z)[g]`` and ``[z p, q] = s(z)[p, q]`` on twisted
  representations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import tgm2, tracealg
from .charalg import ArcSym, LoopSym
from .groupact import EMPTY, GAPresentation, UnsupportedError, MarkedPoint, Word, random_point, random_word
from .linalg2 import Mat2, Vec2
from .oracle import OracleConfig, Verdict, compare
from .rep import Rep, generic_rep
from .symbolic import LaurentRing
from .tracealg import ConExpr, InvExpr, MixedPoint, SCHEMAS, grid_point
from .twisted import CentralExtSpec, sample_twisted_rep, twisted_config

Term = Tuple[Fraction, tuple]  # coefficient, product of raw LoopSym/ArcSym


# --- character relations ----------------------------------------------------------


def _loop(w: Word) -> LoopSym:
    return LoopSym(w)


def _arc(p: MarkedPoint, q: MarkedPoint) -> ArcSym:
    return ArcSym(p, q)


def _mv(g: Word, p: MarkedPoint) -> MarkedPoint:
    return MarkedPoint(g * p.prefix, p.orbit)


def chebyshev_coefficients(i: int) -> List[Fraction]:
    """Coefficients of ``2 T_i(x/2)`` in powers of ``x`` (lowest first), from
    ``P_0 = 2, P_1 = x, P_{k+1} = x P_k - P_{k-1}``."""
    if i < 0:
        raise ValueError("Chebyshev index must be >= 0")
    prev, cur = [Fraction(2)], [Fraction(0), Fraction(1)]
    if i == 0:
        return prev
    for _ in range(i - 1):
        shifted = [Fraction(0)] + cur
        nxt = [a - (prev[k] if k < len(prev) else 0) for k, a in enumerate(shifted)]
        prev, cur = cur, nxt
    return cur


def char_relation(name: str, *args) -> Tuple[List[Term], List[Term]]:
    """``(lhs, rhs)`` of one character relation instance as raw products."""
    one = Fraction(1)
    if name == "R1":
        return [(one, (_loop(EMPTY),))], [(Fraction(2), ())]
    if name == "R2":
        p, q = args
        return [(one, (_arc(p, q),))], [(-one, (_arc(q, p),))]
    if name == "R3":
        g, p, q = args
        return [(one, (_arc(_mv(g, p), _mv(g, q)),))], [(one, (_arc(p, q),))]
    if name == "R4":
        g, h = args
        return [(one, (_loop(g), _loop(h)))], [(one, (_loop(g * h),)), (one, (_loop(g.inverse() * h),))]
    if name == "R4-DEF":
        g, h = args
        return [(one, (_loop(g), _loop(h)))], [(one, (_loop(g * h),)), (one, (_loop(g * h.inverse()),))]
    if name == "R5":
        g, p, q = args
        return ([(one, (_loop(g), _arc(p, q)))],
                [(one, (_arc(_mv(g, p), q),)), (one, (_arc(_mv(g.inverse(), p), q),))])
    if name == "R5-DEF":
        g, p, q = args
        return ([(one, (_loop(g), _arc(p, q)))],
                [(one, (_arc(_mv(g, p), q),)), (one, (_arc(p, _mv(g, q)),))])
    if name == "R6":
        p, q, p2, q2 = args
        return ([(one, (_arc(p, q), _arc(p2, q2)))],
                [(one, (_arc(p, q2), _arc(p2, q))), (one, (_arc(p, p2), _arc(q, q2)))])
    if name == "R7":
        (p,) = args
        return [(one, (_arc(p, p),))], []
    if name == "R8":
        (g,) = args
        return [(one, (_loop(g.inverse()),))], [(one, (_loop(g),))]
    if name == "R9":
        g, h = args
        return [(one, (_loop(h * g * h.inverse()),))], [(one, (_loop(g),))]
    if name == "R10":
        g, i = args
        rhs = [(c, (_loop(g),) * k) for k, c in enumerate(chebyshev_coefficients(i)) if c]
        return [(one, (_loop(g ** i),))], rhs
    raise ValueError(f"unknown character relation {name!r}")


CHAR_RELATIONS = {
    "R1": "[e] = 2",
    "R2": "[p,q] = -[q,p]",
    "R3": "[gp,gq] = [p,q]",
    "R4": "[g][h] = [gh] + [g^-1 h]",
    "R4-DEF": "[g][h] = [gh] + [gh^-1]",
    "R5": "[g][p,q] = [gp,q] + [g^-1 p,q]",
    "R5-DEF": "[g][p,q] = [gp,q] + [p,gq]",
    "R6": "[p,q][p',q'] = [p,q'][p',q] + [p,p'][q,q']",
    "R7": "[p,p] = 0",
    "R8": "[g^-1] = [g]",
    "R9": "[hgh^-1] = [g]",
    "R10": "[g^i] = 2 T_i([g]/2)",
}

# relations that involve no group element beyond the identity
TRIVIAL_GROUP = ("R2", "R6", "R7")


def random_char_args(name: str, rng: random.Random, pres: GAPresentation, max_len: int) -> tuple:
    w = lambda: random_word(rng, pres.m, max_len)
    pt = lambda: random_point(rng, pres, max_len)
    if name == "R1":
        return ()
    if name == "R2":
        return (pt(), pt())
    if name in ("R3", "R5", "R5-DEF"):
        return (w(), pt(), pt())
    if name in ("R4", "R4-DEF", "R9"):
        return (w(), w())
    if name == "R6":
        return (pt(), pt(), pt(), pt())
    if name == "R7":
        return (pt(),)
    if name == "R8":
        return (w(),)
    if name == "R10":
        return (random_word(rng, pres.m, min(max_len, 3)), rng.randint(0, 8))
    raise ValueError(f"unknown character relation {name!r}")


def eval_terms(terms: Sequence[Term], r):
    f = r.field
    total = f.zero
    for c, syms in terms:
        v = f(c)
        for s in syms:
            v = v * s.evaluate(r)
        total = total + v
    return total


def terms_degree(terms: Sequence[Term]) -> int:
    return max((sum(s.degree() for s in syms) for _, syms in terms), default=0)


def show_terms(terms: Sequence[Term]) -> str:
    if not terms:
        return "0"
    out = []
    for c, syms in terms:
        body = "*".join(str(s) for s in syms)
        if not body:
            out.append(str(c))
        else:
            out.append(body if c == 1 else f"{c}*{body}")
    return " + ".join(out)


# --- instances ---------------------------------------------------------------------


@dataclass
class Instance:
    family: str
    name: str
    args: tuple
    pres: GAPresentation
    mutation: Optional[str] = None

    def check(self, cfg: OracleConfig) -> Verdict:
        raise NotImplementedError

    def mutants(self) -> List["Instance"]:
        """Every single-term mutation (sign flips, then ``+1``)."""
        raise NotImplementedError

    def differs(self, r) -> bool:
        """Whether the two sides disagree at the representation (or point) ``r``."""
        raise NotImplementedError

    def generic_point(self):
        return generic_rep(self.pres)

    def genuine(self, reference: Optional[Sequence] = None) -> bool:
        """Whether the instance is false as an identity (used to keep only
        mutations that really change it).  Free presentations are tested at a
        generic point; otherwise some ``reference`` representation must
        separate the two sides."""
        if reference is not None and not self.pres.free:
            return any(self.differs(r) for r in reference)
        return self.differs(self.generic_point())

    def label(self) -> str:
        tag = f" [{self.mutation}]" if self.mutation else ""
        return f"{self.family}:{self.name}{tag}"


def _flip(terms: Sequence[Term], k: int) -> List[Term]:
    out = list(terms)
    c, s = out[k]
    out[k] = (-c, s)
    return out


@dataclass
class CharInstance(Instance):
    lhs: List[Term] = field(default_factory=list)
    rhs: List[Term] = field(default_factory=list)
    sampler: Optional[Callable] = None  # twisted sampling
    generic: Optional[Callable] = None  # generic point for the genuineness test

    def check(self, cfg: OracleConfig) -> Verdict:
        if self.sampler is not None:
            cfg = OracleConfig(cfg.field, cfg.samples, cfg.seed, None, self.sampler(cfg.field))
        degree = max(terms_degree(self.lhs), terms_degree(self.rhs))
        return compare(lambda r: eval_terms(self.lhs, r), lambda r: eval_terms(self.rhs, r),
                       self.pres, cfg, degree)

    def mutants(self) -> List["CharInstance"]:
        out = [replace(self, rhs=_flip(self.rhs, k), mutation=f"sign{k}") for k in range(len(self.rhs))]
        out.append(replace(self, rhs=list(self.rhs) + [(Fraction(1), ())], mutation="term"))
        return out

    def generic_point(self):
        return self.generic() if self.generic else generic_rep(self.pres)

    def differs(self, r) -> bool:
        return eval_terms(self.lhs, r) != eval_terms(self.rhs, r)

    def show(self) -> str:
        return f"{show_terms(self.lhs)} = {show_terms(self.rhs)}"


def char_instance(name: str, args: tuple, pres: GAPresentation) -> CharInstance:
    lhs, rhs = char_relation(name, *args)
    return CharInstance("char", name, args, pres, lhs=lhs, rhs=rhs)


def _mutate_expr(e, k: Optional[int]):
    """Flip the sign of term ``k`` of a must-vanish expression, or add ``1``."""
    if k is None:
        return e + 1
    key = list(e.terms)[k]
    terms = dict(e.terms)
    terms[key] = -terms[key]
    return type(e)(e.alpha, terms)


@dataclass
class ExprInstance(Instance):
    expr: object = None
    m: int = 0
    n: int = 0
    side: str = "mixed"

    def check(self, cfg: OracleConfig) -> Verdict:
        return tracealg.vanishes(self.expr, self.m, self.n, cfg, self.side)

    def mutants(self) -> List["ExprInstance"]:
        out = [replace(self, expr=_mutate_expr(self.expr, k), mutation=f"sign{k}")
               for k in range(len(self.expr.terms))]
        out.append(replace(self, expr=_mutate_expr(self.expr, None), mutation="term"))
        return out

    def generic_point(self):
        pt = generic_mixed_point(self.m, self.n)
        return grid_point(pt) if self.side == "source" else pt

    def genuine(self, reference: Optional[Sequence] = None) -> bool:
        # trace schemas live on End(V)^m + V^n, which is always free
        return self.differs(self.generic_point())

    def differs(self, pt) -> bool:
        v = self.expr.evaluate(pt)
        return not (v.is_zero() if isinstance(v, Mat2) else v == 0)


@dataclass
class TGInstance(Instance):
    expr: ConExpr = None

    def check(self, cfg: OracleConfig) -> Verdict:
        return tgm2.tg_vanishes(self.expr, self.pres, cfg)

    def mutants(self) -> List["TGInstance"]:
        out = [replace(self, expr=_mutate_expr(self.expr, k), mutation=f"sign{k}")
               for k in range(len(self.expr.terms))]
        out.append(replace(self, expr=_mutate_expr(self.expr, None), mutation="term"))
        return out

    def differs(self, r) -> bool:
        return not _tg_value(self.expr, r).is_zero()


def _tg_value(e: ConExpr, r) -> Mat2:
    f = r.field
    total = Mat2.zero(f)
    for (_, w), c in e.terms.items():
        m = Mat2.identity(f)
        for x in w:
            m = m @ tgm2.TG.matrix(r, x)
        total = total + m.scale(f(c))
    return total


def generic_mixed_point(m: int, n: int) -> MixedPoint:
    names = [f"{c}{i}" for i in range(1, m + 1) for c in "abcd"]
    names += [f"{c}{j}" for j in range(1, n + 1) for c in "xy"]
    ring = LaurentRing(names)
    mats = [Mat2(*(ring.var(4 * i + k) for k in range(4))) for i in range(m)]
    vecs = [Vec2(ring.var(4 * m + 2 * j), ring.var(4 * m + 2 * j + 1)) for j in range(n)]
    return MixedPoint(mats, vecs, ring)


def generic_twisted_rep(spec: CentralExtSpec) -> Rep:
    base = generic_rep(spec.base)
    ring = base.field
    mats = list(base.gen_mats) + [Mat2.scalar(ring(z.sign), ring) for z in spec.central]
    return Rep(spec.presentation(), mats, base.decorations, ring)


# --- building suites -------------------------------------------------------------------


TG_RELATIONS = ("TR-CENTRAL", "THETA-CONTRACT", "STAB")
TWISTED_RELATIONS = ("TW-LOOP", "TW-ARC")


def random_tg_instance(name: str, rng: random.Random, pres: GAPresentation,
                       max_len: int) -> Optional[TGInstance]:
    if name == "TR-CENTRAL":
        a = tgm2.random_tg_word(rng, pres, 2)
        b = tgm2.random_tg_word(rng, pres, 2)
        args = (a, b)
    elif name == "THETA-CONTRACT":
        if pres.n == 0:
            return None
        args = tuple(random_point(rng, pres, max_len) for _ in range(4))
    elif name == "STAB":
        choices = [(j, s) for j, stabs in enumerate(pres.stabilizers, start=1) for s in stabs]
        if not choices:
            return None
        j, s = rng.choice(choices)
        args = (s, j, random_point(rng, pres, max_len))
    else:
        raise ValueError(f"unknown relation {name!r}")
    return TGInstance("tg", name, args, pres, expr=tgm2.tg_relation(name, *args))


def random_twisted_instance(name: str, rng: random.Random, spec: CentralExtSpec,
                            max_len: int) -> CharInstance:
    base = spec.base
    z = rng.choice(spec.central)
    zw = spec.letter(z.name)
    s = Fraction(z.sign)
    pres = spec.presentation()
    if name == "TW-LOOP":
        g = random_word(rng, base.m, max_len)
        args = (z.name, g)
        lhs, rhs = [(Fraction(1), (_loop(zw * g),))], [(s, (_loop(g),))]
    elif name == "TW-ARC":
        p, q = random_point(rng, base, max_len), random_point(rng, base, max_len)
        args = (z.name, p, q)
        lhs, rhs = [(Fraction(1), (_arc(_mv(zw, p), q),))], [(s, (_arc(p, q),))]
    else:
        raise ValueError(f"unknown twisted relation {name!r}")
    return CharInstance(
        "twisted", name, args, pres, lhs=lhs, rhs=rhs,
        sampler=lambda fld: (lambda rng: sample_twisted_rep(spec, rng, fld)),
        generic=lambda: generic_twisted_rep(spec),
    )


@dataclass
class SuiteOptions:
    instances: int = 20  # per schema
    max_word_len: int = 4
    trace_word_len: int = 4
    seed: int = 0
    extension: Optional[CentralExtSpec] = None


def schema_names(pres: GAPresentation, ext: Optional[CentralExtSpec] = None) -> List[Tuple[str, str]]:
    """``(family, name)`` of every schema that applies to ``pres``.

    With no group generators only the Grassmannian (Pluecker) part applies."""
    out: List[Tuple[str, str]] = []
    if pres.m == 0:
        out += [("char", n) for n in TRIVIAL_GROUP] if pres.n else []
        out += [("trace", n) for n in ("PLUCKER", "ANTISYM")] if pres.n else []
        return out
    for name in CHAR_RELATIONS:
        if pres.n == 0 and name in ("R2", "R3", "R5", "R5-DEF", "R6", "R7"):
            continue
        out.append(("char", name))
    for name, sch in SCHEMAS.items():
        if sch.needs_vectors and pres.n == 0:
            continue
        out.append(("trace", name))
    for name in TG_RELATIONS:
        if name == "THETA-CONTRACT" and pres.n == 0:
            continue
        if name == "STAB" and not any(pres.stabilizers):
            continue
        out.append(("tg", name))
    if ext is not None:
        out += [("twisted", n) for n in TWISTED_RELATIONS if n == "TW-LOOP" or pres.n]
    return out


def build_instances(pres: GAPresentation, opts: SuiteOptions,
                    only: Optional[str] = None) -> List[Instance]:
    out: List[Instance] = []
    for family, name in schema_names(pres, opts.extension):
        if only is not None and name != only:
            continue
        rng = random.Random(f"suite:{opts.seed}:{name}")
        for _ in range(opts.instances):
            inst = _random_instance(family, name, rng, pres, opts)
            if inst is not None:
                out.append(inst)
    return out


def _random_instance(family, name, rng, pres, opts) -> Optional[Instance]:
    if family == "char":
        return char_instance(name, random_char_args(name, rng, pres, opts.max_word_len), pres)
    if family == "trace":
        args = tracealg.random_schema_args(name, rng, pres.m, pres.n, opts.trace_word_len)
        sch = SCHEMAS[name]
        return ExprInstance("trace", name, args, pres, expr=tracealg.relation_schema(name, *args),
                            m=pres.m, n=pres.n, side=sch.side)
    if family == "tg":
        return random_tg_instance(name, rng, pres, opts.max_word_len)
    if family == "twisted":
        return random_twisted_instance(name, rng, opts.extension, opts.max_word_len)
    raise ValueError(family)


@dataclass
class Outcome:
    instance: Instance
    verdict: Verdict

    @property
    def ok(self) -> bool:
        return self.verdict.equal

    @property
    def caught(self) -> bool:
        """A mutated instance should be refuted."""
        return bool(self.instance.mutation) and not self.verdict.equal


def run(instances: Sequence[Instance], cfg: OracleConfig) -> List[Outcome]:
    return [Outcome(inst, inst.check(cfg)) for inst in instances]


def mutate(inst: Instance, kind: str = "sign",
           reference: Optional[Sequence] = None) -> Optional[Instance]:
    """The first genuine mutation of the requested kind (``sign`` falls back
    to ``term`` when no sign flip changes the identity).  ``reference`` is the
    separating library for non-free presentations."""
    cands = inst.mutants()
    if kind == "term":
        cands = [c for c in cands if c.mutation == "term"]
    else:
        cands = [c for c in cands if c.mutation != "term"] + [c for c in cands if c.mutation == "term"]
    for c in cands:
        try:
            if c.genuine(reference):
                return c
        except UnsupportedError:
            # non-free and no reference library: trust the first one
            return c
    return None


def parse_mutation(text: str) -> Tuple[str, str]:
    """``R6-sign`` -> ``("R6", "sign")``; a bare name means ``sign``."""
    if not text.strip():
        raise ValueError("empty mutation id")
    for kind in ("sign", "term"):
        if text.endswith("-" + kind):
            return text[: -len(kind) - 1], kind
    return text, "sign"


def summarize(outcomes: Sequence[Outcome]) -> Dict[str, Tuple[int, int]]:
    """Per-schema ``(passed, total)``."""
    out: Dict[str, Tuple[int, int]] = {}
    for o in outcomes:
        key = o.instance.label()
        p, t = out.get(key, (0, 0))
        out[key] = (p + int(o.ok), t + 1)
    return out
