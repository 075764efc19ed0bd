from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from decochar.charalg import CharAlgebra
from decochar.curves import (Arc, CurveCollection, CurveError, Loop, RULE_NAMES, SurfaceSpec,
                             graphical_rule, random_site, rotate, to_char, verify_rule,
                             verify_rule_generic)
from decochar.groupact import EMPTY, MarkedPoint, Word
from decochar.oracle import OracleConfig

TORUS = SurfaceSpec(genus=1, boundary=1, marked=2)
DATA = {"genus": 1, "boundary": 1, "marked": 2,
        "curves": [{"loop": "a1 b1 a1^-1 b1^-1"}, {"arc": {"from": ["e", 1], "to": ["a1", 2]}}]}


def test_surface_names_and_rank():
    s = SurfaceSpec(genus=1, boundary=2, marked=1)
    assert s.rank == 3
    assert s.parse("a1 b1 c1^-1") == Word((1, 2, -3))
    assert s.show(Word((1, -2))) == "a1 b1^-1"
    with pytest.raises(CurveError):
        SurfaceSpec(boundary=0)


def test_collection_from_json(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps(DATA))
    coll = CurveCollection.load(path)
    assert coll.curves[0] == Loop(Word((1, 2, -1, -2)))
    assert coll.curves[1] == Arc(MarkedPoint(EMPTY, 1), MarkedPoint(Word((1,)), 2))
    alg = CharAlgebra(TORUS.presentation())
    assert to_char(coll, alg) == alg.loop(Word((1, 2, -1, -2))) * alg.arc(
        MarkedPoint(EMPTY, 1), MarkedPoint(Word((1,)), 2))


def test_invalid_marked_reference():
    bad = dict(DATA, curves=[{"arc": {"from": ["e", 3], "to": ["e", 1]}}])
    with pytest.raises(CurveError, match="marked component 3"):
        CurveCollection.from_json(bad)
    with pytest.raises(CurveError):
        CurveCollection.from_json(dict(DATA, curves=[{"blob": 1}]))


def test_to_char_examples():
    alg = CharAlgebra(TORUS.presentation())
    a = Word((1,))
    assert to_char(CurveCollection(TORUS, [Loop(a * a.inverse())]), alg) == alg.const(2)
    p = MarkedPoint(a, 1)
    assert to_char(CurveCollection(TORUS, [Arc(p, p)]), alg) == alg.zero
    arc = Arc(MarkedPoint(EMPTY, 1), MarkedPoint(a, 2))
    assert to_char(CurveCollection(TORUS, [arc.reversed()]), alg) == -to_char(
        CurveCollection(TORUS, [arc]), alg)
    loop = Loop(Word((1, 2)))
    assert to_char(CurveCollection(TORUS, [Loop(loop.word.inverse())]), alg) == to_char(
        CurveCollection(TORUS, [loop]), alg)


def test_to_char_is_multiplicative():
    alg = CharAlgebra(TORUS.presentation())
    c1 = CurveCollection(TORUS, [Loop(Word((1,)))])
    c2 = CurveCollection(TORUS, [Arc(MarkedPoint(EMPTY, 1), MarkedPoint(Word((2,)), 2))])
    assert to_char(c1 + c2, alg) == to_char(c1, alg) * to_char(c2, alg)
    with pytest.raises(CurveError):
        c1 + CurveCollection(SurfaceSpec(), [])


def test_rule_examples():
    alg = CharAlgebra(TORUS.presentation(), canonical=False)
    g, h = Word((1,)), Word((2,))
    lhs, rhs = graphical_rule(alg, 5, g, 0, h, 0)
    assert lhs == alg.loop(g) * alg.loop(h)
    assert rhs == alg.loop(g * h) + alg.loop(g.inverse() * h)
    assert graphical_rule(alg, 3, g) == (alg.loop(g), alg.loop(g.inverse()))
    p, q, p2, q2 = (MarkedPoint(EMPTY, 1), MarkedPoint(g, 2), MarkedPoint(h, 1), MarkedPoint(EMPTY, 2))
    lhs, rhs = graphical_rule(alg, 7, p, q, p2, q2)
    assert rhs == alg.arc(p, q2) * alg.arc(p2, q) + alg.arc(p, p2) * alg.arc(q, q2)


def test_malformed_sites():
    alg = CharAlgebra(TORUS.presentation())
    with pytest.raises(CurveError):
        graphical_rule(alg, 8)
    with pytest.raises(CurveError):
        rotate(Word((1, 2)), 5)
    with pytest.raises(CurveError):
        graphical_rule(alg, 6, Word((1,)), 0, MarkedPoint(EMPTY, 1), MarkedPoint(EMPTY, 2), "middle")
    with pytest.raises(CurveError):
        random_site(2, random.Random(0), SurfaceSpec(genus=1))


surfaces = st.sampled_from([SurfaceSpec(0, 3, 2), SurfaceSpec(1, 1, 3), SurfaceSpec(1, 2, 1),
                            SurfaceSpec(0, 2, 3), SurfaceSpec(0, 4, 1)])


@settings(max_examples=40)
@given(surfaces, st.sampled_from(sorted(RULE_NAMES)), st.integers(0, 2**32))
def test_rules_hold_on_random_sites(surface, rule, seed):
    args = random_site(rule, random.Random(seed), surface, 5)
    assert verify_rule(surface, rule, args, OracleConfig(samples=4, seed=seed)).equal
    if rule != 7:
        assert verify_rule_generic(surface, rule, args)


def test_wrong_smoothing_is_refuted():
    surface = SurfaceSpec(0, 3, 1)
    alg = CharAlgebra(surface.presentation(), canonical=False)
    g, h = Word((1, 2)), Word((1, -2))
    lhs, _ = graphical_rule(alg, 5, g, 1, h, 0)
    wrong = alg.loop(g * h) + alg.loop(g * h)
    from decochar.charalg import equal

    assert not equal(lhs, wrong).equal
