from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from decochar.fields import RationalField
from decochar.linalg2 import Mat2, Vec2
from decochar.oracle import OracleConfig
from decochar.tracealg import (MIXED, SCHEMAS, ConExpr, InvExpr, MixedPoint, ShapeError, Th, W, X,
                               Xi, arity, eval_con, eval_inv, grid_point, iota_word, nu_naturality,
                               nu_substitute, random_mixed_word, random_schema_args,
                               relation_schema, sample_point, schema_CON1, schema_CON1_TR,
                               schema_CON2, schema_CON2_TR, schema_CON_EQUIV, tr, tr_word,
                               vanishes)

Q = RationalField()


def _point(mats, vecs):
    return MixedPoint([Mat2.from_rows(r, Q) for r in mats], [Vec2(Q(x), Q(y)) for x, y in vecs], Q)


def test_evaluation_examples():
    pt = _point([[[1, 2], [3, 4]]], [(1, 0), (0, 1)])
    assert eval_inv(tr_word((X(1),)), pt) == 5
    assert eval_inv(tr_word((Th(1, 2),)), pt) == -1
    assert eval_inv(tr_word(()), pt) == 2
    assert eval_con(W(Xi(1)), pt) == Mat2.from_rows([[4, -2], [-3, 1]], Q)


def test_iota_word_example():
    assert iota_word((X(1), Th(1, 2))) == -W(Th(2, 1), Xi(1))
    assert W(X(1), Th(1, 2)).iota() == iota_word((X(1), Th(1, 2)))


def test_shape_errors():
    pt = _point([[[1, 0], [0, 1]]], [(1, 0)])
    with pytest.raises(ShapeError):
        eval_inv(tr_word((X(2),)), pt)
    with pytest.raises(ShapeError):
        eval_inv(tr_word((Th(1, 2),)), pt)
    with pytest.raises(ShapeError):
        relation_schema("NOPE")
    with pytest.raises(ShapeError):
        relation_schema("F", (X(1),))
    with pytest.raises(ShapeError):
        nu_substitute(tr_word((Th(1, 1),)), 0, 1)


def test_arity_and_parity():
    e = tr_word((X(2), Th(1, 3))) * tr_word((Th(1, 1),)) + 1
    assert arity(e) == (2, 3)
    assert e.parity == 0 and e.vector_degrees() == {0, 4}
    assert tr_word((X(1), Th(1, 2))).parity == 0
    assert schema_CON2((X(1),), 1, 2, 2, 1).parity == 0


mixed_words = st.lists(st.sampled_from([X(1), X(2), Xi(1), Xi(2), Th(1, 2), Th(2, 1), Th(1, 1)]),
                       max_size=5).map(tuple)


@given(mixed_words, st.integers(0, 2**32))
def test_trace_is_cyclic_and_iota_matches_adjugate(w, seed):
    pt = sample_point(2, 2, random.Random(seed), Q)
    for k in range(len(w)):
        assert tr_word(w[k:] + w[:k]) == tr_word(w)
    lhs = eval_con(iota_word(w), pt)
    assert lhs == eval_con(W(*w), pt).iota()


@given(mixed_words, mixed_words)
def test_con_packaging_consistency(a, b):
    A, B = W(*a), W(*b)
    assert schema_CON1(A, B) - schema_CON1_TR(A, B) == (
        schema_CON_EQUIV(A) * B - B * schema_CON_EQUIV(A)
    )
    for i, j, i2, j2 in [(1, 2, 2, 1), (1, 1, 2, 2), (2, 1, 1, 2)]:
        diff = schema_CON2(A, i, j, i2, j2) - schema_CON2_TR(A, i, j, i2, j2)
        assert diff == -schema_CON_EQUIV(A * W(Th(i2, j))) * W(Th(i, j2))


def test_g_schema_is_cayley_hamilton_for_equal_words():
    A = W(X(1))
    pt = sample_point(1, 0, random.Random(3), Q)
    g = relation_schema("G", A, A)
    M = pt.mats[0]
    ch = M @ M - M.scale(M.trace()) + Mat2.scalar(M.det(), Q)
    assert eval_con(g, pt) == ch.scale(Q(2)) == Mat2.zero(Q)


@pytest.mark.parametrize("name", sorted(SCHEMAS))
def test_every_schema_vanishes(name):
    rng = random.Random(f"schema:{name}")
    schema = SCHEMAS[name]
    m, n = 2, 3
    for _ in range(6):
        args = random_schema_args(name, rng, m, n, 3)
        e = relation_schema(name, *args)
        v = vanishes(e, m + (n * n if schema.side == "source" else 0),
                     0 if schema.side == "source" else n, OracleConfig(samples=4), side="mixed")
        if schema.side == "source":
            v = vanishes(e, m, n, OracleConfig(samples=4), side="source")
        assert v.equal, (name, args)


def test_corrupted_schema_is_refuted():
    e = relation_schema("PLUCKER", 1, 2, 3, 4) + tr_word((Th(1, 3),)) * tr_word((Th(2, 4),)) * 2
    assert not vanishes(e, 0, 4).equal
    assert not vanishes(tr_word((X(1),)) - tr_word((Xi(1),)) + 1, 1, 0).equal


@given(st.integers(0, 2**32))
def test_nu_naturality_on_random_words(seed):
    rng = random.Random(seed)
    m, n = rng.randint(0, 2), rng.randint(1, 2)
    total = m + n * n
    from decochar.tracealg import random_source_word

    e = tr_word(random_source_word(rng, m, n, 4)) * tr_word(random_source_word(rng, m, n, 3))
    c = ConExpr.scalar(e) * W(*random_source_word(rng, m, n, 3)) + W(X(total))
    assert nu_naturality(e, m, n, OracleConfig(samples=2, seed=seed)).equal
    assert nu_naturality(c, m, n, OracleConfig(samples=2, seed=seed)).equal


def test_nu_letter_example():
    # m=1, n=2: X(2..5) are Th(1,1), Th(1,2), Th(2,1), Th(2,2)
    assert nu_substitute(tr_word((X(3),)), 1, 2) == tr_word((Th(1, 2),))
    assert nu_substitute(W(Xi(3)), 1, 2) == -W(Th(2, 1))
    pt = _point([[[1, 2], [3, 4]]], [(1, 0), (0, 1)])
    g = grid_point(pt)
    assert g.m == 5 and g.n == 0
    assert g.mats[2].trace() == -1


def test_random_words_respect_arity():
    rng = random.Random(1)
    for _ in range(50):
        w = random_mixed_word(rng, 2, 1, 4, adjoints=False)
        m, n = arity(tr(w)) if w else (0, 0)
        assert m <= 2 and n <= 1
        assert all(x[0] != "Xi" for x in w)


def test_expression_arithmetic():
    a = tr_word((X(1),))
    assert a - a == InvExpr(MIXED)
    assert (a + 1) * 2 == a * 2 + 2
    assert tr(W(X(1)) + W(X(2))) == a + tr_word((X(2),))
    assert ConExpr.identity(MIXED).tr() == 2


def test_documented_schema_examples():
    cfg = OracleConfig(samples=50)
    f = relation_schema("F", (X(1),), (X(2),), (X(1), X(2)))
    assert vanishes(f, 2, 0, cfg).equal
    inv3 = relation_schema("INV3", (), (), 1, 2, 3, 1)
    assert inv3 == tr_word((Th(1, 2), Th(3, 1))) - tr_word((Th(1, 1),)) * tr_word((Th(3, 2),))
    assert vanishes(inv3, 0, 3, cfg).equal
    assert nu_substitute(W(X(1)), 0, 1) == W(Th(1, 1))
