from __future__ import annotations

import random
from fractions import Fraction

import pytest

from decochar.charalg import CharAlgebra
from decochar.groupact import GAPresentation, Word
from decochar.oracle import OracleConfig
from decochar.suite import (CHAR_RELATIONS, SuiteOptions, build_instances, char_instance,
                            chebyshev_coefficients, mutate, parse_mutation, run, schema_names,
                            summarize)
from decochar.twisted import CentralExtSpec

# coefficients of 2 T_i(x/2), lowest degree first; computed independently
CHEB = {
    0: [2],
    1: [0, 1],
    2: [-2, 0, 1],
    3: [0, -3, 0, 1],
    4: [2, 0, -4, 0, 1],
    5: [0, 5, 0, -5, 0, 1],
    6: [-2, 0, 9, 0, -6, 0, 1],
    7: [0, -7, 0, 14, 0, -7, 0, 1],
    8: [2, 0, -16, 0, 20, 0, -8, 0, 1],
}


@pytest.mark.parametrize("i", sorted(CHEB))
def test_chebyshev_coefficients(i):
    assert chebyshev_coefficients(i) == [Fraction(c) for c in CHEB[i]]


def test_schema_names_by_presentation():
    names = {n for _, n in schema_names(GAPresentation(2, 2))}
    assert set(CHAR_RELATIONS) <= names
    assert {"F", "G", "INV2", "INV3", "CON1", "CON2", "KER1", "KER2", "TR-CENTRAL",
            "THETA-CONTRACT"} <= names
    assert "STAB" not in names
    grass = schema_names(GAPresentation(0, 4))
    assert {n for _, n in grass} == {"R2", "R6", "R7", "PLUCKER", "ANTISYM"}
    pres = GAPresentation(1, 0)
    assert not any(n in ("R5", "R6", "INV2", "PLUCKER") for _, n in schema_names(pres))
    ext = CentralExtSpec.from_json(GAPresentation(2, 2), {"central": [{"name": "z", "order": 2, "sign": -1}]})
    assert ("twisted", "TW-ARC") in schema_names(GAPresentation(2, 2), ext)


def test_full_suite_passes():
    pres = GAPresentation(2, 2)
    out = run(build_instances(pres, SuiteOptions(instances=3)), OracleConfig(samples=4))
    assert out and all(o.ok for o in out)
    table = summarize(out)
    assert all(p == t for p, t in table.values())


def test_build_is_deterministic():
    pres = GAPresentation(2, 2)
    a = build_instances(pres, SuiteOptions(instances=2, seed=4), only="R6")
    b = build_instances(pres, SuiteOptions(instances=2, seed=4), only="R6")
    assert [i.args for i in a] == [i.args for i in b]


def test_parse_mutation():
    assert parse_mutation("R6-sign") == ("R6", "sign")
    assert parse_mutation("CON2-TR-term") == ("CON2-TR", "term")
    assert parse_mutation("R4-DEF") == ("R4-DEF", "sign")
    with pytest.raises(ValueError):
        parse_mutation("")


def test_mutants_are_caught():
    pres = GAPresentation(2, 2)
    insts = build_instances(pres, SuiteOptions(instances=1, seed=1))
    for inst in insts:
        bad = mutate(inst, "sign")
        if bad is None:
            continue
        (o,) = run([bad], OracleConfig())
        assert o.caught, inst.label()


def test_chebyshev_instance_values():
    pres = GAPresentation(1, 0)
    for i in range(9):
        assert char_instance("R10", (Word((1,)), i), pres).check(OracleConfig(samples=4)).equal
