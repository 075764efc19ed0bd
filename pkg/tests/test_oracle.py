from __future__ import annotations

from fractions import Fraction

import pytest

from decochar.fields import DEFAULT_PRIME, FieldConfigError, PrimeField, RationalField
from decochar.groupact import GAPresentation, UnsupportedError, Word
from decochar.oracle import OracleConfig, compare, error_bound
from decochar.rep import chi_loop

PRES = GAPresentation(2, 0)


def test_error_bound_formula():
    cfg = OracleConfig(samples=16)
    assert error_bound(cfg, 6) == Fraction(16 * 6, DEFAULT_PRIME)
    q = OracleConfig(field=RationalField(), samples=16)
    assert error_bound(q, 6) == Fraction(96, 2**17 + 1)


def test_equal_and_unequal_verdicts():
    g = Word((1, 2))
    v = compare(lambda r: chi_loop(r, g), lambda r: chi_loop(r, g.inverse()), PRES, OracleConfig(), 6)
    assert v.equal and v.method == "oracle" and v.samples == 16 and v.witness is None
    w = compare(lambda r: chi_loop(r, g), lambda r: chi_loop(r, Word((2, 1, 1))), PRES,
                OracleConfig(), 9)
    assert not w.equal and w.witness is not None and w.witness.lhs != w.witness.rhs
    assert w.to_json()["witness"]["representation"]["matrices"]


def test_determinism_in_seed():
    g, h = Word((1,)), Word((2,))
    f = lambda r: chi_loop(r, g) * chi_loop(r, h)
    a = compare(f, lambda r: 0, PRES, OracleConfig(seed=5), 6)
    b = compare(f, lambda r: 0, PRES, OracleConfig(seed=5), 6)
    assert a.witness.lhs == b.witness.lhs


def test_config_validation():
    with pytest.raises(ValueError):
        OracleConfig(samples=0)
    with pytest.raises(FieldConfigError):
        OracleConfig(field=PrimeField(1009))


def test_non_free_without_library_is_unsupported():
    pres = GAPresentation(1, 0, (Word((1, 1)),))
    with pytest.raises(UnsupportedError):
        compare(lambda r: 0, lambda r: 0, pres, OracleConfig(), 1)
