"""Exact scalar fields.

Two strategies are provided: :class:`RationalField` (``fractions.Fraction``
elements) and :class:`PrimeField` (integers modulo a large prime).  Both expose
the same small surface -- conversion by calling the field, ``zero``/``one``,
``random_element`` -- so that the matrix layer never needs to know which one
is active.  No floating point is used anywhere.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Union

DEFAULT_PRIME = 2**62 - 57
MIN_SAMPLING_ORDER = 2**31


class FieldConfigError(ValueError):
    """Raised for an unusable field choice (bad prime, field too small, ...)."""


def is_probable_prime(n: int) -> bool:
    # Deterministic Miller-Rabin for n < 3.3e24 with the first 13 prime bases.
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Fp:
    """An element of the prime field with modulus ``p``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, Fp):
            if other.p != self.p:
                raise TypeError("mixing elements of different prime fields")
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise ZeroDivisionError("denominator vanishes mod p")
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return Fp(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pow__(self, k: int):
        if k < 0:
            if self.v == 0:
                raise ZeroDivisionError("division by zero in F_p")
            return Fp(pow(self.v, k, self.p), self.p)
        return Fp(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.v == o

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def signed(self) -> int:
        """Representative in (-p/2, p/2], handy for printing."""
        return self.v - self.p if self.v > self.p // 2 else self.v

    def __repr__(self):
        return f"{self.signed()} (mod p)"

    def __str__(self):
        return str(self.signed())


Scalar = Union[Fraction, Fp]


def _parse_scalar_text(text: str) -> Fraction:
    text = text.strip()
    try:
        return Fraction(text)
    except ValueError as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc


class RationalField:
    """The rationals.  Random elements are integers in ``[-bound, bound]``."""

    name = "q"
    order = None
    characteristic = 0

    def __init__(self, bound: int = 2**16):
        self.bound = bound

    def __call__(self, x) -> Fraction:
        if isinstance(x, Fp):
            raise TypeError("cannot lift an F_p element to Q")
        if isinstance(x, str):
            return _parse_scalar_text(x)
        return Fraction(x)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    @property
    def sample_set_size(self) -> int:
        return 2 * self.bound + 1

    def random_element(self, rng: random.Random) -> Fraction:
        return Fraction(rng.randint(-self.bound, self.bound))

    def __eq__(self, other):
        return isinstance(other, RationalField) and other.bound == self.bound

    def __hash__(self):
        return hash(("q", self.bound))

    def __repr__(self):
        return "Q"


class PrimeField:
    """Integers modulo a prime ``p``."""

    characteristic: int

    def __init__(self, p: int = DEFAULT_PRIME):
        if p <= 2 or not is_probable_prime(p):
            raise FieldConfigError(f"{p} is not an odd prime")
        self.p = p
        self.characteristic = p
        self.order = p
        self.name = f"fp:{p}"

    def __call__(self, x) -> Fp:
        if isinstance(x, Fp):
            if x.p != self.p:
                raise TypeError("element of a different prime field")
            return x
        if isinstance(x, str):
            x = _parse_scalar_text(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError("denominator vanishes mod p")
            return Fp(x.numerator * pow(x.denominator, -1, self.p), self.p)
        if isinstance(x, int):
            return Fp(x, self.p)
        raise TypeError(f"cannot convert {x!r} into F_{self.p}")

    @property
    def zero(self) -> Fp:
        return Fp(0, self.p)

    @property
    def one(self) -> Fp:
        return Fp(1, self.p)

    @property
    def sample_set_size(self) -> int:
        return self.p

    def random_element(self, rng: random.Random) -> Fp:
        return Fp(rng.randrange(self.p), self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))

    def __repr__(self):
        return f"F_{self.p}"


Field = Union[RationalField, PrimeField]


def parse_field(spec: str) -> Field:
    """Parse ``q`` or ``fp:PRIME`` (``fp`` alone selects the default prime)."""
    spec = spec.strip().lower()
    if spec in ("q", "qq", "rational", "rationals"):
        return RationalField()
    if spec == "fp":
        return PrimeField()
    if spec.startswith("fp:"):
        try:
            p = int(spec[3:])
        except ValueError as exc:
            raise FieldConfigError(f"bad prime in field spec {spec!r}") from exc
        return PrimeField(p)
    raise FieldConfigError(f"unknown field {spec!r} (expected 'q' or 'fp:PRIME')")


def check_sampling_field(field) -> None:
    """Reject fields too small for sound random sampling."""
    order = getattr(field, "order", None)
    if order is not None and order < MIN_SAMPLING_ORDER:
        raise FieldConfigError(
            f"field of order {order} is too small for sampling (need >= 2^31)"
        )
