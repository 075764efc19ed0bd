"""Exact 2x2 linear algebra over a pluggable field.

The skew form is fixed to the determinant of column vectors,
``omega(u, v) = x_u y_v - x_v y_u``.  With ``v^perp = omega(v, -)`` the outer
product is ``outer(v, w) = v w^perp`` and the adjoint is
``[[a, b], [c, d]]^iota = [[d, -b], [-c, a]]``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any

from .fields import check_sampling_field


@dataclass(frozen=True)
class Vec2:
    x: Any
    y: Any

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x, -self.y)

    def scale(self, s) -> "Vec2":
        return Vec2(s * self.x, s * self.y)

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def __iter__(self):
        yield self.x
        yield self.y


@dataclass(frozen=True)
class Mat2:
    """Row-major ``[[a, b], [c, d]]``."""

    a: Any
    b: Any
    c: Any
    d: Any

    @classmethod
    def identity(cls, field) -> "Mat2":
        return cls(field.one, field.zero, field.zero, field.one)

    @classmethod
    def zero(cls, field) -> "Mat2":
        z = field.zero
        return cls(z, z, z, z)

    @classmethod
    def scalar(cls, s, field) -> "Mat2":
        return cls(s, field.zero, field.zero, s)

    @classmethod
    def from_rows(cls, rows, field) -> "Mat2":
        (a, b), (c, d) = rows
        return cls(field(a), field(b), field(c), field(d))

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]

    def __add__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def scale(self, s) -> "Mat2":
        return Mat2(s * self.a, s * self.b, s * self.c, s * self.d)

    def __matmul__(self, other):
        if isinstance(other, Mat2):
            return Mat2(
                self.a * other.a + self.b * other.c,
                self.a * other.b + self.b * other.d,
                self.c * other.a + self.d * other.c,
                self.c * other.b + self.d * other.d,
            )
        if isinstance(other, Vec2):
            return Vec2(self.a * other.x + self.b * other.y, self.c * other.x + self.d * other.y)
        return NotImplemented

    __mul__ = __matmul__

    def trace(self):
        return self.a + self.d

    def det(self):
        return self.a * self.d - self.b * self.c

    def iota(self) -> "Mat2":
        return Mat2(self.d, -self.b, -self.c, self.a)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0 and self.d == 0

    def is_sl2(self) -> bool:
        return self.det() == 1

    def inverse(self) -> "Mat2":
        det = self.det()
        if det == 0:
            raise ZeroDivisionError("singular matrix")
        if det == 1:
            return self.iota()
        return self.iota().scale(1 / det)


def omega(u: Vec2, v: Vec2):
    """The SL2-invariant skew form in canonical coordinates."""
    return u.x * v.y - v.x * u.y


def outer(v: Vec2, w: Vec2) -> Mat2:
    """``v w^perp``: the rank <= 1 map ``x -> v * omega(w, x)``."""
    # w^perp as a row vector is (-y_w, x_w)
    return Mat2(-v.x * w.y, v.x * w.x, -v.y * w.y, v.y * w.x)


def iota(A: Mat2) -> Mat2:
    return A.iota()


def sample_sl2(rng: random.Random, field) -> Mat2:
    """Random ``[[a, b], [c, (1 + b c) / a]]`` with ``a != 0``; det is exactly 1."""
    check_sampling_field(field)
    while True:
        a = field.random_element(rng)
        if a != 0:
            break
    b = field.random_element(rng)
    c = field.random_element(rng)
    d = (field.one + b * c) / a
    return Mat2(a, b, c, d)


def sample_mat(rng: random.Random, field) -> Mat2:
    """Uniform element of End(V)."""
    return Mat2(*(field.random_element(rng) for _ in range(4)))


def sample_vec(rng: random.Random, field) -> Vec2:
    return Vec2(field.random_element(rng), field.random_element(rng))
