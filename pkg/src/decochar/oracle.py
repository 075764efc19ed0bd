"""Randomized exact identity testing on sampled representations.

Two expressions are declared equal when their values agree exactly on ``N``
independent sample points.  For a free presentation the sample points are
drawn from the whole representation variety, so a disagreement-free run
certifies equality up to a Schwartz-Zippel failure bound ``N * deg / |S|``
(``S`` the sampling set).  For a non-free presentation only the caller's
representation library is available and the verdict is refutation-only.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence

from .fields import DEFAULT_PRIME, PrimeField, check_sampling_field
from .groupact import GAPresentation, UnsupportedError
from .rep import Rep, sample_free_rep

DEFAULT_SAMPLES = 16


@dataclass
class OracleConfig:
    field: Any = field(default_factory=lambda: PrimeField(DEFAULT_PRIME))
    samples: int = DEFAULT_SAMPLES
    seed: int = 0
    reps: Optional[Sequence[Rep]] = None
    # Replaces free sampling, e.g. for twisted representations.
    sampler: Optional[Callable[[random.Random], Rep]] = None

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("need at least one sample")
        check_sampling_field(self.field)

    def rng(self, i: int) -> random.Random:
        return random.Random(f"{self.seed}:{i}")

    def method(self, pres: GAPresentation) -> str:
        if self.sampler is not None or pres.free:
            return "oracle"
        return "refutation-only"

    def draw(self, pres: GAPresentation, i: int) -> Rep:
        """The ``i``-th sample point; deterministic in ``(seed, i)``."""
        rng = self.rng(i)
        if self.sampler is not None:
            return self.sampler(rng)
        if pres.free:
            return sample_free_rep(pres, rng, self.field)
        if not self.reps:
            raise UnsupportedError(
                "non-free presentation: supply representations (--reps) for the oracle"
            )
        return self.reps[i]

    def sample_count(self, pres: GAPresentation) -> int:
        # a library is exhausted in one pass; repeating it proves nothing more
        if self.sampler is None and not pres.free and self.reps:
            return len(self.reps)
        return self.samples


@dataclass
class Witness:
    rep: Any
    lhs: Any
    rhs: Any
    index: int = 0


@dataclass
class Verdict:
    equal: bool
    method: str
    samples: int
    seed: int
    field: str
    degree: int
    error_bound: Optional[Fraction] = None
    witness: Optional[Witness] = None

    def __bool__(self):
        return self.equal

    def summary(self) -> str:
        head = "equal" if self.equal else "unequal"
        parts = [f"{head} [{self.method}]", f"samples={self.samples}", f"seed={self.seed}",
                 f"field={self.field}"]
        if self.equal and self.error_bound is not None:
            parts.append(f"error<={float(self.error_bound):.3g} (deg<={self.degree})")
        return ", ".join(parts)

    def to_json(self) -> dict:
        out = {
            "equal": self.equal,
            "method": self.method,
            "samples": self.samples,
            "seed": self.seed,
            "field": self.field,
            "degree": self.degree,
            "error_bound": str(self.error_bound) if self.error_bound is not None else None,
        }
        if self.witness is not None:
            w = self.witness
            out["witness"] = {
                "sample": w.index,
                "lhs": str(w.lhs),
                "rhs": str(w.rhs),
                "representation": w.rep.to_json() if hasattr(w.rep, "to_json") else None,
            }
        return out


def error_bound(cfg: OracleConfig, degree: int) -> Fraction:
    size = cfg.field.sample_set_size
    return min(Fraction(1), Fraction(cfg.samples * max(degree, 1), size))


def compare(
    lhs: Callable[[Rep], Any],
    rhs: Callable[[Rep], Any],
    pres: GAPresentation,
    cfg: OracleConfig,
    degree: int,
) -> Verdict:
    """Evaluate both sides on the configured sample points; stop at the first
    disagreement and return it as a witness."""
    method = cfg.method(pres)
    count = cfg.sample_count(pres)
    for i in range(count):
        r = cfg.draw(pres, i)
        a, b = lhs(r), rhs(r)
        if a != b:
            return Verdict(False, method, i + 1, cfg.seed, cfg.field.name, degree,
                           None, Witness(r, a, b, i))
    bound = error_bound(cfg, degree) if method == "oracle" else None
    return Verdict(True, method, count, cfg.seed, cfg.field.name, degree, bound)
