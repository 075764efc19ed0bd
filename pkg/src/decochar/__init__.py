"""Decorated SL2 character algebras: symbolic relations checked by exact evaluation."""

from .fields import FieldConfigError, PrimeField, RationalField, parse_field
from .groupact import GAPresentation, MarkedPoint, UnsupportedError, Word, parse_point, parse_word
from .linalg2 import Mat2, Vec2, iota, omega, outer
from .rep import Rep, chi_arc, chi_loop, eval_word, sample_rep, validate
from .oracle import OracleConfig, Verdict
from .charalg import CharAlgebra, CharPoly, equal, reduce_heuristic, rewrite_step

__version__ = "0.1.0"
