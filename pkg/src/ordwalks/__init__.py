"""Ordinal walks, oscillation and the order/torus constructions built on them."""

from .ordinal import Ordinal, add, parse_cnf
from .csequence import OrdinalSet, c_of, f_set
from .walks import WalkOracle

__version__ = "0.1.0"

__all__ = ["Ordinal", "OrdinalSet", "WalkOracle", "add", "c_of", "f_set", "parse_cnf"]
