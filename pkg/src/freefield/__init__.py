"""Free-field realizations of gl(m|n) and its level-zero affinization."""
from .core import (
    Element,
    Monomial,
    Signature,
    Variable,
    mono_mul,
    mul_var,
    parse_element,
    parse_monomial,
    partial,
    specialize_mu,
    x,
    y,
)
from .poly import MU, Poly

__version__ = "0.1.0"
