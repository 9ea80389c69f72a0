"""Exact modular arithmetic for Gorenstein-homological invariants of
finite-dimensional algebras: bound quiver algebras, module categories,
Gorenstein-projective atlases, relative tilting theory, and two-term
complex classification, all over F_p with p larger than every dimension
in play.
"""

from .errors import GhomalgError
from .linalg import DEFAULT_PRIME

__all__ = ["GhomalgError", "DEFAULT_PRIME"]
__version__ = "0.1.0"
