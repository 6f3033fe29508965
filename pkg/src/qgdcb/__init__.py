"""Exact computations in the Drinfeld double of a quantum group.

The package covers Laurent-polynomial coefficients, Cartan data and root
systems, normal forms in the double and its Heisenberg quotients, the
structural operators (bar, braid, pairings), the bar-invariant bases built
by Lusztig's lemma, and closed formulas in rank one.
"""

from .algebra import Element, Presentation, multiply, parse, presentation
from .cartan import build_cartan
from .coeff import LaurentHalf, RatFunc, qbinom, qint

__version__ = "0.1.0"

__all__ = [
    "Element", "LaurentHalf", "Presentation", "RatFunc", "build_cartan", "multiply", "parse",
    "presentation", "qbinom", "qint",
]
