"""Exact analysis of abelian varieties with split toric reduction.

Lattices in split tori with Riemann forms, Néron component groups,
optimal quotients to elliptic curves and the gluing construction of a
Jacobian whose component-group map to an elliptic quotient is not
surjective.
"""

__version__ = "1.0.0"
