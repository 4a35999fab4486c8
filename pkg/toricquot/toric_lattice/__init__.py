"""Toric lattice package - lattices in split tori with Riemann forms."""

from .toric_lattice import *
