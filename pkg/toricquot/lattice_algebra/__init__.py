"""Lattice algebra package - exact integer-matrix algorithms."""

from .lattice_algebra import *
