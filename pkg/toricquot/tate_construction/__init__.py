"""Tate construction package - Tate curves, Weil pairing, gluing and the worked example."""

from .tate_construction import *
from .genus_two import *
