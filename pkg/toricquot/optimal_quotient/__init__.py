"""Optimal quotient package - elliptic subvarieties, invariants and criteria."""

from .optimal_quotient import *
from .criteria import *
