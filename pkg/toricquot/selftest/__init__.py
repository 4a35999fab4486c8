"""Selftest package - seeded property suites and brute-force oracles."""

from .selftest import *
from .oracles import CosetSpace, brute_force_cokernel_profile, brute_force_profile, group_profile
