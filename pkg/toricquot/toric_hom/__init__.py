"""Toric hom package - homomorphisms of uniformized varieties and component maps."""

from .toric_hom import *
