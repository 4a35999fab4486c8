"""Local field package - coarse model of K^x."""

from .local_field import *
