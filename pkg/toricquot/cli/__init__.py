"""CLI package - the toricquot command."""

from .cli import *
