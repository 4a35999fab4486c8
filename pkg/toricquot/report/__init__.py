"""Report package - analysis reports in machine and text form."""

from .report import *
