"""Coupled-tops laboratory: quantum symmetry blocks, spectral statistics, classical dynamics."""

__version__ = "0.1.0"

from .spinops import TwoJ

__all__ = ["TwoJ", "__version__"]
