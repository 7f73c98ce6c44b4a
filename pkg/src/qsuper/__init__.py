"""Exact computations on the quantum superspace C_q^(2|1) and its quantum group."""

from .engine import Element, Morphism, Presentation, Tensor, check_confluence
from .qfield import Q, Scalar
from .report import Report

__all__ = ["Element", "Morphism", "Presentation", "Q", "Report", "Scalar", "Tensor", "check_confluence"]
__version__ = "0.1.0"
