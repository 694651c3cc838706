"""Exact transition kernels for four discrete-time interacting particle systems."""

from .exceptions import ChamberError, DimensionError, DomainError, IPKError, SupportError, WindowError
from .systems import CaseId, Chamber, InnovationGrid, JumpLaw, OrderedState

__version__ = "1.0.0"

__all__ = [
    "CaseId",
    "Chamber",
    "ChamberError",
    "DimensionError",
    "DomainError",
    "IPKError",
    "InnovationGrid",
    "JumpLaw",
    "OrderedState",
    "SupportError",
    "WindowError",
]
