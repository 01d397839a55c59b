"""Reconstruction algorithm implementations."""

from .approx import approx_reconstruct, verify_approx
from .base import BaseReconstructor, ReconstructionOutcome
from .bounded import BoundedDegreeReconstructor
from .exhaustive import ExhaustiveReconstructor
from .outerplanar import OuterplanarReconstructor

__all__ = [
    "BaseReconstructor",
    "ReconstructionOutcome",
    "BoundedDegreeReconstructor",
    "ExhaustiveReconstructor",
    "OuterplanarReconstructor",
    "approx_reconstruct",
    "verify_approx",
]
