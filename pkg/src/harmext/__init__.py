"""Harmonic extensions on the disk, polydisk and ball, with the classical
injectivity results and their higher-dimensional counterexamples checked
numerically."""

from . import ball, diffops, disk, polydisk, rkc, tennis, wood
from ._backend import available as available_backends
from ._backend import current as backend
from ._backend import use as use_backend
from .errors import (ConvergenceError, DomainError, HypothesisError,
                     NotHolomorphicError, ResolutionError)

__version__ = "0.1.0"

__all__ = [
    "ball", "diffops", "disk", "polydisk", "rkc", "tennis", "wood",
    "available_backends", "backend", "use_backend",
    "ConvergenceError", "DomainError", "HypothesisError",
    "NotHolomorphicError", "ResolutionError",
]
