"""Exception types shared across the package.

The CLI maps these onto its exit codes: invalid input exits 2,
enumeration guard breaches exit 3.  Internal invariant failures are
never caught; they signal a bug and should crash the run.
"""

from __future__ import annotations

__all__ = [
    "InvalidMatrixError",
    "LatticeError",
    "EnumerationGuardError",
    "InternalInvariantError",
]


class InvalidMatrixError(ValueError):
    """Input matrix violates a precondition (shape, skewness, diagonal, parse)."""


class LatticeError(ValueError):
    """Lattice operation called outside its domain (rank mismatch, non-containment)."""


class EnumerationGuardError(RuntimeError):
    """A brute-force enumeration would exceed its hard size guard."""


class InternalInvariantError(RuntimeError):
    """A quantity the theory forces came out wrong; indicates a bug, not bad input."""
