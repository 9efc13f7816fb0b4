"""HTTP facade over the invariant engine."""

from .app import create_app

__all__ = ["create_app"]
