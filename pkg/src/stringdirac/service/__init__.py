"""HTTP service wrapping the core solver."""

from .app import app

__all__ = ["app"]
