"""HTTP service wrapping the scattering engine."""

from . import api, schemas

__all__ = ["api", "schemas"]
