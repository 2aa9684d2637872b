"""Proof kernel and consistency certificates for first-order arithmetic."""

from . import registry  # noqa: F401  registers the PR symbols

__version__ = "0.1.0"
