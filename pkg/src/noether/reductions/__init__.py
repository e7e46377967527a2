"""Constructive reductions between rationality problems, each producing a certificate."""

from .certificate import Certificate, SchemaError, reverify

__all__ = ["Certificate", "SchemaError", "reverify"]
