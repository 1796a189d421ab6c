"""Exact arithmetic for composition algebras, cubic norm structures, the
Freudenthal construction, rank-one lifting constructions, and twisted orbit
parametrizations
over Q and Z."""

__version__ = "0.1.0"
