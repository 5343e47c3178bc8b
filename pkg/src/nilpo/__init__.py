"""Exact Alexander-type invariants, jump loci and Malcev data of finitely presented groups."""

__version__ = "0.1.0"
