"""Exact engine for the reduced glider representation ring of a finite group."""

__version__ = "0.1.0"
