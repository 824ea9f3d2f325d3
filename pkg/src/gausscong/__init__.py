"""Exact computation and batch verification of Gauss-type supercongruences
for Apery numbers and their Apery-like relatives."""

__version__ = "0.1.0"
