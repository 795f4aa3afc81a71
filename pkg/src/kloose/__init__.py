"""Girth, k-loose elements and k-paving matroids over small finite fields."""

__version__ = "0.1.0"
