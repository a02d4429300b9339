"""Exact computations with finite involutive quantaloids and the categories enriched in them."""

__version__ = "0.1.0"
