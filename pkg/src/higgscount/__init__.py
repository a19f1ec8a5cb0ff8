"""Exact counting of twisted Higgs bundles on curves over finite fields."""

__version__ = "0.1.0"
