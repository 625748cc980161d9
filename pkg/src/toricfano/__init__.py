"""Exact verification of rational-curve certificates on rank-2 toric Fano 4-folds."""

__version__ = "0.1.0"
