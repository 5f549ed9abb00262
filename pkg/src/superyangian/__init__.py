"""Exact verification engine for the affine super Yangian of sl(m|n)."""

__version__ = "0.1.0"
