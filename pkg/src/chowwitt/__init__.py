"""Exact enriched Euler-class computations on Grassmannians and projective bundles over them."""

__version__ = "0.1.0"
