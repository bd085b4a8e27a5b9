"""Exact computations for Brauer monoids of types D4 and G2."""
