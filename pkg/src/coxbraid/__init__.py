"""Exact computational engine for Coxeter-Weyl groups, generalised braid
groups, Hurwitz factorisations, GF(2) mapping-class combinatorics, and
local-coefficient homology of group presentations."""

__version__ = "0.1.0"
