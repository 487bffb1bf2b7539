"""Equivariant connectivity for symmetric semi-algebraic sets of low degree."""
