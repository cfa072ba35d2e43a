"""Exact numerics for Q-Fano threefolds."""
from .orbifold_rr import NumericalFano, chi, genus, hilbert_coeffs
from .singularities import Basket, SingularityType, enumerate_baskets, make_type, parse_basket

__all__ = ["Basket", "NumericalFano", "SingularityType", "chi", "enumerate_baskets", "genus",
           "hilbert_coeffs", "make_type", "parse_basket"]
