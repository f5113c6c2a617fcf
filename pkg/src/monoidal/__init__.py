"""Exact monoid rings, polynomial rings and formal power series."""

from .errors import KernelError
from .monoid_ring import MonoidRing, MonoidRingElement
from .monoids import CyclicGroup, ExponentMonoid, ExponentVector, ProductMonoid, WordMonoid
from .polynomial import PolynomialRing
from .rings import QQ, QQi, ZZ, GaussianRational, ModInt, ModularRing, Ring, ring_from_selector
from .series import PowerSeries, named_series

__all__ = [
    "CyclicGroup", "ExponentMonoid", "ExponentVector", "GaussianRational", "KernelError", "ModInt",
    "ModularRing", "MonoidRing", "MonoidRingElement", "PolynomialRing", "PowerSeries", "ProductMonoid",
    "QQ", "QQi", "Ring", "WordMonoid", "ZZ", "named_series", "ring_from_selector",
]
