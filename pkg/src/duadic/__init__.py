"""Duadic double circulant codes over small finite fields."""

from .codeprops import CodeReport, analyze, classify, min_distance_accelerated, min_distance_exhaustive, weight_distribution
from .ddc import BorderSpec, CirculantSpec, DdcCode, build_bordered, build_pure
from .gf import field
from .splitting import cyclotomic_cosets, enumerate_coset_splittings, verify_splitting

__version__ = "0.1.0"

__all__ = [
    "BorderSpec", "CirculantSpec", "CodeReport", "DdcCode", "analyze", "build_bordered", "build_pure",
    "classify", "cyclotomic_cosets", "enumerate_coset_splittings", "field", "min_distance_accelerated",
    "min_distance_exhaustive", "verify_splitting", "weight_distribution",
]
