"""Counting squares in Mat_n(GF(2)) and GL_n(GF(2)) through conjugacy classes."""

from f2squares.partitions import (
    ALL,
    FAMILIES,
    SEMISIMPLE,
    SEPARABLE,
    SQUARES,
    ClassFamily,
    Partition,
    conjugate,
    delta,
    delta_preimage,
    enumerate_family,
    is_in_delta_image,
    multiplicities,
)

__version__ = "0.1.0"

__all__ = [
    "ALL",
    "FAMILIES",
    "SEMISIMPLE",
    "SEPARABLE",
    "SQUARES",
    "ClassFamily",
    "Partition",
    "conjugate",
    "delta",
    "delta_preimage",
    "enumerate_family",
    "is_in_delta_image",
    "multiplicities",
]
