"""Small input-validation helpers used across the public API."""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatchError, ZeroVectorError


def as_float_vector(value, dim: int | None = None, name: str = "vector") -> np.ndarray:
    """Coerce to a finite 1-D float64 array, optionally checking its length."""
    arr = np.asarray(value, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite components")
    if dim is not None and arr.shape[0] != dim:
        raise DimensionMismatchError(
            f"{name} has dimension {arr.shape[0]}, expected {dim}"
        )
    return arr


def as_nonzero_vector(value, dim: int | None = None, name: str = "vector") -> np.ndarray:
    arr = as_float_vector(value, dim, name)
    if not np.any(arr):
        raise ZeroVectorError(f"{name} is the zero vector; cosine is undefined")
    return arr


def check_range(value: float, lo: float, hi: float, name: str) -> float:
    value = float(value)
    if not (lo <= value <= hi):
        raise ValueError(f"{name} must be in [{lo}, {hi}], got {value}")
    return value


def check_positive_int(value: int, name: str) -> int:
    if int(value) != value or int(value) < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return int(value)
