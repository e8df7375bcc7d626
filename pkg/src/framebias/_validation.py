"""Input validation helpers shared by the estimators and functional API."""

from __future__ import annotations

import numbers
from collections.abc import Iterable, Sequence

import numpy as np


def check_fraction(value, name: str, *, low: float = 0.0, high: float = 1.0,
                   inclusive: bool = True) -> float:
    """Return ``value`` as float, raising ``ValueError`` if outside the range."""
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise ValueError(f"{name} must be a real number, got {value!r}")
    value = float(value)
    ok = low <= value <= high if inclusive else low < value < high
    if not ok or np.isnan(value):
        brackets = "[]" if inclusive else "()"
        raise ValueError(f"{name} must lie in {brackets[0]}{low}, {high}{brackets[1]}, got {value}")
    return value


def check_positive_int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def check_text_pairs(X) -> list[tuple[str, str]]:
    """Validate a collection of ``(hypothesis, reference)`` string pairs.

    Accepts any iterable of 2-sequences, including an ``(n, 2)`` object array.
    """
    if isinstance(X, str):
        raise ValueError("expected a collection of (hypothesis, reference) pairs, got a string")
    pairs = []
    for i, item in enumerate(X):
        if isinstance(item, str) or len(item) != 2:
            raise ValueError(f"item {i} is not a (hypothesis, reference) pair")
        hyp, ref = item[0], item[1]
        if not isinstance(hyp, str) or not isinstance(ref, str):
            raise ValueError(f"item {i}: hypothesis and reference must be strings")
        pairs.append((hyp, ref))
    return pairs


def check_same_length(a: Sequence, b: Sequence, names: tuple[str, str] = ("x", "y")) -> None:
    if len(a) != len(b):
        raise ValueError(f"{names[0]} and {names[1]} have different lengths ({len(a)} != {len(b)})")


def check_square_matrix(matrix, name: str = "similarity", *, symmetric: bool = False,
                        nonnegative: bool = False) -> np.ndarray:
    """Return ``matrix`` as a 2-D float array after shape and value checks."""
    arr = np.asarray(matrix, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {arr.shape}")
    if arr.shape[0] == 0:
        raise ValueError(f"{name} must not be empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    if nonnegative and np.any(arr < 0):
        raise ValueError(f"{name} must be non-negative")
    if symmetric and not np.allclose(arr, arr.T, rtol=0, atol=1e-12):
        raise ValueError(f"{name} must be symmetric")
    return arr


def check_string_list(items: Iterable, name: str) -> list[str]:
    if isinstance(items, str):
        raise ValueError(f"{name} must be a list of strings, not a single string")
    out = list(items)
    for i, s in enumerate(out):
        if not isinstance(s, str):
            raise ValueError(f"{name}[{i}] is not a string")
    return out
