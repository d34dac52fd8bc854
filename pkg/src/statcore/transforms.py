"""Integer pre/post processing done outside the core.

Everything stays in exact int64 arithmetic; the 1/sqrt(2) normalisation of the
Hadamard transform is never applied. Use :func:`extract_common_factor` to pull
out the overall scale.
"""
from __future__ import annotations

import math
from typing import Sequence

import numpy as np

INT64_MAX = np.iinfo(np.int64).max


def _as_logical(vec: Sequence[int]) -> tuple[np.ndarray, int]:
    try:
        arr = np.array(vec, dtype=np.int64)
    except OverflowError:
        raise OverflowError("input entries exceed int64") from None
    if arr.ndim != 1 or arr.size == 0 or arr.size & (arr.size - 1):
        raise ValueError(f"length must be a power of two, got {arr.size}")
    return arr, arr.size.bit_length() - 1


def fwht(vec: Sequence[int]) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform.

    ``out[a] = sum_x (-1)**popcount(a & x) * vec[x]``, computed with ``n``
    butterfly stages. Raises ``OverflowError`` if the result could leave int64.
    """
    arr, n = _as_logical(vec)
    peak = max(int(arr.max()), -int(arr.min()))
    # |out[a]| <= 2**n * max|vec|
    if peak and peak > INT64_MAX >> n:
        raise OverflowError(f"transform of {2 ** n} entries with max |entry| {peak} may overflow int64")
    out = arr
    h = 1
    while h < out.size:
        blocks = out.reshape(-1, 2, h)
        lo = blocks[:, 0, :].copy()
        hi = blocks[:, 1, :]
        blocks[:, 0, :] += hi
        blocks[:, 1, :] = lo - hi
        h *= 2
    return out


def extract_common_factor(vec: Sequence[int]) -> tuple[int, np.ndarray]:
    """Split ``vec`` into ``factor * reduced`` with ``factor = gcd(|entries|)``.

    The zero vector gets factor 1.
    """
    arr = np.asarray(vec, dtype=np.int64)
    factor = int(np.gcd.reduce(np.abs(arr))) if arr.size else 0
    factor = factor or 1
    return factor, arr // factor


def basis_vector(n: int, index: int) -> np.ndarray:
    if not 0 <= index < 1 << n:
        raise ValueError(f"basis index {index} outside [0, {1 << n})")
    out = np.zeros(1 << n, dtype=np.int64)
    out[index] = 1
    return out


def preprocess(n: int, basis_index: int, apply_hadamard: bool = True) -> np.ndarray:
    """Basis vector at ``basis_index``, optionally Hadamard-transformed to its ±1 character."""
    vec = basis_vector(n, basis_index)
    return fwht(vec) if apply_hadamard else vec


def popcount(x: int) -> int:
    return bin(x).count("1")


def character(n: int, index: int) -> np.ndarray:
    """``x -> (-1)**popcount(index & x)``, computed directly."""
    return np.array([-1 if popcount(index & x) & 1 else 1 for x in range(1 << n)], dtype=np.int64)


def is_power_of_two_length(vec) -> bool:
    size = len(vec)
    return size > 0 and not size & (size - 1)


def log2_length(vec) -> int:
    if not is_power_of_two_length(vec):
        raise ValueError(f"length must be a power of two, got {len(vec)}")
    return int(math.log2(len(vec)))
