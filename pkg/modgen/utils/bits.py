# modgen/utils/bits.py
"""
Bit-indexing convention and packed bit-vector helpers.

Convention (used everywhere): on input X = j, variable x_{k+1} takes the value
of bit k (0-based, least significant first) of j. Bit vectors of length 2^n are
packed into a single Python int whose bit j is entry j.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, List, Sequence

import numpy as np


def variable_bit(k: int) -> int:
    """Mask of variable x_{k+1} (k is 0-based)."""
    if k < 0:
        raise ValueError(f"variable index must be >= 0, got {k}")
    return 1 << k


def variable_value(j: int, k: int) -> int:
    """Value of variable x_{k+1} on input j."""
    return 1 if j & variable_bit(k) else 0


def is_power_of_two(v: int) -> bool:
    return v > 0 and (v & (v - 1)) == 0


def log2_length(length: int) -> int:
    if not is_power_of_two(length):
        raise ValueError(f"bit vector length must be a power of two, got {length}")
    return length.bit_length() - 1


def popcount(v: int) -> int:
    return bin(v).count("1")


# -------- packing --------

def pack_array(bits: np.ndarray) -> int:
    """0/1 array (entry j -> bit j) to packed int."""
    packed = np.packbits(np.asarray(bits, dtype=np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def unpack_array(value: int, length: int) -> np.ndarray:
    """Packed int to a uint8 0/1 array of the given length."""
    nbytes = max((length + 7) // 8, 1)
    raw = np.frombuffer(value.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:length]


def pack_sequence(bits: Sequence[int]) -> int:
    value = 0
    for j, b in enumerate(bits):
        if b not in (0, 1):
            raise ValueError(f"bit vector entries must be 0 or 1, got {b!r} at {j}")
        if b:
            value |= 1 << j
    return value


def pack_positions(positions: Iterable[int]) -> int:
    value = 0
    for j in positions:
        value |= 1 << j
    return value


def positions_of_ones(value: int, length: int) -> List[int]:
    if value == 0:
        return []
    return np.flatnonzero(unpack_array(value, length)).tolist()


# -------- butterfly masks --------

@lru_cache(maxsize=32)
def low_half_mask(n: int, k: int) -> int:
    """
    Packed mask over 2^n positions selecting every index j whose bit k is 0
    (runs of 2^k ones then 2^k zeros). Built by doubling, never by division.
    """
    size = 1 << n
    run = 1 << k
    mask = (1 << run) - 1
    width = run << 1
    while width < size:
        mask |= mask << width
        width <<= 1
    return mask
