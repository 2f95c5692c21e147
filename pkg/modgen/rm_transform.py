# modgen/rm_transform.py
"""
Truth vector <-> positive-polarity Reed-Muller (Zhegalkin) spectrum.

Two independent algorithms:
  - fast_transform: GF(2) butterfly over the packed vector, O(n * 2^n) word ops.
    The transform is an involution, so the same routine maps spectra back.
  - combinatorial_transform: ascending walk over indices that keeps the spectrum
    ones found so far and decides each r_i by binomial parities (Lucas test).
"""
from __future__ import annotations

import logging
from functools import lru_cache
from typing import List, Sequence, Union

import numpy as np

from modgen.schemas import ResourceLimitError, RMSpectrum, TruthVector
from modgen.utils.bits import low_half_mask, pack_positions, unpack_array

LOG = logging.getLogger("modgen.rm_transform")

ORACLE_CAP = 4096

BitVector = Union[TruthVector, RMSpectrum, Sequence[int]]


def _coerce(v: BitVector) -> TruthVector:
    if isinstance(v, (TruthVector, RMSpectrum)):
        return TruthVector(n=v.n, bits=v.bits)
    return TruthVector.from_bits(v)


def _butterfly(bits: int, n: int) -> int:
    # entries with bit k set absorb the entry 2^k below them
    for k in range(n):
        bits ^= (bits & low_half_mask(n, k)) << (1 << k)
    return bits


# -------- fast path --------

def fast_transform(w: BitVector) -> RMSpectrum:
    """r[i] = XOR of w[j] over all j with (j AND i) = j."""
    tv = _coerce(w)
    return RMSpectrum(n=tv.n, bits=_butterfly(tv.bits, tv.n))


def inverse_transform(r: BitVector) -> TruthVector:
    """Spectrum -> truth vector; the same butterfly."""
    tv = _coerce(r)
    return TruthVector(n=tv.n, bits=_butterfly(tv.bits, tv.n))


def spectrum_numbers(r: RMSpectrum) -> List[int]:
    """B(S_i): positions of ones of the spectrum."""
    return r.ones()


# -------- binomial parity --------

def lucas_parity(i: int, a: int) -> int:
    """C(i, a) mod 2: odd iff every bit of a is <= the same bit of i."""
    return 1 if (i & a) == a else 0


@lru_cache(maxsize=2)
def _pascal_parity_rows(cap: int) -> np.ndarray:
    rows = np.zeros((cap + 1, cap + 1), dtype=np.uint8)
    rows[0, 0] = 1
    for k in range(1, cap + 1):
        rows[k, 0] = 1
        rows[k, 1:k + 1] = rows[k - 1, 1:k + 1] ^ rows[k - 1, 0:k]
    return rows


def binomial_parity_oracle(i: int, a: int) -> int:
    """C(i, a) mod 2 read off Pascal's triangle built row by row mod 2."""
    if not (0 <= i <= ORACLE_CAP and 0 <= a <= ORACLE_CAP):
        raise ResourceLimitError(f"oracle accepts 0..{ORACLE_CAP}, got i={i}, a={a}")
    if a > i:
        return 0
    return int(_pascal_parity_rows(ORACLE_CAP)[i, a])


def pascal_parity_row(i: int) -> np.ndarray:
    """Row i of Pascal's triangle mod 2 (entries a = 0..i)."""
    if not 0 <= i <= ORACLE_CAP:
        raise ResourceLimitError(f"oracle accepts 0..{ORACLE_CAP}, got i={i}")
    return _pascal_parity_rows(ORACLE_CAP)[i, :i + 1]


# -------- combinatorial method --------

def eval_truth_from_spectrum(ones: Sequence[int], i: int) -> int:
    """w_i = (sum of C(i, a_j) over the spectrum ones a_j) mod 2."""
    acc = 0
    for a in ones:
        acc ^= lucas_parity(i, a)
    return acc


def _subset_parity(ones: np.ndarray, i: int) -> int:
    """Parity of C(i, a) over the array of ones a; same rule as lucas_parity."""
    return int(np.count_nonzero((ones & i) == ones) & 1)


def combinatorial_transform(w: BitVector) -> RMSpectrum:
    """
    Walk i = 0..2^n-1 ascending. r_i = w_i xor (parity of C(i, a_j) over the
    spectrum ones already determined); a_j > i contribute nothing.
    """
    tv = _coerce(w)
    size = 1 << tv.n
    found = np.empty(size, dtype=np.int64)
    q = 0
    w_bits = unpack_array(tv.bits, size)
    for i in range(size):
        r_i = int(w_bits[i]) ^ _subset_parity(found[:q], i)
        if r_i:
            found[q] = i
            q += 1
    LOG.debug("combinatorial transform n=%d: %d spectrum ones", tv.n, q)
    return RMSpectrum(n=tv.n, bits=pack_positions(found[:q].tolist()))


def combinatorial_inverse(r: BitVector) -> TruthVector:
    """Backward direction: every w_i from the spectrum ones."""
    tv = _coerce(r)
    ones = np.asarray(tv.ones(), dtype=np.int64)
    hits = (i for i in range(1 << tv.n) if _subset_parity(ones, i))
    return TruthVector(n=tv.n, bits=pack_positions(hits))
