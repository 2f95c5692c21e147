# modgen/polynomial.py
"""
Step three: spectrum -> ANF polynomial, evaluation and circuit statistics.
"""
from __future__ import annotations

import logging
from typing import Sequence, Union

import numpy as np

from modgen.schemas import AnfPolynomial, CircuitStats, ModConverter, RMSpectrum
from modgen.utils.bits import log2_length, pack_positions, popcount

LOG = logging.getLogger("modgen.polynomial")


def spectrum_to_polynomial(r: Union[RMSpectrum, Sequence[int]], index: int = 1) -> AnfPolynomial:
    """One term per spectrum one; the index of the one is the term's variable mask."""
    if not isinstance(r, RMSpectrum):
        r = RMSpectrum.from_bits(r)
    return AnfPolynomial(n=r.n, index=index, masks=tuple(r.ones()))


def polynomial_to_spectrum(poly: AnfPolynomial) -> RMSpectrum:
    return RMSpectrum(n=poly.n, bits=pack_positions(poly.masks))


def flip_term(poly: AnfPolynomial, mask: int) -> AnfPolynomial:
    """Toggle one spectrum coefficient."""
    if not 0 <= mask < (1 << poly.n):
        raise ValueError(f"mask {mask} outside 0..{(1 << poly.n) - 1}")
    return AnfPolynomial.from_masks(poly.n, poly.index, poly.masks + (mask,))


# -------- evaluation --------

def eval_polynomial(poly: AnfPolynomial, x: int) -> int:
    if not 0 <= x < (1 << poly.n):
        raise ValueError(f"input {x} outside 0..{(1 << poly.n) - 1}")
    acc = 0
    for m in poly.masks:
        if (x & m) == m:
            acc ^= 1
    return acc


def _mask_array(poly: AnfPolynomial) -> np.ndarray:
    return np.fromiter(poly.masks, dtype=np.int64, count=len(poly.masks))


def evaluate_block(poly: AnfPolynomial, start: int, size: int, masks: np.ndarray = None) -> np.ndarray:
    """
    Values of poly on inputs start..start+size-1 (aligned power-of-two block).

    Fixing the high input bits keeps only terms whose high variables are all
    set; the remaining low parts are summed over subsets with a vectorised
    butterfly.
    """
    c = log2_length(size)
    if c > poly.n or start % size or not 0 <= start < (1 << poly.n):
        raise ValueError(f"block [{start}, {start + size}) is not aligned inside 2^{poly.n}")
    if masks is None:
        masks = _mask_array(poly)
    hi = start >> c
    keep = ((masks >> c) & ~hi) == 0
    table = (np.bincount(masks[keep] & (size - 1), minlength=size) & 1).astype(np.uint8)
    for k in range(c):
        half = 1 << k
        view = table.reshape(-1, 2, half)
        view[:, 1, :] ^= view[:, 0, :]
    return table


def evaluate_all(poly: AnfPolynomial) -> np.ndarray:
    return evaluate_block(poly, 0, 1 << poly.n)


# -------- statistics --------

def _ceil_log2(v: int) -> int:
    return (max(v, 1) - 1).bit_length()


def stats_for(polys: Sequence[AnfPolynomial]) -> CircuitStats:
    term_counts = [len(p) for p in polys]
    literal_counts = []
    degrees = []
    for p in polys:
        weights = [popcount(m) for m in p.masks]
        literal_counts.append(sum(weights))
        degrees.append(max(weights, default=0))
    max_degree = max(degrees, default=0)
    return CircuitStats(
        term_counts=term_counts,
        literal_counts=literal_counts,
        degrees=degrees,
        max_degree=max_degree,
        total_terms=sum(term_counts),
        total_literals=sum(literal_counts),
        xor_depth=_ceil_log2(max(term_counts, default=0)),
        and_depth=_ceil_log2(max_degree),
    )


def compute_stats(converter: ModConverter) -> CircuitStats:
    return stats_for(converter.polys)
