# modgen/residue_truth.py
"""
Step one of the generation flow: truth data of every output bit S_i of X mod P.

S_i(j) = bit (i-1) of (j mod p) for every input j in [0, 2^n).
"""
from __future__ import annotations

import logging
from typing import List

import numpy as np

from modgen.polynomial import stats_for
from modgen.schemas import AnfPolynomial, ConverterSpec, ModConverter, TruthNumbers, TruthVector
from modgen.utils.bits import is_power_of_two, pack_array, variable_bit

LOG = logging.getLogger("modgen.residue_truth")


def residue_sequence(spec: ConverterSpec) -> np.ndarray:
    """
    j mod p for every j in [0, 2^n).

    One period 0..p-1 (or 0..2^n-1 when p exceeds the range) tiled to length
    2^n with np.resize; no per-input division.
    """
    period = np.arange(min(spec.p, spec.size), dtype=np.uint32)
    return np.resize(period, spec.size)


def _bit_plane(residues: np.ndarray, i: int) -> int:
    if (1 << (i - 1)) >= residues.size:
        # residues are below 2^n; higher planes are all zero
        return 0
    return pack_array(((residues >> np.uint32(i - 1)) & np.uint32(1)).astype(np.uint8))


def truth_vector(spec: ConverterSpec, i: int) -> TruthVector:
    """w(S_i)."""
    spec.check_output(i)
    return TruthVector(n=spec.n, bits=_bit_plane(residue_sequence(spec), i))


def truth_vectors(spec: ConverterSpec) -> List[TruthVector]:
    """w(S_1)..w(S_delta) from one shared residue sequence."""
    residues = residue_sequence(spec)
    out = [TruthVector(n=spec.n, bits=_bit_plane(residues, i)) for i in range(1, spec.delta + 1)]
    LOG.debug("truth vectors for %s: ones=%s", spec.label(), [tv.popcount() for tv in out])
    return out


def truth_numbers(spec: ConverterSpec, i: int) -> TruthNumbers:
    """A(S_i)."""
    return TruthNumbers(n=spec.n, numbers=tuple(truth_vector(spec, i).ones()))


def passthrough_converter(spec: ConverterSpec) -> ModConverter:
    """
    p = 2^d: S_i = x_i for i <= min(d, n), constant 0 above.
    No spectrum is computed.
    """
    if not is_power_of_two(spec.p):
        raise ValueError(f"passthrough needs a power-of-two modulus, got p={spec.p}")
    # delta stays d + 1 for p = 2^d, so S_{d+1} is kept as a constant-0 output
    # and the port width matches delta_of(p) for every modulus
    d = spec.p.bit_length() - 1
    polys = []
    for i in range(1, spec.delta + 1):
        masks = (variable_bit(i - 1),) if i <= min(d, spec.n) else ()
        polys.append(AnfPolynomial(n=spec.n, index=i, masks=masks))
    LOG.info("Passthrough converter for %s (d=%d)", spec.label(), d)
    return ModConverter(spec=spec, polys=tuple(polys), stats=stats_for(polys), method="passthrough")
