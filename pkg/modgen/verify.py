# modgen/verify.py
"""
Exhaustive acceptance check of a converter against the definition X mod P = S.

The oracle computes j mod p by shifted (restoring) subtraction, a different
path from the periodic residue sequence used for generation. Polynomials are
evaluated by polynomial.evaluate_block, not by the packed transform used to
build them.
"""
from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import replace
from typing import List, Optional

import numpy as np

from modgen.config import get_settings
from modgen.polynomial import evaluate_block, flip_term, stats_for
from modgen.residue_truth import truth_vectors
from modgen.rm_transform import combinatorial_transform, fast_transform
from modgen.schemas import (
    ConverterSpec,
    Counterexample,
    ModConverter,
    ResourceLimitError,
    VerificationReport,
)
from modgen.utils.bits import is_power_of_two

LOG = logging.getLogger("modgen.verify")


def oracle_residues(start: int, stop: int, p: int) -> np.ndarray:
    """j mod p for j in [start, stop) by subtracting p * 2^s from the top shift down."""
    r = np.arange(start, stop, dtype=np.uint64)
    if stop <= start:
        return r
    shift = 0
    while (p << (shift + 1)) <= stop - 1:
        shift += 1
    for s in range(shift, -1, -1):
        d = np.uint64(p << s)
        r = np.where(r >= d, r - d, r)
    return r


def _check_block(converter: ModConverter, masks: List[np.ndarray], start: int, size: int) -> Optional[Counterexample]:
    produced = np.zeros(size, dtype=np.uint64)
    for i, (poly, m) in enumerate(zip(converter.polys, masks)):
        produced |= evaluate_block(poly, start, size, m).astype(np.uint64) << np.uint64(i)
    expected = oracle_residues(start, start + size, converter.spec.p)
    bad = np.flatnonzero(produced != expected)
    if not bad.size:
        return None
    j = int(bad[0])
    return Counterexample(input=start + j, expected=int(expected[j]), produced=int(produced[j]))


def verify_converter(converter: ModConverter, jobs: Optional[int] = None, chunks: Optional[int] = None) -> VerificationReport:
    """Check every input in [0, 2^n); keeps the smallest-input counterexample."""
    s = get_settings()
    spec = converter.spec
    jobs = max(jobs or s.JOBS, 1)
    chunks = min(chunks or s.VERIFY_CHUNKS, spec.size)
    if not is_power_of_two(chunks):
        raise ValueError(f"chunk count must be a power of two, got {chunks}")
    size = spec.size // chunks

    t0 = time.perf_counter()
    masks = [np.fromiter(p.masks, dtype=np.int64, count=len(p.masks)) for p in converter.polys]
    worst: Optional[Counterexample] = None

    with ThreadPoolExecutor(max_workers=jobs) as ex:
        futs = {ex.submit(_check_block, converter, masks, start, size): start for start in range(0, spec.size, size)}
        for fut in as_completed(futs):
            if fut.cancelled():
                continue
            cex = fut.result()
            if cex is None:
                continue
            if worst is None or cex.input < worst.input:
                worst = cex
            for other, start in futs.items():
                if start > worst.input:
                    other.cancel()

    elapsed = time.perf_counter() - t0
    checked = spec.size if worst is None else worst.input + 1
    report = VerificationReport(
        passed=worst is None,
        inputs_checked=checked,
        total_inputs=spec.size,
        counterexample=worst,
        elapsed_s=round(elapsed, 6),
    )
    if report.passed:
        LOG.info("Verified %s over %d inputs in %.3fs", spec.label(), checked, elapsed)
    else:
        LOG.error(
            "Verification FAILED for %s: input %d expected %d produced %d",
            spec.label(), worst.input, worst.expected, worst.produced,
        )
    return report


def cross_check_methods(spec: ConverterSpec) -> bool:
    """Both transforms agree on every output bit's truth vector."""
    cap = get_settings().COMBINATORIAL_N_MAX
    if spec.n > cap:
        raise ResourceLimitError(f"combinatorial method is capped at n={cap}, got n={spec.n}")
    for i, tv in enumerate(truth_vectors(spec), start=1):
        if combinatorial_transform(tv) != fast_transform(tv):
            LOG.error("Methods disagree on S(%d) of %s", i, spec.label())
            return False
    LOG.info("Methods agree on all %d outputs of %s", spec.delta, spec.label())
    return True


def mutate_converter(converter: ModConverter, output: int, mask: int) -> ModConverter:
    """Copy with one spectrum coefficient of S_output flipped; verification cleared."""
    converter.spec.check_output(output)
    polys = list(converter.polys)
    polys[output - 1] = flip_term(polys[output - 1], mask)
    return replace(converter, polys=tuple(polys), stats=stats_for(polys), verification=None, timings={})
