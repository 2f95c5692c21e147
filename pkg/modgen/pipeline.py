# modgen/pipeline.py
"""
The generation flow: truth data -> spectrum -> polynomials (-> verification).
Emission is the caller's step (hdl_emit).
"""
from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from typing import Dict, Optional

from modgen.config import get_settings
from modgen.polynomial import spectrum_to_polynomial, stats_for
from modgen.residue_truth import passthrough_converter, truth_vectors
from modgen.rm_transform import combinatorial_transform, fast_transform
from modgen.schemas import ConverterSpec, ModConverter, ResourceLimitError
from modgen.utils.bits import is_power_of_two
from modgen.verify import verify_converter

LOG = logging.getLogger("modgen.pipeline")

METHODS = {
    "fast": fast_transform,
    "combinatorial": combinatorial_transform,
}


def build_converter(spec: ConverterSpec, method: str = "fast", jobs: Optional[int] = None) -> ModConverter:
    """Unverified converter for spec. Power-of-two moduli take the passthrough shortcut."""
    s = get_settings()
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r} (allowed: {sorted(METHODS)})")
    if method == "combinatorial" and spec.n > s.COMBINATORIAL_N_MAX:
        raise ResourceLimitError(
            f"combinatorial method is capped at n={s.COMBINATORIAL_N_MAX}, got n={spec.n}"
        )
    if is_power_of_two(spec.p):
        return passthrough_converter(spec)

    LOG.info("=== Generating %s  delta=%d  method=%s ===", spec.label(), spec.delta, method)
    timings: Dict[str, float] = {}

    t0 = time.perf_counter()
    vectors = truth_vectors(spec)
    timings["truth"] = time.perf_counter() - t0
    LOG.info("Truth vectors: %.3fs", timings["truth"])

    t0 = time.perf_counter()
    transform = METHODS[method]
    with ThreadPoolExecutor(max_workers=max(jobs or s.JOBS, 1)) as ex:
        spectra = list(ex.map(transform, vectors))
    timings["spectrum"] = time.perf_counter() - t0
    LOG.info("Spectra: %.3fs", timings["spectrum"])

    t0 = time.perf_counter()
    polys = [spectrum_to_polynomial(r, index=i) for i, r in enumerate(spectra, start=1)]
    stats = stats_for(polys)
    timings["polynomials"] = time.perf_counter() - t0
    LOG.info("Polynomials: %.3fs  terms=%s", timings["polynomials"], stats.term_counts)

    return ModConverter(spec=spec, polys=tuple(polys), stats=stats, method=method, timings=timings)


def build_and_verify(
    spec: ConverterSpec,
    method: str = "fast",
    jobs: Optional[int] = None,
    verify: bool = True,
) -> ModConverter:
    converter = build_converter(spec, method=method, jobs=jobs)
    if not verify:
        LOG.warning("Verification disabled for %s", spec.label())
        return converter
    report = verify_converter(converter, jobs=jobs)
    timings = dict(converter.timings, verification=report.elapsed_s)
    return replace(converter, verification=report, timings=timings)
