"""
Reed-Muller X mod P Generator

Entry points:
- modgen.main: command-line driver (gen / verify / stats / tables)
- modgen.pipeline.build_converter: library entry (spec -> ModConverter)

Modules:
- schemas.py       : Shared domain types (ConverterSpec, TruthVector, RMSpectrum, ...)
- residue_truth.py : Truth vectors / truth numbers of each output bit, power-of-two passthrough
- rm_transform.py  : Truth vector <-> Zhegalkin spectrum (butterfly + combinatorial method)
- polynomial.py    : Spectrum -> ANF polynomial, evaluation, circuit statistics
- hdl_emit.py      : VHDL / Verilog / ANF text / JSON emission, structured report, re-parser
- verify.py        : Exhaustive check against the j mod p oracle
- pipeline.py      : The four-step generation flow
- config.py        : Settings (env / .env)
- utils/bits.py    : Bit-indexing convention and packed bit helpers
"""

__version__ = "0.1.0"
__author__ = "modgen maintainers"


__all__ = ["main", "pipeline"]
