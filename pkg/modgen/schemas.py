# modgen/schemas.py
"""
Shared domain types and the residue decode rule.

Index conventions: outputs are S_1..S_delta and variables x_1..x_n in user-facing
text; internally both are 0-based. S_1 is the least significant residue bit.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from modgen.utils.bits import (
    log2_length,
    pack_sequence,
    popcount,
    positions_of_ones,
    variable_bit,
)

N_MAX = 24
P_MAX = 1 << 32


class ResourceLimitError(ValueError):
    """Input width or method cap exceeded."""


class VerificationError(RuntimeError):
    """Converter is unverified or failed verification."""


# ========= residue helpers =========

def delta_of(p: int) -> int:
    """Output width: floor(log2 p) + 1 (1 for p = 1)."""
    if p < 1:
        raise ValueError(f"modulus must be >= 1, got {p}")
    return p.bit_length()


def decode_residue(s_bits: Sequence[int]) -> int:
    """(S_1, S_2, ..., S_delta) -> integer, S_1 least significant."""
    value = 0
    for i, b in enumerate(s_bits):
        if b:
            value |= 1 << i
    return value


# ========= problem instance =========

class ConverterSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1, le=N_MAX, description="input bit-width")
    p: int = Field(ge=1, le=P_MAX, description="modulus")

    @computed_field  # type: ignore[misc]
    @property
    def delta(self) -> int:
        return delta_of(self.p)

    @property
    def size(self) -> int:
        return 1 << self.n

    @classmethod
    def build(cls, n: int, p: int) -> "ConverterSpec":
        """Like the constructor, but an oversized n raises ResourceLimitError."""
        if n > N_MAX:
            raise ResourceLimitError(f"n={n} exceeds N_MAX={N_MAX} (truth vectors are 2^n bits)")
        return cls(n=n, p=p)

    def check_output(self, i: int) -> None:
        if not 1 <= i <= self.delta:
            raise ValueError(f"output index must be in 1..{self.delta} for p={self.p}, got {i}")

    def label(self) -> str:
        return f"X mod {self.p} for X[{self.n}:1]"


# ========= bit-function containers =========

@dataclass(frozen=True)
class _PackedBits:
    n: int
    bits: int = 0

    def __post_init__(self):
        if not 0 <= self.n <= N_MAX:
            raise ResourceLimitError(f"n={self.n} outside 0..{N_MAX}")
        if self.bits < 0 or self.bits >> (1 << self.n):
            raise ValueError(f"packed value does not fit {1 << self.n} entries")

    @classmethod
    def from_bits(cls, bits: Sequence[int]):
        return cls(n=log2_length(len(bits)), bits=pack_sequence(bits))

    def __len__(self) -> int:
        return 1 << self.n

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < len(self):
            raise IndexError(f"index {j} outside 0..{len(self) - 1}")
        return (self.bits >> j) & 1

    def __iter__(self) -> Iterator[int]:
        for j in range(len(self)):
            yield (self.bits >> j) & 1

    def to_list(self) -> List[int]:
        return list(self)

    def ones(self) -> List[int]:
        return positions_of_ones(self.bits, len(self))

    def popcount(self) -> int:
        return popcount(self.bits)


@dataclass(frozen=True)
class TruthVector(_PackedBits):
    """w(S_i): entry j is the function value on X = j."""


@dataclass(frozen=True)
class RMSpectrum(_PackedBits):
    """r(S_i): entry i set means the monomial with variable mask i is present."""


@dataclass(frozen=True)
class TruthNumbers:
    """A(S_i): strictly increasing positions of ones of a truth vector."""
    n: int
    numbers: Tuple[int, ...] = ()

    def __post_init__(self):
        size = 1 << self.n
        prev = -1
        for j in self.numbers:
            if j <= prev or j >= size:
                raise ValueError(f"truth numbers must be strictly increasing in [0, {size}), got {j}")
            prev = j

    def __len__(self) -> int:
        return len(self.numbers)

    def to_vector(self) -> TruthVector:
        bits = 0
        for j in self.numbers:
            bits |= 1 << j
        return TruthVector(n=self.n, bits=bits)


# ========= polynomials =========

@dataclass(frozen=True, order=True)
class Monomial:
    """AND term; bit k of mask set means x_{k+1} appears. Mask 0 is the constant 1."""
    mask: int

    @property
    def degree(self) -> int:
        return popcount(self.mask)

    def variables(self) -> List[int]:
        """1-based variable numbers in ascending order."""
        out = []
        k = 0
        while variable_bit(k) <= self.mask:
            if self.mask & variable_bit(k):
                out.append(k + 1)
            k += 1
        return out


@dataclass(frozen=True)
class AnfPolynomial:
    """XOR of AND terms for output S_index; masks kept ascending and unique."""
    n: int
    index: int
    masks: Tuple[int, ...] = ()

    def __post_init__(self):
        size = 1 << self.n
        prev = -1
        for m in self.masks:
            if m <= prev or m >= size:
                raise ValueError(f"term masks must be unique, ascending and < {size}, got {m}")
            prev = m

    @classmethod
    def from_masks(cls, n: int, index: int, masks) -> "AnfPolynomial":
        """Canonicalize: duplicate terms cancel in pairs (x xor x = 0)."""
        odd = set()
        for m in masks:
            if m in odd:
                odd.remove(m)
            else:
                odd.add(m)
        return cls(n=n, index=index, masks=tuple(sorted(odd)))

    @property
    def terms(self) -> FrozenSet[Monomial]:
        return frozenset(Monomial(m) for m in self.masks)

    def __len__(self) -> int:
        return len(self.masks)

    @property
    def is_zero(self) -> bool:
        return not self.masks


# ========= results =========

class CircuitStats(BaseModel):
    model_config = ConfigDict(frozen=True)

    term_counts: List[int]
    literal_counts: List[int]
    degrees: List[int]
    max_degree: int
    total_terms: int
    total_literals: int
    xor_depth: int
    and_depth: int


class Counterexample(BaseModel):
    model_config = ConfigDict(frozen=True)

    input: int
    expected: int
    produced: int


class VerificationReport(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    passed: bool = Field(alias="pass")
    inputs_checked: int
    total_inputs: int
    counterexample: Optional[Counterexample] = None
    elapsed_s: float = 0.0

    @model_validator(mode="after")
    def _pass_consistent(self):
        expected = self.counterexample is None and self.inputs_checked == self.total_inputs
        if self.passed != expected:
            raise ValueError("pass must hold iff no counterexample and every input was checked")
        return self


@dataclass(frozen=True)
class ModConverter:
    """delta polynomials ordered S_1..S_delta, plus stats and verification status."""
    spec: ConverterSpec
    polys: Tuple[AnfPolynomial, ...]
    stats: CircuitStats
    method: str = "fast"
    verification: Optional[VerificationReport] = None
    timings: Dict[str, float] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.polys) != self.spec.delta:
            raise ValueError(f"expected {self.spec.delta} polynomials, got {len(self.polys)}")
        for i, poly in enumerate(self.polys, start=1):
            if poly.index != i or poly.n != self.spec.n:
                raise ValueError(f"polynomial {i} does not belong to {self.spec.label()}")

    @property
    def verified(self) -> bool:
        return self.verification is not None and self.verification.passed
