import pytest
from pydantic import ValidationError

from modgen.schemas import (
    AnfPolynomial,
    ConverterSpec,
    Counterexample,
    ModConverter,
    Monomial,
    ResourceLimitError,
    TruthNumbers,
    TruthVector,
    VerificationReport,
    decode_residue,
    delta_of,
)
from modgen.polynomial import stats_for
from modgen.utils.bits import low_half_mask, variable_bit, variable_value


@pytest.mark.parametrize("p, delta", [(7, 3), (691, 10), (1, 1), (2, 2), (8, 4), (3, 2)])
def test_delta_of(p, delta):
    assert delta_of(p) == delta


def test_delta_of_rejects_zero():
    with pytest.raises(ValueError):
        delta_of(0)


@pytest.mark.parametrize("bits, value", [([0, 1], 2), ([0, 0, 0], 0), ([1], 1), ([1, 0, 1], 5)])
def test_decode_residue(bits, value):
    assert decode_residue(bits) == value


def test_spec_derives_delta():
    spec = ConverterSpec(n=3, p=3)
    assert spec.delta == 2
    assert spec.size == 8
    assert spec.model_dump() == {"n": 3, "p": 3, "delta": 2}


@pytest.mark.parametrize("n, p", [(0, 3), (3, 0), (3, -1), (25, 3)])
def test_spec_rejects_bad_values(n, p):
    with pytest.raises(ValidationError):
        ConverterSpec(n=n, p=p)


def test_build_signals_resource_limit():
    with pytest.raises(ResourceLimitError):
        ConverterSpec.build(25, 7)
    assert ConverterSpec.build(24, 7).n == 24


def test_spec_is_immutable():
    spec = ConverterSpec(n=3, p=3)
    with pytest.raises(ValidationError):
        spec.n = 4


def test_variable_convention():
    for j in range(64):
        for k in range(6):
            assert variable_value(j, k) == (j >> k) & 1
    assert variable_bit(2) == 4


def test_low_half_mask():
    # n=3, k=1: indices with bit 1 clear are 0, 1, 4, 5
    assert low_half_mask(3, 1) == 0b00110011
    assert low_half_mask(3, 2) == 0b00001111


def test_truth_vector_views():
    tv = TruthVector.from_bits([0, 1, 0, 0, 1, 0, 0, 1])
    assert tv.n == 3
    assert tv.ones() == [1, 4, 7]
    assert tv[4] == 1 and tv[2] == 0
    assert tv.popcount() == 3
    assert TruthNumbers(n=3, numbers=(1, 4, 7)).to_vector() == tv


def test_truth_vector_rejects_odd_length():
    with pytest.raises(ValueError):
        TruthVector.from_bits([0, 1, 1])


def test_truth_numbers_must_increase():
    with pytest.raises(ValueError):
        TruthNumbers(n=3, numbers=(4, 1))
    with pytest.raises(ValueError):
        TruthNumbers(n=3, numbers=(8,))


def test_monomial_variables():
    assert Monomial(6).variables() == [2, 3]
    assert Monomial(6).degree == 2
    assert Monomial(0).variables() == []


def test_duplicate_terms_cancel():
    poly = AnfPolynomial.from_masks(3, 1, [1, 3, 1, 7, 7, 7])
    assert poly.masks == (3, 7)
    assert poly.terms == frozenset({Monomial(3), Monomial(7)})


def test_polynomial_rejects_unordered_or_oversized():
    with pytest.raises(ValueError):
        AnfPolynomial(n=3, index=1, masks=(3, 1))
    with pytest.raises(ValueError):
        AnfPolynomial(n=3, index=1, masks=(8,))


def test_verification_report_consistency():
    VerificationReport(passed=True, inputs_checked=8, total_inputs=8)
    with pytest.raises(ValidationError):
        VerificationReport(passed=True, inputs_checked=5, total_inputs=8)
    with pytest.raises(ValidationError):
        VerificationReport(
            passed=True, inputs_checked=8, total_inputs=8,
            counterexample=Counterexample(input=3, expected=0, produced=1),
        )
    dumped = VerificationReport(passed=True, inputs_checked=8, total_inputs=8).model_dump(by_alias=True)
    assert dumped["pass"] is True


def test_converter_needs_delta_polynomials():
    spec = ConverterSpec(n=3, p=3)
    polys = [AnfPolynomial(n=3, index=1, masks=(1,))]
    with pytest.raises(ValueError):
        ModConverter(spec=spec, polys=tuple(polys), stats=stats_for(polys))
