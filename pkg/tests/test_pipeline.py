import pytest

from modgen.pipeline import build_and_verify, build_converter
from modgen.schemas import ConverterSpec, ResourceLimitError


def test_mod3_polynomials():
    converter = build_converter(ConverterSpec(n=3, p=3))
    assert [p.masks for p in converter.polys] == [(1, 3, 4, 6, 7), (2, 3, 5, 6)]
    assert converter.verification is None
    assert set(converter.timings) == {"truth", "spectrum", "polynomials"}


@pytest.mark.parametrize("n, p", [(3, 3), (5, 5), (9, 7)])
def test_methods_build_the_same_circuit(n, p):
    spec = ConverterSpec(n=n, p=p)
    fast = build_converter(spec, method="fast")
    comb = build_converter(spec, method="combinatorial")
    assert fast.polys == comb.polys
    assert comb.method == "combinatorial"


def test_power_of_two_takes_passthrough():
    converter = build_converter(ConverterSpec(n=6, p=16))
    assert converter.method == "passthrough"
    assert [p.masks for p in converter.polys] == [(1,), (2,), (4,), (8,), ()]


def test_unknown_method():
    with pytest.raises(ValueError):
        build_converter(ConverterSpec(n=3, p=3), method="bdd")


def test_combinatorial_cap():
    with pytest.raises(ResourceLimitError):
        build_converter(ConverterSpec(n=17, p=3), method="combinatorial")


def test_build_and_verify_attaches_report():
    converter = build_and_verify(ConverterSpec(n=6, p=5))
    assert converter.verified
    assert converter.verification.inputs_checked == 64
    assert "verification" in converter.timings


def test_verification_can_be_skipped():
    converter = build_and_verify(ConverterSpec(n=6, p=5), verify=False)
    assert converter.verification is None
    assert not converter.verified
