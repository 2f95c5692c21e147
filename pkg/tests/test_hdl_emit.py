from dataclasses import replace

import orjson
import pytest
from pydantic import ValidationError

from modgen.hdl_emit import (
    EmitOptions,
    emit,
    emit_report,
    expression,
    parse_document,
    parse_expression,
    tokenize,
)
from modgen.pipeline import build_and_verify, build_converter
from modgen.residue_truth import passthrough_converter, truth_vectors
from modgen.rm_transform import fast_transform
from modgen.schemas import AnfPolynomial, ConverterSpec, VerificationError
from modgen.verify import verify_converter

S1_TERMS = "x(1) xor (x(1) and x(2)) xor x(3) xor (x(2) and x(3)) xor (x(1) and x(2) and x(3))"


def _verified(converter):
    return replace(converter, verification=verify_converter(converter))


def test_anf_text_matches_golden(converter_3_3, golden_dir):
    text = emit(converter_3_3, EmitOptions(format="anf-text"))
    assert text == (golden_dir / "mod3_n3.anf").read_text(encoding="utf-8")


@pytest.mark.parametrize("name, fmt", [
    ("mod5_n5.vhd", "vhdl"),
    ("mod5_n5.v", "verilog"),
    ("mod7_n10.vhd", "vhdl"),
    ("mod7_n10.v", "verilog"),
])
def test_hdl_matches_golden(golden_dir, name, fmt):
    n, p = {"mod5_n5": (5, 5), "mod7_n10": (10, 7)}[name.split(".")[0]]
    converter = build_and_verify(ConverterSpec(n=n, p=p))
    text = emit(converter, EmitOptions(format=fmt, wrap_column=100))
    assert text == (golden_dir / name).read_text(encoding="utf-8")


def test_vhdl_mod3_line(converter_3_3):
    text = emit(converter_3_3, EmitOptions(format="vhdl", wrap_column=0))
    assert f"  S(1) <= {S1_TERMS};" in text.splitlines()
    assert "x : in  std_logic_vector(3 downto 1);" in text
    assert "S : out std_logic_vector(2 downto 1)" in text
    assert "entity mod_p is" in text


def test_verilog_surface(converter_3_3):
    text = emit(converter_3_3, EmitOptions(format="verilog", wrap_column=0))
    assert "  assign S[1] = x[1] ^ (x[1] & x[2]) ^ x[3] ^ (x[2] & x[3]) ^ (x[1] & x[2] & x[3]);" in text
    assert "input  wire [3:1] x," in text
    assert text.rstrip().endswith("endmodule")


def test_passthrough_vhdl():
    conv = _verified(passthrough_converter(ConverterSpec(n=10, p=8)))
    lines = emit(conv, EmitOptions(format="vhdl")).splitlines()
    for i in (1, 2, 3):
        assert f"  S({i}) <= x({i});" in lines
    assert "  S(4) <= '0';" in lines


def test_constant_literals():
    zero = AnfPolynomial(n=3, index=1)
    one = AnfPolynomial(n=3, index=1, masks=(0, 1))
    assert expression(zero, "vhdl") == "'0'"
    assert expression(zero, "verilog") == "1'b0"
    assert expression(zero, "anf-text") == "0"
    assert expression(one, "vhdl") == "'1' xor x(1)"
    assert parse_expression("'1' xor x(1)") == frozenset({0, 1})


def test_zero_indexed_ports(converter_3_3):
    text = emit(converter_3_3, EmitOptions(format="vhdl", one_indexed=False, wrap_column=0))
    assert "std_logic_vector(2 downto 0)" in text
    assert "  S(0) <= x(0) xor (x(0) and x(1)) xor x(2)" in text


def test_balanced_tree(converter_3_3):
    text = emit(converter_3_3, EmitOptions(format="anf-text", balanced=True))
    assert "S(1) = ((x(1) xor (x(1) and x(2))) xor (x(3) xor ((x(2) and x(3)) xor (x(1) and x(2) and x(3)))))" in text


@pytest.mark.parametrize("fmt", ["vhdl", "verilog", "anf-text", "json"])
@pytest.mark.parametrize("one_indexed", [True, False])
@pytest.mark.parametrize("balanced", [False, True])
def test_reparse_recovers_terms(golden_converters, fmt, one_indexed, balanced):
    for converter in golden_converters:
        opts = EmitOptions(format=fmt, one_indexed=one_indexed, balanced=balanced, wrap_column=40)
        parsed = parse_document(emit(converter, opts), fmt, one_indexed=one_indexed)
        assert parsed == {p.index: frozenset(p.masks) for p in converter.polys}


@pytest.mark.parametrize("fmt", ["vhdl", "verilog", "anf-text", "json"])
def test_emission_is_deterministic(fmt):
    spec = ConverterSpec(n=10, p=7)
    first = emit(build_and_verify(spec), EmitOptions(format=fmt))
    second = emit(build_and_verify(spec), EmitOptions(format=fmt))
    assert first == second


def test_wrapping_keeps_lines_short(golden_converters):
    converter = golden_converters[2]
    text = emit(converter, EmitOptions(format="vhdl", wrap_column=60))
    body = [line for line in text.splitlines() if not line.startswith("--")]
    assert any(line.lstrip().startswith("xor ") for line in body)
    for line in body:
        # a line only overruns when it holds a single term
        assert len(line) <= 60 or " xor " not in line.strip()


@pytest.mark.parametrize("fmt", ["vhdl", "verilog"])
def test_only_xor_and_operators(golden_converters, fmt):
    converter = golden_converters[1]
    text = emit(converter, EmitOptions(format=fmt, wrap_column=0))
    for line in text.splitlines():
        if ("<=" in line and "S(" in line) or "assign" in line:
            rhs = line.split("<=" if fmt == "vhdl" else "=", 1)[1].rstrip(";")
            ops = {tok for kind, tok in tokenize(rhs) if kind == "op"}
            assert ops <= {"xor", "and"}


@pytest.mark.parametrize("entity", ["1abc", "bad-name", "", "a b"])
def test_invalid_identifier(entity):
    with pytest.raises(ValidationError):
        EmitOptions(entity=entity)


def test_reserved_identifier():
    with pytest.raises(ValidationError):
        EmitOptions(format="vhdl", entity="Entity")
    with pytest.raises(ValidationError):
        EmitOptions(format="verilog", entity="module")
    assert EmitOptions(format="verilog", entity="entity").entity == "entity"


@pytest.mark.parametrize("entity", ["while", "generate", "task", "posedge", "wand", "localparam", "genvar", "S"])
def test_verilog_keywords_rejected(entity):
    with pytest.raises(ValidationError):
        EmitOptions(format="verilog", entity=entity)


@pytest.mark.parametrize("entity", ["_mod", "mod_", "mod__p"])
def test_vhdl_underscore_rules(entity):
    with pytest.raises(ValidationError):
        EmitOptions(format="vhdl", entity=entity)
    # legal in Verilog
    assert EmitOptions(format="verilog", entity=entity).entity == entity


def test_unsupported_format():
    with pytest.raises(ValidationError):
        EmitOptions(format="edif")
    with pytest.raises(ValueError):
        parse_document("", "edif")


def test_unverified_converter_is_refused():
    converter = build_converter(ConverterSpec(n=4, p=3))
    with pytest.raises(VerificationError):
        emit(converter, EmitOptions())
    assert "entity mod_p" in emit(converter, EmitOptions(allow_unverified=True))


# -------- report --------

def test_report_mod3_counts(converter_3_3):
    doc = orjson.loads(emit_report(converter_3_3))
    assert [o["truth_numbers"] for o in doc["outputs"]] == [3, 2]
    assert [o["spectrum_ones"] for o in doc["outputs"]] == [5, 4]
    assert doc["verification"]["pass"] is True
    assert "elapsed_s" not in doc["verification"]
    assert doc["spec"] == {"n": 3, "p": 3, "delta": 2}


def test_report_modulus_one():
    doc = orjson.loads(emit_report(build_and_verify(ConverterSpec(n=4, p=1))))
    assert doc["outputs"] == [{"index": 1, "truth_numbers": 0, "spectrum_ones": 0, "literals": 0, "degree": 0}]
    assert doc["stats"]["total_terms"] == 0
    assert doc["verification"]["pass"] is True


def test_report_total_terms_recomputed():
    spec = ConverterSpec(n=9, p=7)
    doc = orjson.loads(emit_report(build_and_verify(spec)))
    assert doc["stats"]["total_terms"] == sum(fast_transform(tv).popcount() for tv in truth_vectors(spec))


def test_report_is_deterministic_without_timings():
    spec = ConverterSpec(n=8, p=13)
    assert emit_report(build_and_verify(spec)) == emit_report(build_and_verify(spec))
    doc = orjson.loads(emit_report(build_and_verify(spec), include_timings=True))
    assert "timings" in doc and "elapsed_s" in doc["verification"]
