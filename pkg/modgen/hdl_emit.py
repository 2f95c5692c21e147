# modgen/hdl_emit.py
"""
Step four: join the delta output equations into one design document.

Formats: VHDL, Verilog, ANF text (one polynomial per line) and JSON. Each output
is a flat XOR of AND terms in ascending mask order; single variables stand bare,
multi-variable terms are parenthesized: S(1) <= x(1) xor (x(1) and x(2)) ...
A minimal reader (parse_document) turns emitted text back into term-mask sets.
"""
from __future__ import annotations

import logging
import re
from typing import Dict, FrozenSet, List, Literal, Optional, Tuple

import orjson
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from modgen import __version__
from modgen.config import get_settings
from modgen.residue_truth import truth_vectors
from modgen.schemas import AnfPolynomial, ModConverter, VerificationError
from modgen.utils.bits import popcount, variable_bit

LOG = logging.getLogger("modgen.hdl_emit")

FORMATS = ("vhdl", "verilog", "anf-text", "json")
JSON_OPTS = orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS

IDENT_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
# VHDL basic identifier: no leading, trailing or doubled underscore
VHDL_IDENT_RE = re.compile(r"^[A-Za-z](_?[A-Za-z0-9])*$")

VHDL_RESERVED = {
    "abs", "access", "after", "alias", "all", "and", "architecture", "array", "assert",
    "attribute", "begin", "block", "body", "buffer", "bus", "case", "component",
    "configuration", "constant", "disconnect", "downto", "else", "elsif", "end", "entity",
    "exit", "file", "for", "function", "generate", "generic", "group", "guarded", "if",
    "impure", "in", "inertial", "inout", "is", "label", "library", "linkage", "literal",
    "loop", "map", "mod", "nand", "new", "next", "nor", "not", "null", "of", "on", "open",
    "or", "others", "out", "package", "port", "postponed", "procedure", "process", "pure",
    "range", "record", "register", "reject", "rem", "report", "return", "rol", "ror",
    "select", "severity", "signal", "shared", "sla", "sll", "sra", "srl", "subtype", "then",
    "to", "transport", "type", "unaffected", "units", "until", "use", "variable", "wait",
    "when", "while", "with", "xnor", "xor",
    # port names (VHDL is case-insensitive)
    "x", "s",
}
VERILOG_RESERVED = {
    "always", "and", "assign", "automatic", "begin", "buf", "bufif0", "bufif1", "case", "casex",
    "casez", "cell", "cmos", "config", "deassign", "default", "defparam", "design", "disable",
    "edge", "else", "end", "endcase", "endconfig", "endfunction", "endgenerate", "endmodule",
    "endprimitive", "endspecify", "endtable", "endtask", "event", "for", "force", "forever",
    "fork", "function", "generate", "genvar", "highz0", "highz1", "if", "ifnone", "incdir",
    "include", "initial", "inout", "input", "instance", "integer", "join", "large", "liblist",
    "library", "localparam", "macromodule", "medium", "module", "nand", "negedge", "nmos", "nor",
    "noshowcancelled", "not", "notif0", "notif1", "or", "output", "parameter", "pmos", "posedge",
    "primitive", "pull0", "pull1", "pulldown", "pullup", "pulsestyle_onevent",
    "pulsestyle_ondetect", "rcmos", "real", "realtime", "reg", "release", "repeat", "rnmos",
    "rpmos", "rtran", "rtranif0", "rtranif1", "scalared", "showcancelled", "signed", "small",
    "specify", "specparam", "strong0", "strong1", "supply0", "supply1", "table", "task", "time",
    "tran", "tranif0", "tranif1", "tri", "tri0", "tri1", "triand", "trior", "trireg", "unsigned",
    "use", "vectored", "wait", "wand", "weak0", "weak1", "while", "wire", "wor", "xnor", "xor",
    # port names
    "x", "S",
}


class EmitOptions(BaseModel):
    model_config = ConfigDict(frozen=True)

    format: Literal["vhdl", "verilog", "anf-text", "json"] = "vhdl"
    entity: str = "mod_p"
    one_indexed: bool = True
    balanced: bool = False
    wrap_column: Optional[int] = Field(default=None, ge=0)   # None -> settings, 0 -> no wrapping
    allow_unverified: bool = False

    @field_validator("entity")
    @classmethod
    def _identifier(cls, v: str) -> str:
        if not IDENT_RE.match(v or ""):
            raise ValueError(f"invalid identifier {v!r} (letters, digits, underscore; not starting with a digit)")
        return v

    @model_validator(mode="after")
    def _not_reserved(self):
        if self.format == "vhdl" and not VHDL_IDENT_RE.match(self.entity):
            raise ValueError(f"{self.entity!r} is not a VHDL basic identifier (no leading, trailing or double underscore)")
        if self.format == "vhdl" and self.entity.lower() in VHDL_RESERVED:
            raise ValueError(f"{self.entity!r} is reserved in VHDL")
        if self.format == "verilog" and self.entity in VERILOG_RESERVED:
            raise ValueError(f"{self.entity!r} is reserved in Verilog")
        return self


# -------- per-format surface syntax --------

class _Syntax:
    def __init__(self, var: str, out: str, xor: str, and_: str, zero: str, one: str):
        self.var = var
        self.out = out
        self.xor = xor
        self.and_ = and_
        self.zero = zero
        self.one = one


_SYNTAX = {
    "vhdl": _Syntax("x({})", "S({})", " xor ", " and ", "'0'", "'1'"),
    "verilog": _Syntax("x[{}]", "S[{}]", " ^ ", " & ", "1'b0", "1'b1"),
    "anf-text": _Syntax("x({})", "S({})", " xor ", " and ", "0", "1"),
}


def _term_text(mask: int, n: int, syn: _Syntax, base: int) -> str:
    if mask == 0:
        return syn.one
    names = [syn.var.format(k + base) for k in range(n) if mask & variable_bit(k)]
    if len(names) == 1:
        return names[0]
    return "(" + syn.and_.join(names) + ")"


def _balanced(terms: List[str], syn: _Syntax) -> str:
    if len(terms) == 1:
        return terms[0]
    mid = len(terms) // 2
    return "(" + _balanced(terms[:mid], syn) + syn.xor + _balanced(terms[mid:], syn) + ")"


def expression(poly: AnfPolynomial, fmt: str, one_indexed: bool = True, balanced: bool = False) -> str:
    """Right-hand side for one output; constant zero for the empty polynomial."""
    syn = _SYNTAX[fmt]
    if poly.is_zero:
        return syn.zero
    base = 1 if one_indexed else 0
    terms = [_term_text(m, poly.n, syn, base) for m in poly.masks]
    if balanced:
        return _balanced(terms, syn)
    return syn.xor.join(terms)


def _wrap(head: str, expr: str, tail: str, op: str, column: int) -> List[str]:
    """Break only before XOR operators; the token sequence is unchanged."""
    if column <= 0 or len(head) + len(expr) + len(tail) <= column:
        return [head + expr + tail]
    parts = expr.split(op)
    pieces = [parts[0]] + [op.strip() + " " + p for p in parts[1:]]
    indent = " " * len(head)
    lines: List[str] = []
    line = head + pieces[0]
    for k, piece in enumerate(pieces[1:], start=2):
        extra = len(tail) if k == len(pieces) else 0
        if len(line) + 1 + len(piece) + extra > column:
            lines.append(line)
            line = indent + piece
        else:
            line = line + " " + piece
    lines.append(line + tail)
    return lines


# -------- documents --------

def _header_comment(converter: ModConverter, marker: str) -> List[str]:
    spec = converter.spec
    return [
        f"{marker} {spec.label()}: delta={spec.delta}, terms={converter.stats.total_terms}",
        f"{marker} generated by modgen {__version__} (method={converter.method}); XOR/AND only",
    ]


def _vhdl(converter: ModConverter, opts: EmitOptions, column: int) -> List[str]:
    spec = converter.spec
    lo = 1 if opts.one_indexed else 0
    lines = _header_comment(converter, "--") + [
        "library ieee;",
        "use ieee.std_logic_1164.all;",
        "",
        f"entity {opts.entity} is",
        "  port (",
        f"    x : in  std_logic_vector({spec.n - 1 + lo} downto {lo});",
        f"    S : out std_logic_vector({spec.delta - 1 + lo} downto {lo})",
        "  );",
        f"end entity {opts.entity};",
        "",
        f"architecture rm of {opts.entity} is",
        "begin",
    ]
    syn = _SYNTAX["vhdl"]
    for poly in converter.polys:
        head = "  " + syn.out.format(poly.index - 1 + lo) + " <= "
        expr = expression(poly, "vhdl", opts.one_indexed, opts.balanced)
        lines += _wrap(head, expr, ";", syn.xor, column)
    lines += ["end architecture rm;"]
    return lines


def _verilog(converter: ModConverter, opts: EmitOptions, column: int) -> List[str]:
    spec = converter.spec
    lo = 1 if opts.one_indexed else 0
    lines = _header_comment(converter, "//") + [
        f"module {opts.entity} (",
        f"  input  wire [{spec.n - 1 + lo}:{lo}] x,",
        f"  output wire [{spec.delta - 1 + lo}:{lo}] S",
        ");",
    ]
    syn = _SYNTAX["verilog"]
    for poly in converter.polys:
        head = "  assign " + syn.out.format(poly.index - 1 + lo) + " = "
        expr = expression(poly, "verilog", opts.one_indexed, opts.balanced)
        lines += _wrap(head, expr, ";", syn.xor, column)
    lines += ["endmodule"]
    return lines


def _anf_text(converter: ModConverter, opts: EmitOptions) -> List[str]:
    lo = 1 if opts.one_indexed else 0
    lines = [f"# {converter.spec.label()}"]
    for poly in converter.polys:
        expr = expression(poly, "anf-text", opts.one_indexed, opts.balanced)
        lines.append(_SYNTAX["anf-text"].out.format(poly.index - 1 + lo) + " = " + expr)
    return lines


def _json(converter: ModConverter, opts: EmitOptions) -> str:
    lo = 1 if opts.one_indexed else 0
    doc = {
        "entity": opts.entity,
        "one_indexed": opts.one_indexed,
        "spec": converter.spec.model_dump(),
        "outputs": [{"index": p.index - 1 + lo, "masks": list(p.masks)} for p in converter.polys],
    }
    return orjson.dumps(doc, option=JSON_OPTS).decode("utf-8") + "\n"


def emit(converter: ModConverter, opts: EmitOptions) -> str:
    """Complete design document for converter in opts.format."""
    if not opts.allow_unverified and not converter.verified:
        state = "unverified" if converter.verification is None else "failing verification"
        raise VerificationError(f"refusing to emit {state} converter for {converter.spec.label()}")
    column = get_settings().WRAP_COLUMN if opts.wrap_column is None else opts.wrap_column
    if opts.format == "vhdl":
        lines = _vhdl(converter, opts, column)
    elif opts.format == "verilog":
        lines = _verilog(converter, opts, column)
    elif opts.format == "anf-text":
        lines = _anf_text(converter, opts)
    elif opts.format == "json":
        return _json(converter, opts)
    else:
        raise ValueError(f"unsupported format {opts.format!r} (allowed: {list(FORMATS)})")
    LOG.debug("Emitted %s for %s: %d lines", opts.format, converter.spec.label(), len(lines))
    return "\n".join(lines) + "\n"


def emit_report(converter: ModConverter, include_timings: bool = False) -> str:
    """Machine-readable record: spec, per-output counts, stats, verification."""
    spec = converter.spec
    truth_counts = [tv.popcount() for tv in truth_vectors(spec)]
    outputs = []
    for poly, ones in zip(converter.polys, truth_counts):
        weights = [popcount(m) for m in poly.masks]
        outputs.append({
            "index": poly.index,
            "truth_numbers": ones,
            "spectrum_ones": len(poly),
            "literals": sum(weights),
            "degree": max(weights, default=0),
        })
    verification = None
    if converter.verification is not None:
        exclude = None if include_timings else {"elapsed_s"}
        verification = converter.verification.model_dump(mode="json", by_alias=True, exclude=exclude)
    doc = {
        "tool": {"name": "modgen", "version": __version__},
        "spec": spec.model_dump(),
        "method": converter.method,
        "outputs": outputs,
        "stats": converter.stats.model_dump(),
        "verification": verification,
    }
    if include_timings:
        doc["timings"] = {k: round(v, 6) for k, v in sorted(converter.timings.items())}
    return orjson.dumps(doc, option=JSON_OPTS).decode("utf-8") + "\n"


# -------- minimal reader --------

_TOKEN_RE = re.compile(
    r"\s*(?:"
    r"(?P<var>x[\(\[](?P<k>\d+)[\)\]])"
    r"|(?P<const>1'b[01]|'[01]'|[01])"
    r"|(?P<op>xor|and|\^|&)"
    r"|(?P<paren>[()])"
    r")"
)

_ASSIGN_RE = {
    "vhdl": re.compile(r"\bS\((\d+)\)\s*<=\s*(.*?);", re.S),
    "verilog": re.compile(r"\bassign\s+S\[(\d+)\]\s*=\s*(.*?);", re.S),
    "anf-text": re.compile(r"^S\((\d+)\)\s*=\s*(.*)$", re.M),
}

_COMMENT_RE = {
    "vhdl": re.compile(r"--[^\n]*"),
    "verilog": re.compile(r"//[^\n]*"),
    "anf-text": re.compile(r"^#[^\n]*", re.M),
}


def tokenize(expr: str) -> List[Tuple[str, str]]:
    out: List[Tuple[str, str]] = []
    pos = 0
    expr = expr.rstrip()
    while pos < len(expr):
        m = _TOKEN_RE.match(expr, pos)
        if not m or m.end() == pos:
            raise ValueError(f"unexpected text at {pos}: {expr[pos:pos + 20]!r}")
        pos = m.end()
        if m.group("var"):
            out.append(("var", m.group("k")))
        elif m.group("const"):
            out.append(("const", "1" if m.group("const").strip("'").endswith("1") else "0"))
        elif m.group("op"):
            out.append(("op", "xor" if m.group("op") in ("xor", "^") else "and"))
        else:
            out.append((m.group("paren"), m.group("paren")))
    return out


def _and(a: FrozenSet[int], b: FrozenSet[int]) -> FrozenSet[int]:
    odd = set()
    for x in a:
        for y in b:
            odd ^= {x | y}
    return frozenset(odd)


class _Parser:
    def __init__(self, tokens: List[Tuple[str, str]], base: int):
        self.tokens = tokens
        self.pos = 0
        self.base = base

    def _peek(self) -> Optional[Tuple[str, str]]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def parse(self) -> FrozenSet[int]:
        value = self._xor()
        if self._peek() is not None:
            raise ValueError(f"trailing tokens: {self.tokens[self.pos:]}")
        return value

    def _xor(self) -> FrozenSet[int]:
        value = self._and()
        while self._peek() == ("op", "xor"):
            self.pos += 1
            value = value ^ self._and()
        return value

    def _and(self) -> FrozenSet[int]:
        value = self._atom()
        while self._peek() == ("op", "and"):
            self.pos += 1
            value = _and(value, self._atom())
        return value

    def _atom(self) -> FrozenSet[int]:
        tok = self._peek()
        if tok is None:
            raise ValueError("unexpected end of expression")
        self.pos += 1
        kind, text = tok
        if kind == "var":
            return frozenset({variable_bit(int(text) - self.base)})
        if kind == "const":
            return frozenset({0}) if text == "1" else frozenset()
        if kind == "(":
            value = self._xor()
            if self._peek() != (")", ")"):
                raise ValueError("missing closing parenthesis")
            self.pos += 1
            return value
        raise ValueError(f"unexpected token {tok}")


def parse_expression(expr: str, one_indexed: bool = True) -> FrozenSet[int]:
    """XOR/AND expression -> set of term masks."""
    return _Parser(tokenize(expr), 1 if one_indexed else 0).parse()


def parse_document(text: str, fmt: str, one_indexed: bool = True) -> Dict[int, FrozenSet[int]]:
    """Emitted document -> {1-based output index: term masks}."""
    shift = 0 if one_indexed else 1
    if fmt == "json":
        doc = orjson.loads(text)
        return {o["index"] + shift: frozenset(o["masks"]) for o in doc["outputs"]}
    if fmt not in _ASSIGN_RE:
        raise ValueError(f"unsupported format {fmt!r} (allowed: {list(FORMATS)})")
    body = _COMMENT_RE[fmt].sub("", text)
    out: Dict[int, FrozenSet[int]] = {}
    for m in _ASSIGN_RE[fmt].finditer(body):
        out[int(m.group(1)) + shift] = parse_expression(m.group(2), one_indexed)
    return out
