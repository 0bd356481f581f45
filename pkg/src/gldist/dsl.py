"""Text syntax for multisegments and products, and the universe JSON loader.

Grammar (whitespace is insignificant)::

    rep   := "(" mseg ")" ("*" "(" mseg ")")* ["@@" ident] | mseg
    mseg  := "empty" | seg (("+" | ",") seg)* ["@@" ident]
    seg   := "[" num ["," num] "]" ["@" ident]
    num   := ["-"] digits ["/" "2"]

``@@ident`` supplies the line for segments written without ``@ident``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources

import jsonschema

from .core import LineSpec, MultiSegment, RepSpec, Segment, Universe, format_half
from .errors import DslSyntaxError, EmptySegment, LatticeMismatch, SchemaError, UnknownLine, ValidationError

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\s*/\s*\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*(?:!chi)?)
  | (?P<op>@@|[\[\],+@()*\-])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "ident", an operator literal, or "eof"
    text: str
    start: int
    end: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:
            raise DslSyntaxError(f"unexpected character {text[pos]!r}", (pos, pos + 1), text)
        kind = mt.lastgroup
        if kind != "ws":
            tokens.append(Token(mt.group() if kind == "op" else kind, mt.group(), mt.start(), mt.end()))
        pos = mt.end()
    tokens.append(Token("eof", "", len(text), len(text)))
    return tokens


@dataclass
class _RawSeg:
    b2: int
    e2: int
    line: str | None
    span: tuple[int, int]


class _Parser:
    def __init__(self, text: str, universe: Universe | None):
        self.text = text
        self.universe = universe
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        end = tok.end if tok.end > tok.start else tok.start
        raise DslSyntaxError(message, (tok.start, end), self.text)

    def take(self, kind: str) -> Token:
        tok = self.tok
        if tok.kind != kind:
            found = "end of input" if tok.kind == "eof" else repr(tok.text)
            self.error(f"expected {kind!r}, found {found}")
        self.i += 1
        return tok

    def accept(self, kind: str) -> Token | None:
        if self.tok.kind == kind:
            return self.take(kind)
        return None

    # -- grammar ------------------------------------------------------------

    def num(self) -> tuple[int, int, int]:
        """Returns (doubled value, start, end)."""
        start = self.tok.start
        neg = self.accept("-") is not None
        tok = self.take("num")
        if "/" in tok.text:
            top, bottom = (int(x) for x in tok.text.split("/"))
            if bottom != 2:
                raise DslSyntaxError(f"only halves are allowed, got {tok.text!r}",
                                     (start, tok.end), self.text)
            doubled = top
        else:
            doubled = 2 * int(tok.text)
        return (-doubled if neg else doubled), start, tok.end

    def seg(self) -> _RawSeg:
        open_ = self.take("[")
        b2, bs, be = self.num()
        e2 = b2
        if self.accept(","):
            e2, _, _ = self.num()
        close = self.take("]")
        line = None
        if self.accept("@"):
            line = self.take("ident").text
        return _RawSeg(b2, e2, line, (open_.start, self.tokens[self.i - 1].end if line else close.end))

    def directive(self) -> str | None:
        if self.accept("@@"):
            return self.take("ident").text
        return None

    def mseg(self) -> MultiSegment:
        if self.tok.kind == "ident" and self.tok.text == "empty":
            self.take("ident")
            return MultiSegment()
        raws = [self.seg()]
        while self.tok.kind in ("+", ","):
            self.i += 1
            raws.append(self.seg())
        return self.build(raws, self.directive())

    def build(self, raws: list[_RawSeg], default: str | None) -> MultiSegment:
        out = []
        for raw in raws:
            line = raw.line or default
            if line is None:
                raise DslSyntaxError("segment has no line and no @@ default", raw.span, self.text)
            if self.universe is not None and line not in self.universe:
                err = UnknownLine(f"unknown line {line!r}")
                err.span = raw.span
                raise err
            if (raw.e2 - raw.b2) % 2:
                err = LatticeMismatch(f"[{format_half(raw.b2)},{format_half(raw.e2)}]: endpoints lie on different lattices")
                err.span = raw.span
                raise err
            if raw.b2 > raw.e2:
                err = EmptySegment(f"[{format_half(raw.b2)},{format_half(raw.e2)}] is empty")
                err.span = raw.span
                raise err
            out.append(Segment(line, raw.b2, raw.e2))
        return MultiSegment(out)

    def factor_raws(self) -> list[_RawSeg] | None:
        """Raw segments of one parenthesized factor; ``None`` for ``empty``."""
        open_ = self.take("(")
        if self.tok.kind == ")":
            self.error("empty factor", Token(")", ")", open_.start, self.tok.end))
        if self.tok.kind == "ident" and self.tok.text == "empty":
            self.error("a factor may not be empty")
        raws = [self.seg()]
        while self.tok.kind in ("+", ","):
            self.i += 1
            raws.append(self.seg())
        default = self.directive()
        if default is not None:
            for raw in raws:
                raw.line = raw.line or default
        self.take(")")
        return raws

    def rep(self) -> RepSpec:
        if self.tok.kind != "(":
            m = self.mseg()
            self.take("eof")
            if not m:
                raise DslSyntaxError("a product needs at least one nonempty factor", (0, len(self.text)), self.text)
            return RepSpec((m,))
        groups = [self.factor_raws()]
        while self.accept("*"):
            groups.append(self.factor_raws())
        default = self.directive()
        self.take("eof")
        return RepSpec(tuple(self.build(raws, default) for raws in groups))


def parse_multisegment(text: str, universe: Universe | None = None) -> MultiSegment:
    """Parse ``text`` into a canonical multisegment.

    Without a universe, line ids are accepted unchecked.
    """
    p = _Parser(text, universe)
    m = p.mseg()
    p.take("eof")
    return m


def parse_rep(text: str, universe: Universe | None = None) -> RepSpec:
    return _Parser(text, universe).rep()


def format_segment(s: Segment) -> str:
    return str(s)


def format_multisegment(m: MultiSegment) -> str:
    return str(m)


def format_rep(r: RepSpec) -> str:
    return "*".join(f"({format_multisegment(f)})" for f in r.factors)


def segment_ast(s: Segment) -> dict:
    return {"line": s.line, "b": format_half(s.b2), "e": format_half(s.e2), "length": s.length}


# ---------------------------------------------------------------------------
# universe files


def universe_schema() -> dict:
    return json.loads(resources.files("gldist.schemas").joinpath("universe.schema.json").read_text())


def _path(parts) -> str:
    return "/".join(str(p) for p in parts) or "<root>"


def universe_from_json(data) -> Universe:
    validator = jsonschema.Draft202012Validator(universe_schema())
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise SchemaError(err.message, _path(err.absolute_path))
    specs: dict[str, LineSpec] = {}
    for idx, entry in enumerate(data["lines"]):
        where = f"lines/{idx}"
        if entry["id"] in specs:
            raise SchemaError(f"duplicate id {entry['id']!r}", f"{where}/id")
        is_self = entry["conj_dual"] == "self"
        for attr in ("eta0", "dist_a"):
            if is_self and attr not in entry:
                raise SchemaError(f"self line needs {attr!r}", f"{where}/{attr}")
            if not is_self and attr in entry:
                raise SchemaError(f"{attr!r} is only allowed on self lines", f"{where}/{attr}")
        partner = None if is_self else entry["conj_dual"]["partner"]
        specs[entry["id"]] = LineSpec(entry["id"], entry["deg"], partner,
                                      entry.get("eta0"), entry.get("dist_a"))
    try:
        return Universe(specs)
    except SchemaError:
        raise
    except ValidationError as exc:
        if type(exc) is ValidationError:
            raise SchemaError(str(exc)) from exc
        raise


def parse_universe(text: str) -> Universe:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})") from exc
    return universe_from_json(data)


def load_universe(path) -> Universe:
    with open(path, encoding="utf-8") as fh:
        return parse_universe(fh.read())
