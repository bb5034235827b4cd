"""Recursive-descent parsers for the CLI's text forms.

Bundle grammar (``+`` is direct sum, whitespace is ignored)::

    expr := term ('+' term)*
    term := 'Q' | 'S' | 'O(' int ')' | 'OY(' int ')' | 'triv(' int ')'
          | 'dual(' expr ')' | 'sym(' int ',' expr ')' | 'tw(' expr ',' term ')'
          | 'pull(' expr ')'

Spaces are ``Gr(k,n)`` (rank-k quotients of an n-dimensional space) or
``P(F) over Gr(k,n)``.  GW expressions combine integers, ``h``, ``<1>`` and
``<-1>`` with ``+``, ``-``, ``*`` and juxtaposition (``3 + 12h``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from . import bundles as b
from . import gw
from .errors import DomainError, ParseError
from .gw import FieldSpec, GWElem
from .schubert import BoxShape
from .spaces import Grassmann, PicClass, ProjBundle, SpaceDesc

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<punct>\S))")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "ident", "punct", "end"
    value: str
    offset: int  # byte offset into the source text


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m or m.lastgroup is None:
            rest = text[pos:]
            if rest.strip():
                raise ParseError("unexpected character", text, len(text[:pos].encode()))
            out.append(Token("end", "", len(text.encode())))
            return out
        start = m.start(m.lastgroup)
        out.append(Token(m.lastgroup, m.group(m.lastgroup), len(text[:start].encode())))
        pos = m.end()


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, message: str, expected=()) -> ParseError:
        return ParseError(message, self.text, self.tok.offset, expected)

    def at(self, value: str) -> bool:
        return self.tok.kind != "end" and self.tok.value == value

    def eat(self, value: str) -> Token:
        if not self.at(value):
            got = self.tok.value or "end of input"
            raise self.error(f"expected {value!r}, got {got!r}", (value,))
        t = self.tok
        self.i += 1
        return t

    def integer(self) -> int:
        sign = 1
        if self.at("-"):
            self.i += 1
            sign = -1
        if self.tok.kind != "int":
            raise self.error("expected an integer", ("<integer>",))
        v = int(self.tok.value)
        self.i += 1
        return sign * v

    def end(self) -> None:
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.value!r}", ("end of input",))

    # -- bundles -------------------------------------------------------------------

    TERM_STARTS = ("Q", "S", "O", "OY", "triv", "dual", "sym", "tw", "pull")

    def bundle_expr(self) -> b.BundleExpr:
        out = self.bundle_term()
        while self.at("+"):
            self.i += 1
            out = b.DirectSum(out, self.bundle_term())
        return out

    def bundle_term(self) -> b.BundleExpr:
        t = self.tok
        if t.kind != "ident" or t.value not in self.TERM_STARTS:
            raise self.error("expected a bundle term", self.TERM_STARTS)
        self.i += 1
        name = t.value
        if name == "Q":
            return b.Q
        if name == "S":
            return b.S
        self.eat("(")
        if name in ("O", "OY", "triv"):
            v = self.integer()
            self.eat(")")
            if name == "O":
                return b.LineOnGrass(v)
            if name == "OY":
                return b.LineOnFiber(v)
            if v < 0:
                raise ParseError("triv() needs a non-negative rank", self.text, t.offset)
            return b.Trivial(v)
        if name == "dual":
            e = self.bundle_expr()
            self.eat(")")
            return b.Dual(e)
        if name == "pull":
            inner = self.tok.offset
            e = self.bundle_expr()
            self.eat(")")
            if b.uses_fiber(e):
                raise ParseError("pull() wraps base-space expressions only", self.text, inner)
            return b.Pullback(e)
        if name == "sym":
            off = self.tok.offset
            d = self.integer()
            if d < 1:
                raise ParseError("sym() needs a degree >= 1", self.text, off)
            self.eat(",")
            e = self.bundle_expr()
            self.eat(")")
            return b.Sym(d, e)
        # tw
        e = self.bundle_expr()
        self.eat(",")
        off = self.tok.offset
        line = self.bundle_term()
        if not b.is_line_syntax(line):
            raise ParseError("tw() needs a line-bundle second argument", self.text, off)
        self.eat(")")
        return b.TensorLine(e, line)

    # -- spaces --------------------------------------------------------------------

    def grassmannian(self) -> BoxShape:
        self.eat("Gr")
        self.eat("(")
        k = self.integer()
        self.eat(",")
        n = self.integer()
        self.eat(")")
        if not 1 <= k <= n:
            raise DomainError(f"Gr({k},{n}): need 1 <= k <= n (k is the rank of the quotient)")
        return BoxShape.of_grassmannian(k, n)

    def space(self) -> SpaceDesc:
        if self.at("Gr"):
            return Grassmann(self.grassmannian())
        if self.at("P"):
            self.i += 1
            self.eat("(")
            fiber = self.bundle_expr()
            self.eat(")")
            self.eat("over")
            return ProjBundle(self.grassmannian(), fiber)
        raise self.error("expected a space", ("Gr", "P"))

    # -- GW expressions ------------------------------------------------------------

    def gw_sum(self, field: FieldSpec) -> GWElem:
        out = self.gw_prod(field)
        while self.at("+") or self.at("-"):
            op = self.tok.value
            self.i += 1
            rhs = self.gw_prod(field)
            out = out + rhs if op == "+" else out - rhs
        return out

    def _atom_start(self) -> bool:
        return self.tok.kind == "int" or self.at("h") or self.at("<") or self.at("(")

    def gw_prod(self, field: FieldSpec) -> GWElem:
        out = self.gw_unary(field)
        while True:
            if self.at("*"):
                self.i += 1
                out = out * self.gw_unary(field)
            elif self._atom_start() and self.tok.kind != "int":
                out = out * self.gw_atom(field)
            else:
                return out

    def gw_unary(self, field: FieldSpec) -> GWElem:
        if self.at("-"):
            self.i += 1
            return -self.gw_unary(field)
        return self.gw_atom(field)

    def gw_atom(self, field: FieldSpec) -> GWElem:
        t = self.tok
        if t.kind == "int":
            self.i += 1
            return gw.gw(int(t.value), 0, field)
        if self.at("h"):
            self.i += 1
            return gw.hyperbolic_form(field)
        if self.at("<"):
            self.i += 1
            a = self.integer()
            self.eat(">")
            if a == 1:
                return gw.one(field)
            if a == -1:
                return gw.minus_one(field)
            raise DomainError(f"<{a}>: only <1> and <-1> are modeled")
        if self.at("("):
            self.i += 1
            out = self.gw_sum(field)
            self.eat(")")
            return out
        raise self.error("expected a GW term", ("<integer>", "h", "<1>", "<-1>", "("))


def parse_bundle(text: str) -> b.BundleExpr:
    p = _Parser(text)
    e = p.bundle_expr()
    p.end()
    return e


def parse_space(text: str) -> SpaceDesc:
    p = _Parser(text)
    s = p.space()
    p.end()
    return s


def parse_gw(text: str, field: FieldSpec = gw.DEFAULT_FIELD) -> GWElem:
    p = _Parser(text)
    out = p.gw_sum(field)
    p.end()
    return out


@dataclass(frozen=True)
class OpaqueParams:
    rank: int
    chow_degree: Optional[int]
    det: Optional[tuple[int, ...]]

    def det_class(self, space: SpaceDesc) -> Optional[PicClass]:
        return None if self.det is None else PicClass(space, self.det)


def parse_opaque(text: str) -> OpaqueParams:
    """``rank=R[,deg=N][,det=a|a:b]``; ``det`` is in Picard coordinates."""
    values: dict[str, str] = {}
    pos = 0
    for chunk in text.split(","):
        off = len(text[:pos].encode())
        key, sep, val = chunk.partition("=")
        key = key.strip()
        if not sep or key not in ("rank", "deg", "det"):
            raise ParseError(f"bad opaque parameter {chunk.strip()!r}", text, off, ("rank=", "deg=", "det="))
        if key in values:
            raise ParseError(f"duplicate parameter {key!r}", text, off)
        values[key] = val.strip()
        pos += len(chunk) + 1
    if "rank" not in values:
        raise ParseError("missing rank=", text, 0, ("rank=",))
    try:
        r = int(values["rank"])
        deg = int(values["deg"]) if "deg" in values else None
        det = tuple(int(x) for x in values["det"].split(":")) if "det" in values else None
    except ValueError as exc:
        raise ParseError(f"expected integers in opaque parameters ({exc})", text, 0) from None
    return OpaqueParams(r, deg, det)
