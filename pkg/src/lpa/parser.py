"""Expression grammar for algebra elements and its inverse, the serializer.

    element  := ['-'] term (('+' | '-') term)*
    term     := rational product? | product
    product  := atom ('.' atom)*
    atom     := ident ('^' nat)? ('*')?
    rational := int ('/' nat)?

Whitespace is ignored. A bare rational multiplies the identity, so ``1``
is the identity. Concatenating non-composable atoms gives zero.
"""

from __future__ import annotations

import re
from itertools import groupby

from .errors import ParseError
from .graph import Graph, Path

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_']*)|(.))")


def tokenize(text):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        num, ident, sym = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            tokens.append(("num", num, start))
        elif ident is not None:
            tokens.append(("ident", ident, start))
        elif sym in "+-.^*/":
            tokens.append((sym, sym, start))
        else:
            raise ParseError(f"unexpected character {sym!r}", start)
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def kind(self):
        return self.tokens[self.i][0]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            want = "a number" if kind == "num" else repr(kind)
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {want}, got {got}", tok[2])
        self.i += 1
        return tok

    def finish(self):
        if self.kind != "end":
            tok = self.tokens[self.i]
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])


class _ElementParser(_Parser):
    def __init__(self, algebra, text):
        super().__init__(text)
        self.algebra = algebra
        self.graph = algebra.graph

    def element(self):
        sign = 1
        if self.kind == "-":
            self.take()
            sign = -1
        total = self.term() * sign
        while self.kind in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            total = total + t if op == "+" else total - t
        self.finish()
        return total

    def term(self):
        if self.kind == "num":
            k = self.rational()
            if self.kind == "ident":
                return self.product() * k
            return self.algebra.scalar(k)
        if self.kind == "ident":
            return self.product()
        tok = self.tokens[self.i]
        raise ParseError("expected a term", tok[2])

    def rational(self):
        num = int(self.take("num")[1])
        F = self.algebra.field
        if self.kind == "/":
            self.take()
            tok = self.take("num")
            den = int(tok[1])
            if den == 0:
                raise ParseError("zero denominator", tok[2])
            return F(num) / F(den)
        return F(num)

    def product(self):
        value = self.atom()
        while self.kind == ".":
            self.take()
            value = value * self.atom()
        return value

    def atom(self):
        _, name, pos = self.take("ident")
        A = self.algebra
        if self.graph.has_vertex(name):
            value = A.vertex(name)
        elif self.graph.has_edge(name):
            value = A.edge(name)
        else:
            raise ParseError(f"unknown identifier {name!r}", pos)
        if self.kind == "^":
            self.take()
            value = value ** int(self.take("num")[1])
        if self.kind == "*":
            self.take()
            value = value.star()
        return value


def parse_element(algebra, text):
    """Parse ``text`` into a normalized element of ``algebra``."""
    return _ElementParser(algebra, text).element()


def parse_path(graph: Graph, text) -> Path:
    """Parse a real path such as ``"e1.e2"``, ``"c^2.d"`` or a vertex name."""
    p = _Parser(text)
    edges = []
    while True:
        _, name, pos = p.take("ident")
        if graph.has_vertex(name):
            if edges or p.kind != "end":
                raise ParseError("a vertex can only stand alone as a path", pos)
            return graph.vertex_path(name)
        if not graph.has_edge(name):
            raise ParseError(f"unknown identifier {name!r}", pos)
        power = 1
        if p.kind == "^":
            p.take()
            power = int(p.take("num")[1])
        edges.extend([name] * power)
        if p.kind != ".":
            break
        p.take()
    p.finish()
    if not edges:
        raise ParseError("empty path", 0)
    return graph.path(edges)


# ---------------------------------------------------------------------------
# serialization

def _runs(edges):
    return [(e, len(list(g))) for e, g in groupby(edges)]


def _atom(e, k, starred=False):
    s = e if k == 1 else f"{e}^{k}"
    return s + "*" if starred else s


def format_path(edges, vertex=None):
    if not edges:
        return vertex
    return ".".join(_atom(e, k) for e, k in _runs(edges))


def format_monomial(m):
    parts = [_atom(e, k) for e, k in _runs(m.real)]
    parts += [_atom(e, k, starred=True) for e, k in reversed(_runs(m.ghost))]
    return ".".join(parts) if parts else m.vertex


def format_terms(field, terms):
    """Serialize ``[(body, coefficient)]``; a body of ``None`` means the identity."""
    out = []
    for body, k in terms:
        text = field.format(k)
        negative = text.startswith("-")
        if negative:
            text = text[1:]
        if body is None:
            piece = text
        elif text == "1":
            piece = body
        else:
            piece = f"{text} {body}"
        if not out:
            out.append(f"-{piece}" if negative else piece)
        else:
            out.append(f"- {piece}" if negative else f"+ {piece}")
    return " ".join(out) if out else "0"


def format_element(x):
    return format_terms(x.algebra.field, [(format_monomial(m), k) for m, k in x.items()])
