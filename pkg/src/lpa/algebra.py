"""Leavitt path algebras over exact fields, with CK2-reduced normal forms.

An element is a finite combination of monomials ``alpha beta*``. The normal
form uses the standard basis determined by one *special edge* per non-sink
vertex: no monomial may have ``alpha`` and ``beta`` both ending in the same
special edge. Any monomial ``(alpha f)(beta f)*`` with ``f`` special is
rewritten with (CK2) as

    alpha beta*  -  sum_{e in s^{-1}(s(f)), e != f} (alpha e)(beta e)*

which shortens the monomial, so rewriting terminates.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import FieldMismatchError, PathError
from .fields import QQ, Field
from .graph import Graph, Path


class Monomial(NamedTuple):
    """``real * ghost^*`` where both paths range at ``vertex``.

    Paths are stored as tuples of edge names; the empty tuple stands for
    the vertex itself.
    """

    real: tuple
    ghost: tuple
    vertex: str


class LeavittPathAlgebra:
    """L_K(E) for a finite graph E and exact field K."""

    def __init__(self, graph: Graph, field: Field = QQ, special_edges=None):
        self.graph = graph
        self.field = field
        special = {v: graph.out_edges(v)[0] for v in graph.vertices if graph.out_edges(v)}
        for v, e in (special_edges or {}).items():
            graph.check_vertex(v)
            if e not in graph.out_edges(v):
                raise PathError(f"special edge {e!r} does not start at {v!r}")
            special[v] = e
        self.special = special
        self._reduced = {}

    def __eq__(self, other):
        return (
            isinstance(other, LeavittPathAlgebra)
            and self.graph == other.graph
            and self.field == other.field
            and self.special == other.special
        )

    def __hash__(self):
        return hash((self.graph, self.field, tuple(sorted(self.special.items()))))

    def __repr__(self):
        return f"L_{self.field!r}({self.graph!r})"

    # -- construction -----------------------------------------------------
    def zero(self):
        return LpaElement(self, {})

    def one(self):
        return LpaElement(self, {Monomial((), (), v): self.field.one for v in self.graph.vertices})

    def scalar(self, k):
        return self.one() * self.field(k)

    def vertex(self, v):
        self.graph.check_vertex(v)
        return LpaElement(self, {Monomial((), (), v): self.field.one})

    def edge(self, e):
        return self.path_element(self.graph.path(e))

    def ghost(self, e):
        return self.edge(e).star()

    def path_element(self, p: Path):
        """The real path ``p`` as an element (a vertex for length 0)."""
        return LpaElement(self, {Monomial(tuple(p.edges), (), p.dst): self.field.one})

    def monomial(self, real: Path, ghost: Path, coefficient=1):
        """``coefficient * real ghost^*``, normalized; zero if the ranges differ."""
        if real.dst != ghost.dst:
            return self.zero()
        m = Monomial(tuple(real.edges), tuple(ghost.edges), real.dst)
        return self.from_terms([(m, self.field(coefficient))])

    def from_terms(self, terms):
        """Normalize a raw iterable of ``(Monomial, coefficient)`` pairs."""
        return normalize(self, terms)

    def parse(self, text):
        from .parser import parse_element

        return parse_element(self, text)

    # -- monomial kernels -------------------------------------------------
    def _src(self, edges, vertex):
        return self.graph.src(edges[0]) if edges else vertex

    def mono_mul(self, m1: Monomial, m2: Monomial):
        """Product of two monomials via (V), (E1), (E2), (CK1); ``None`` for zero."""
        a1, b1, v1 = m1
        a2, b2, v2 = m2
        if self._src(b1, v1) != self._src(a2, v2):
            return None
        n = len(b1)
        if len(a2) >= n:
            if a2[:n] != b1:
                return None
            return Monomial(a1 + a2[n:], b2, v2)
        k = len(a2)
        if b1[:k] != a2:
            return None
        return Monomial(a1, b2 + b1[k:], v1)

    def reduce_monomial(self, m: Monomial):
        """CK2-reduced expansion of one monomial as ``{Monomial: int}``."""
        hit = self._reduced.get(m)
        if hit is not None:
            return hit
        a, b, _ = m
        if a and b and a[-1] == b[-1]:
            f = a[-1]
            w = self.graph.src(f)
            if self.special.get(w) == f:
                out = dict(self.reduce_monomial(Monomial(a[:-1], b[:-1], w)))
                for e in self.graph.out_edges(w):
                    if e != f:
                        key = Monomial(a[:-1] + (e,), b[:-1] + (e,), self.graph.dst(e))
                        out[key] = out.get(key, 0) - 1
                out = {k: c for k, c in out.items() if c}
                self._reduced[m] = out
                return out
        out = {m: 1}
        self._reduced[m] = out
        return out

    def is_canonical(self, m: Monomial):
        a, b, _ = m
        return not (a and b and a[-1] == b[-1] and self.special.get(self.graph.src(a[-1])) == a[-1])

    def sort_key(self, m: Monomial):
        g = self.graph
        return (len(m.real), len(m.ghost), g.edge_key(m.real), g.edge_key(m.ghost), g.vertex_index[m.vertex])


def _check_monomial(algebra, m: Monomial):
    g = algebra.graph
    for p in (m.real, m.ghost):
        if p:
            if not g.composes(p):
                raise PathError(f"{'.'.join(p)} is not a path")
            if g.dst(p[-1]) != m.vertex:
                raise PathError(f"monomial {m} has mismatched ranges")
        else:
            g.check_vertex(m.vertex)


def normalize(algebra: LeavittPathAlgebra, terms, check=True):
    """Fixed point of the CK2 rewriting system on a raw combination.

    ``terms`` is a mapping or iterable of ``(Monomial, coefficient)``.
    """
    items = terms.items() if hasattr(terms, "items") else terms
    out = {}
    for m, k in items:
        if not k:
            continue
        if check:
            _check_monomial(algebra, m)
        for r, c in algebra.reduce_monomial(m).items():
            out[r] = out.get(r, 0) + k * c
    return LpaElement(algebra, {m: k for m, k in out.items() if k})


class LpaElement:
    """An element of L_K(E) in normal form. Immutable."""

    __slots__ = ("algebra", "terms", "_hash")

    def __init__(self, algebra: LeavittPathAlgebra, terms):
        self.algebra = algebra
        self.terms = terms
        self._hash = None

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, LpaElement):
            if other.algebra is not self.algebra and other.algebra != self.algebra:
                raise FieldMismatchError("elements of different algebras")
            return other
        return self.algebra.scalar(other)

    def _combine(self, other, sign):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, k in other.terms.items():
            out[m] = out.get(m, 0) + sign * k
        return LpaElement(self.algebra, {m: k for m, k in out.items() if k})

    def __add__(self, other):
        return self._combine(other, 1)

    def __radd__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self)._combine(other, 1)

    def __neg__(self):
        return LpaElement(self.algebra, {m: -k for m, k in self.terms.items()})

    def scale(self, k):
        k = self.algebra.field(k)
        if not k:
            return self.algebra.zero()
        return LpaElement(self.algebra, {m: k * c for m, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, LpaElement):
            return self.scale(other)
        other = self._coerce(other)
        A = self.algebra
        raw = {}
        for m1, k1 in self.terms.items():
            for m2, k2 in other.terms.items():
                m = A.mono_mul(m1, m2)
                if m is not None:
                    raw[m] = raw.get(m, 0) + k1 * k2
        return normalize(A, raw, check=False)

    def __rmul__(self, other):
        if isinstance(other, LpaElement):
            return other * self
        return self.scale(other)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = self.algebra.one()
        for _ in range(n):
            result = result * self
        return result

    def star(self):
        """The involution: K-linear, anti-multiplicative, (alpha beta*)* = beta alpha*."""
        return normalize(
            self.algebra,
            [(Monomial(m.ghost, m.real, m.vertex), k) for m, k in self.terms.items()],
            check=False,
        )

    # -- inspection -------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def items(self):
        """Terms in canonical order."""
        key = self.algebra.sort_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]))

    def monomials(self):
        return [m for m, _ in self.items()]

    def coefficient(self, m):
        return self.terms.get(m, self.algebra.field.zero)

    def __eq__(self, other):
        if isinstance(other, LpaElement):
            return self.algebra == other.algebra and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __str__(self):
        from .parser import format_element

        return format_element(self)

    def __repr__(self):
        return f"LpaElement({self})"


def mul(x, y):
    return x * y


def add(x, y):
    return x + y


def sub(x, y):
    return x - y


def scale(k, x):
    return x.scale(k)


def star(x):
    return x.star()


def power(x, n):
    return x ** n


def eq(x, y):
    return x == y
