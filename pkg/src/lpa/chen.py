"""The Chen simple module V_[c^inf] for a basic closed path c.

Basis vectors are infinite paths tail-equivalent to c^inf. Each one is
``gamma c^inf`` for a unique sigma-normal prefix ``gamma`` in
{1} u A_c u c^i A_c, so the infinite data never has to be stored:
ghost edges unroll the periodic tail lazily.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from .algebra import LeavittPathAlgebra, LpaElement
from .errors import FieldMismatchError, PreconditionError
from .graph import Path, require_basic_closed
from .parser import format_path, format_terms


class SigmaNormalPrefix(NamedTuple):
    """``c^c_power . tail``; ``tail is None`` encodes the identity prefix."""

    c_power: int
    tail: Optional[tuple]

    @property
    def is_identity(self):
        return self.tail is None


IDENTITY = SigmaNormalPrefix(0, None)


class PrefixCombination:
    """Finite K-combination of sigma-normal prefixes (shared by ChenVector and GElement)."""

    __slots__ = ("module", "terms")

    def __init__(self, module, terms):
        self.module = module
        self.terms = {p: k for p, k in terms.items() if k}

    def _same(self, other):
        if type(other) is not type(self) or other.module != self.module:
            raise FieldMismatchError(f"cannot combine {type(self).__name__}s of different modules")
        return other

    def __add__(self, other):
        other = self._same(other)
        out = dict(self.terms)
        for p, k in other.terms.items():
            out[p] = out.get(p, 0) + k
        return type(self)(self.module, out)

    def __neg__(self):
        return type(self)(self.module, {p: -k for p, k in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        k = self.module.algebra.field(k)
        return type(self)(self.module, {p: k * c for p, c in self.terms.items()})

    def __rmul__(self, k):
        return self.scale(k)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return type(other) is type(self) and other.module == self.module and other.terms == self.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def items(self):
        key = self.module.prefix_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]))

    def to_json(self):
        F = self.module.algebra.field
        return [[p.c_power, self.module.format_tail(p), F.format(k)] for p, k in self.items()]


class ChenVector(PrefixCombination):
    """A vector of V_[c^inf]; each prefix ``p`` encodes the basis path ``p c^inf``."""

    def __str__(self):
        body = [(self.module.format_prefix(p) + ".c^inf", k) for p, k in self.items()]
        return format_terms(self.module.algebra.field, body)

    def __repr__(self):
        return f"ChenVector({self})"


class ChenModule:
    """V_[c^inf] over ``algebra``."""

    def __init__(self, algebra: LeavittPathAlgebra, c: Path):
        require_basic_closed(algebra.graph, c)
        self.algebra = algebra
        self.graph = algebra.graph
        self.c = c
        self.cycle = tuple(c.edges)
        self._act_cache = {}

    def __eq__(self, other):
        return isinstance(other, ChenModule) and other.algebra == self.algebra and other.cycle == self.cycle

    def __hash__(self):
        return hash((self.algebra, self.cycle))

    # -- prefixes ---------------------------------------------------------
    def prefix_key(self, p: SigmaNormalPrefix):
        if p.tail is None:
            return (0, -1, ())
        return (p.c_power, len(p.tail), self.graph.edge_key(p.tail))

    def word(self, p: SigmaNormalPrefix):
        """The finite path ``c^i tail`` as an edge tuple (empty for the identity)."""
        if p.tail is None:
            return ()
        return self.cycle * p.c_power + p.tail

    def format_tail(self, p):
        return "1" if p.tail is None else format_path(p.tail)

    def format_prefix(self, p):
        if p.tail is None:
            return "1"
        return format_path(self.word(p))

    def _normalize_word(self, w):
        c, n = self.cycle, len(self.cycle)
        while len(w) >= n and w[len(w) - n:] == c:
            w = w[:len(w) - n]
        if not w:
            return IDENTITY
        i = 0
        while w[i * n:(i + 1) * n] == c:
            i += 1
        return SigmaNormalPrefix(i, w[i * n:])

    def sigma_normalize(self, gamma: Path) -> SigmaNormalPrefix:
        """The sigma-normal prefix of the infinite path ``gamma c^inf``."""
        if gamma.dst != self.c.src:
            raise PreconditionError(f"{gamma} does not range at s(c) = {self.c.src}")
        return self._normalize_word(tuple(gamma.edges))

    # -- vectors ----------------------------------------------------------
    def zero(self):
        return ChenVector(self, {})

    def check_prefix(self, p: SigmaNormalPrefix):
        if p.tail is None:
            if p.c_power:
                raise PreconditionError("a pure c-power prefix is written as the identity")
            return
        c, n = self.cycle, len(self.cycle)
        w = self.word(p)
        ok = (
            p.c_power >= 0
            and len(p.tail) > 0
            and self.graph.composes(w)
            and self.graph.dst(w[-1]) == self.c.src
            and p.tail[:n] != c
            and p.tail[-n:] != c
        )
        if not ok:
            raise PreconditionError(f"{p} is not a sigma-normal prefix")

    def basis(self, prefix: SigmaNormalPrefix = IDENTITY):
        self.check_prefix(prefix)
        return ChenVector(self, {prefix: self.algebra.field.one})

    def basis_from_path(self, gamma: Path):
        """The basis vector ``gamma c^inf``."""
        return self.basis(self.sigma_normalize(gamma))

    def _act_monomial(self, m, p):
        key = (m, p)
        if key in self._act_cache:
            return self._act_cache[key]
        result = self._act_word(m, self.word(p))
        self._act_cache[key] = result
        return result

    def _act_word(self, m, w):
        alpha, beta, v = m
        c, n = self.cycle, len(self.cycle)
        if not beta:
            start = self.graph.src(w[0]) if w else self.c.src
            if start != v:
                return None
            rest = w
        elif len(beta) <= len(w):
            if w[:len(beta)] != beta:
                return None
            rest = w[len(beta):]
        else:
            if beta[:len(w)] != w:
                return None
            spill = beta[len(w):]
            if any(e != c[i % n] for i, e in enumerate(spill)):
                return None
            rest = c[len(spill) % n:]
        return self._normalize_word(alpha + rest)

    def act(self, x: LpaElement, u: ChenVector) -> ChenVector:
        """The module action ``x . u``."""
        if x.algebra != self.algebra:
            raise FieldMismatchError("element and module live over different algebras")
        out = {}
        for m, k in x.terms.items():
            for p, h in u.terms.items():
                q = self._act_monomial(m, p)
                if q is not None:
                    out[q] = out.get(q, 0) + k * h
        return ChenVector(self, out)

    def rho_cinf(self, x: LpaElement) -> ChenVector:
        """r -> r c^inf."""
        return self.act(x, self.basis())

    def prefix_element(self, p: SigmaNormalPrefix) -> LpaElement:
        if p.tail is None:
            return self.algebra.one()
        g = self.graph
        return self.algebra.path_element(g.path(self.word(p)))

    def sigma(self, u: PrefixCombination) -> LpaElement:
        """Linear readback V_[c^inf] -> G, inverse to rho_cinf on G."""
        total = self.algebra.zero()
        for p, k in u.items():
            total = total + self.prefix_element(p).scale(k)
        return total
