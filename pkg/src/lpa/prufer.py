"""Quotients M_n = L/L(c-1)^n and the Pruefer module U = lim M_n.

An element of M_n is stored as its G-representation (g_1, ..., g_n), meaning
``g_1 + g_2(c-1) + ... + g_n(c-1)^(n-1) + L(c-1)^n``. The transition maps
M_n -> M_(n+k) multiply on the right by (c-1)^k, which on coefficient
vectors just prepends k zeros. So an element of U is any such vector, and
the canonical one is the shortest: no leading zero coefficient.

``alpha(i)`` is the image of 1 in M_i. With these conventions
``(c-1) alpha_i = alpha_(i-1)`` and ``alpha_1`` spans the socle.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .algebra import LeavittPathAlgebra, LpaElement
from .chen import IDENTITY
from .division import (
    GElement,
    _divider,
    ann_U_membership,
    chen_module,
    g_representation,
    reconstruct,
)
from .errors import FieldMismatchError, NoSolutionError, PreconditionError
from .graph import (
    Graph,
    Path,
    classify_closed_path,
    cycles_connecting_to,
    cyclic_shifts,
    is_cyclic_shift,
    require_basic_closed,
    require_source_loop,
)
from .series import TruncatedPowerSeries, series_invert, series_mul


@dataclass(frozen=True)
class MnElement:
    """``sum_t coefficients[t-1] (c-1)^(t-1) + L(c-1)^level``."""

    module: "PruferModule"
    coefficients: tuple

    def __post_init__(self):
        if not self.coefficients:
            raise PreconditionError("level must be >= 1")

    @property
    def level(self):
        return len(self.coefficients)

    def __add__(self, other):
        if other.module != self.module or other.level != self.level:
            raise FieldMismatchError("M_n elements of different modules or levels")
        return MnElement(self.module, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self):
        return MnElement(self.module, tuple(-g for g in self.coefficients))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        return MnElement(self.module, tuple(g.scale(k) for g in self.coefficients))

    def is_zero(self):
        return all(g.is_zero() for g in self.coefficients)

    def representative(self) -> LpaElement:
        return reconstruct(list(self.coefficients), self.module.c)

    def to_json(self):
        return [str(g) for g in self.coefficients]

    def __str__(self):
        return f"M_{self.level}{self.to_json()}"


class PruferElement:
    """An element of U, kept at its minimal level."""

    __slots__ = ("module", "payload")

    def __init__(self, module, payload: MnElement):
        coeffs = list(payload.coefficients)
        while len(coeffs) > 1 and coeffs[0].is_zero():
            coeffs.pop(0)
        self.module = module
        self.payload = MnElement(module, tuple(coeffs))

    @property
    def coefficients(self):
        return self.payload.coefficients

    @property
    def level(self):
        """Canonical level; 0 for the zero element."""
        if self.payload.level == 1 and self.payload.coefficients[0].is_zero():
            return 0
        return self.payload.level

    def is_zero(self):
        return self.level == 0

    def __bool__(self):
        return not self.is_zero()

    def _common(self, other):
        if not isinstance(other, PruferElement) or other.module != self.module:
            raise FieldMismatchError("elements of different Pruefer modules")
        n = max(self.payload.level, other.payload.level)
        return self.module.embed(self.payload, n), self.module.embed(other.payload, n)

    def __add__(self, other):
        a, b = self._common(other)
        return PruferElement(self.module, a + b)

    def __neg__(self):
        return PruferElement(self.module, -self.payload)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        return PruferElement(self.module, self.payload.scale(k))

    def __rmul__(self, k):
        return self.scale(k)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        return (
            isinstance(other, PruferElement)
            and other.module == self.module
            and other.payload.coefficients == self.payload.coefficients
        )

    def __hash__(self):
        return hash(self.payload.coefficients)

    def to_json(self):
        return {"level": self.level, "coefficients": self.payload.to_json()}

    def __str__(self):
        if self.is_zero():
            return "0"
        n = self.level
        parts = []
        for t, g in enumerate(self.coefficients, start=1):
            if not g.is_zero():
                parts.append(f"({g}) alpha_{n - t + 1}")
        return " + ".join(parts)

    def __repr__(self):
        return f"PruferElement({self})"


class PruferModule:
    """M_n and U for the basic closed path ``c`` over ``algebra``."""

    def __init__(self, algebra: LeavittPathAlgebra, c: Path):
        self.algebra = algebra
        self.c = c
        self.chen = chen_module(algebra, c)
        self._divider = _divider(algebra, c)

    def __eq__(self, other):
        return isinstance(other, PruferModule) and other.chen == self.chen

    def __hash__(self):
        return hash(self.chen)

    @property
    def is_source_loop(self):
        return len(self.c) == 1 and classify_closed_path(self.algebra.graph, self.c).source_loop

    # -- M_n --------------------------------------------------------------
    def g_zero(self):
        return GElement(self.chen, {})

    def g_scalar(self, k):
        return GElement(self.chen, {IDENTITY: self.algebra.field(k)})

    def make_element(self, x: LpaElement, n: int) -> MnElement:
        return MnElement(self, tuple(g_representation(x, self.c, n)))

    def embed(self, u: MnElement, level: int) -> MnElement:
        if level < u.level:
            raise PreconditionError(f"cannot embed level {u.level} into level {level}")
        return MnElement(self, (self.g_zero(),) * (level - u.level) + u.coefficients)

    def act_mn(self, r: LpaElement, u: MnElement) -> MnElement:
        return self.make_element(r * u.representative(), u.level)

    # -- U ----------------------------------------------------------------
    def element(self, u) -> PruferElement:
        if isinstance(u, PruferElement):
            return u
        return PruferElement(self, u)

    def from_coefficients(self, coefficients) -> PruferElement:
        """Build from G-coefficients given as GElements, LpaElements or scalars."""
        gs = []
        for g in coefficients:
            if isinstance(g, GElement):
                gs.append(g)
            elif isinstance(g, LpaElement):
                gs.append(self.to_g(g))
            else:
                gs.append(self.g_scalar(g))
        return PruferElement(self, MnElement(self, tuple(gs)))

    def to_g(self, x: LpaElement) -> GElement:
        g = GElement(self.chen, self.chen.rho_cinf(x).terms)
        if g.to_element() != x:
            raise PreconditionError(f"{x} does not lie in G")
        return g

    def zero(self) -> PruferElement:
        return PruferElement(self, MnElement(self, (self.g_zero(),)))

    def alpha(self, i: int) -> PruferElement:
        if i < 1:
            raise PreconditionError("alpha_i needs i >= 1")
        coeffs = (self.g_scalar(1),) + (self.g_zero(),) * (i - 1)
        return PruferElement(self, MnElement(self, coeffs))

    def act(self, r: LpaElement, u: PruferElement) -> PruferElement:
        if r.algebra != self.algebra:
            raise FieldMismatchError("element and module live over different algebras")
        return PruferElement(self, self.act_mn(r, u.payload))

    def level(self, u: PruferElement) -> int:
        return u.level

    def quotient_shift(self, u: PruferElement, i: int) -> PruferElement:
        """alpha_k -> alpha_(k-i), zero for k <= i."""
        if i < 1:
            raise PreconditionError("quotient_shift needs i >= 1")
        n = u.payload.level
        if n <= i:
            return self.zero()
        return PruferElement(self, MnElement(self, u.coefficients[:n - i]))

    # -- source-loop arithmetic --------------------------------------------
    def _require_source_loop(self):
        require_source_loop(self.algebra.graph, self.c)

    def scalars(self, u: PruferElement):
        """(k_1, ..., k_n) with u = k_1 alpha_n + ... + k_n alpha_1 (source loop)."""
        out = []
        for g in u.coefficients:
            if any(not p.is_identity for p in g.terms):
                raise AssertionError(f"non-scalar G-coefficient {g} for a source loop")
            out.append(g.scalar_part)
        return out

    def from_alpha_terms(self, terms) -> PruferElement:
        """``sum k alpha_i`` from ``{i: k}``."""
        terms = {i: k for i, k in terms.items() if k}
        if not terms:
            return self.zero()
        n = max(terms)
        coeffs = tuple(self.g_scalar(terms.get(n - s + 1, 0)) for s in range(1, n + 1))
        return PruferElement(self, MnElement(self, coeffs))

    def endo_apply(self, H: TruncatedPowerSeries, u: PruferElement) -> PruferElement:
        """phi_H(alpha_i) = h_1 alpha_i + h_2 alpha_(i-1) + ... + h_i alpha_1."""
        self._require_source_loop()
        if H.field != self.algebra.field:
            raise FieldMismatchError("series and algebra over different fields")
        n = u.payload.level
        out = {}
        for t, k in enumerate(self.scalars(u), start=1):
            if not k:
                continue
            i = n - t + 1
            for j in range(1, i + 1):
                out[i - j + 1] = out.get(i - j + 1, 0) + k * H[j]
        return self.from_alpha_terms(out)

    def series_element(self, H: TruncatedPowerSeries) -> LpaElement:
        """sum_j h_j (c-1)^(j-1) as an element of the algebra."""
        d = self._divider
        total, factor = self.algebra.zero(), d.one
        for h in H.coefficients:
            total = total + factor.scale(h)
            factor = factor * d.c_minus_one
        return total

    def solve_divisibility(self, ell: LpaElement, u: PruferElement) -> PruferElement:
        """Some X with ell X = u; ell must act nontrivially on U."""
        self._require_source_loop()
        if ann_U_membership(ell, self.c):
            raise NoSolutionError(f"{ell} annihilates U, so ell X = 0 for every X")
        ks = self.scalars(u)
        n = len(ks)
        hs = []
        d = self._divider
        y = ell
        # leading coefficients of ell's (c-1)-adic expansion, until n past the first nonzero
        while True:
            res = d.divide(y)
            h = res.remainder
            if any(not p.is_identity for p in h.terms):
                raise AssertionError(f"non-scalar G-coefficient {h} for a source loop")
            hs.append(h.scalar_part)
            y = res.quotient
            nz = [i for i, v in enumerate(hs) if v]
            if nz and len(hs) >= nz[0] + n:
                break
        s = nz[0]
        h = lambda i: hs[i - 1] if i <= len(hs) else 0  # noqa: E731
        F = self.algebra.field
        X = [F.zero] * (n + s)
        lead = h(s + 1)
        for r in range(1, n + 1):
            acc = ks[r - 1] - sum((h(s + 1 + j) * X[r - 1 - j] for j in range(1, r)), F.zero)
            X[r - 1] = acc / lead
        sol = PruferElement(self, MnElement(self, tuple(self.g_scalar(x) for x in X)))
        if self.act(ell, sol) != u:
            raise AssertionError("divisibility solution failed its check")
        return sol

    def find_multiplier(self, u: PruferElement, v: PruferElement) -> LpaElement:
        """Some r with r v = u, when level(u) <= level(v) (source loop).

        This is the uniserial witness: the submodule generated by v contains u.
        """
        self._require_source_loop()
        if u.level > v.level:
            raise NoSolutionError("u lies above v in the submodule chain")
        if u.is_zero():
            return self.algebra.zero()
        n, m = v.level, u.level
        F = self.algebra.field
        V = TruncatedPowerSeries(self.scalars(v), n, F)
        U = TruncatedPowerSeries([0] * (n - m) + self.scalars(u), n, F)
        r = self.series_element(series_mul(U, series_invert(V, n)))
        if self.act(r, v) != u:
            raise AssertionError("multiplier failed its check")
        return r


@lru_cache(maxsize=128)
def prufer_module(algebra: LeavittPathAlgebra, c: Path) -> PruferModule:
    return PruferModule(algebra, c)


# ---------------------------------------------------------------------------
# module-level operations

def make_element(x: LpaElement, c: Path, n: int) -> MnElement:
    return prufer_module(x.algebra, c).make_element(x, n)


def embed(u: MnElement, level: int) -> MnElement:
    return u.module.embed(u, level)


def act_prufer(r: LpaElement, u: PruferElement) -> PruferElement:
    return u.module.act(r, u)


def submodule_level(u: PruferElement) -> int:
    return u.level


def quotient_shift(u: PruferElement, i: int) -> PruferElement:
    return u.module.quotient_shift(u, i)


def endo_apply(H: TruncatedPowerSeries, u: PruferElement) -> PruferElement:
    return u.module.endo_apply(H, u)


def solve_divisibility(ell: LpaElement, u: PruferElement) -> PruferElement:
    return u.module.solve_divisibility(ell, u)


class ShiftIsomorphism:
    """M_m for one rotation of c to M_m for another, as ``1 -> image``."""

    def __init__(self, source: PruferModule, target: PruferModule, image: LpaElement, m: int):
        self.source = source
        self.target = target
        self.image = image
        self.m = m

    def __call__(self, u: MnElement) -> MnElement:
        if u.module != self.source or u.level != self.m:
            raise PreconditionError(f"expected an element of M_{self.m} for the source cycle")
        return self.target.make_element(u.representative() * self.image, self.m)


def shift_iso(algebra: LeavittPathAlgebra, c: Path, ell: int, m: int, direction="forward") -> ShiftIsomorphism:
    """phi_(1,ell) (``forward``) or phi_(ell,1) (``backward``) between M_m's.

    c = e_1...e_n and c_ell = e_ell...e_n e_1...e_(ell-1).
    forward:  1 -> e_1...e_(ell-1)
    backward: 1 -> (-1)^(m-1) e_ell...e_n sum_(i=1..m) C(m,i) (-1)^(m-i) c^(i-1)
    """
    G = algebra.graph
    require_basic_closed(G, c)
    n = len(c)
    if n < 2:
        raise PreconditionError("cyclic shifts need a closed path of length >= 2")
    if not 1 <= ell <= n:
        raise PreconditionError(f"shift index {ell} outside 1..{n}")
    if m < 1:
        raise PreconditionError("level must be >= 1")
    c_ell = cyclic_shifts(c)[ell - 1]
    M1, Ml = prufer_module(algebra, c), prufer_module(algebra, c_ell)
    edges = c.edges
    if direction == "forward":
        head = edges[:ell - 1]
        image = algebra.path_element(G.path(head)) if head else algebra.vertex(c.src)
        return ShiftIsomorphism(M1, Ml, image, m)
    if direction == "backward":
        tail = algebra.path_element(G.path(edges[ell - 1:]))
        d = _divider(algebra, c)
        total = algebra.zero()
        for i in range(1, m + 1):
            total = total + d.c_power(i - 1).scale(comb(m, i) * (-1) ** (m - i))
        image = (tail * total).scale((-1) ** (m - 1))
        return ShiftIsomorphism(Ml, M1, image, m)
    raise PreconditionError(f"unknown direction {direction!r}")


def classify_injectivity(E: Graph, c: Path) -> dict:
    """Injective iff c is a maximal cycle; otherwise name a competing cycle."""
    require_basic_closed(E, c)
    flags = classify_closed_path(E, c)
    verdict = {"injective": flags.maximal_cycle, "reason": flags.as_dict(), "witness": None}
    if not flags.maximal_cycle:
        for d in cycles_connecting_to(E, c.src, len(E.edges)):
            if not is_cyclic_shift(d, c):
                verdict["witness"] = str(d)
                break
    return verdict
