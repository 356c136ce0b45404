"""Random generators and independent oracles shared by the test modules."""

import functools
import itertools
import random
from fractions import Fraction

from lpa.algebra import LeavittPathAlgebra, Monomial
from lpa.chen import IDENTITY, SigmaNormalPrefix
from lpa.graph import Graph, enumerate_Ac, fixture

# (fixture, cycle edges) pairs used throughout
CYCLES = {
    "R_1": ("c",),
    "R_2": ("c",),
    "G_E1": ("c",),
    "G_S": ("c",),
    "G_C2": ("e1", "e2"),
    "G_C2z": ("e1", "e2"),
    "G_C2x": ("e1", "e2"),
}
SOURCE_LOOPS = ["R_1", "G_S"]


def setup(name, field=None, special=None):
    E = fixture(name)
    kw = {} if field is None else {"field": field}
    A = LeavittPathAlgebra(E, special_edges=special, **kw)
    return E, A, E.path(CYCLES[name])


def random_walk(E, rng, start, length, backward=False):
    edges = []
    v = start
    for _ in range(length):
        choices = E.in_edges(v) if backward else E.out_edges(v)
        if not choices:
            break
        e = rng.choice(choices)
        edges.append(e)
        v = E.src(e) if backward else E.dst(e)
    return tuple(reversed(edges)) if backward else tuple(edges)


def random_monomial(E, rng, max_degree=6):
    total = rng.randint(0, max_degree)
    a = rng.randint(0, total)
    v = rng.choice(E.vertices)
    # grow the real path backward from v and the ghost path backward from v
    real = random_walk(E, rng, v, a, backward=True)
    ghost = random_walk(E, rng, v, total - a, backward=True)
    return Monomial(real, ghost, v)


def random_coefficient(rng, field=None):
    k = rng.choice([1, 1, -1, 2, -2, 3, Fraction(1, 2), Fraction(-2, 3)])
    return k if field is None else field(k)


def random_element(A, rng, max_terms=4, max_degree=6):
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        terms.append((random_monomial(A.graph, rng, max_degree), A.field(random_coefficient(rng))))
    if rng.random() < 0.2:
        terms.append((Monomial((), (), rng.choice(A.graph.vertices)), A.field(rng.randint(-3, 3))))
    return A.from_terms(terms)


def random_graph(rng, max_vertices=4, max_edges=6):
    n = rng.randint(1, max_vertices)
    verts = [f"v{i}" for i in range(n)]
    m = rng.randint(1, max_edges)
    edges = [(f"e{j}", rng.choice(verts), rng.choice(verts)) for j in range(m)]
    return Graph(verts, edges)


def random_prefix(module, r, max_len=4, max_power=2):
    """A random sigma-normal prefix: identity, or c^i times an A_c path."""
    E = module.graph
    ac = enumerate_Ac(E, module.c, max_len)
    if not ac or r.random() < 0.15:
        return IDENTITY
    tail = r.choice(ac).edges
    power = r.randint(0, max_power) if E.src(tail[0]) == module.c.src else 0
    return SigmaNormalPrefix(power, tail)


@functools.lru_cache(maxsize=None)
def _ac_words(E, c, max_len=12):
    return frozenset(p.edges for p in enumerate_Ac(E, c, max_len))


def in_G(x, E, c):
    """x is a combination of 1 and real paths c^i p with p in A_c."""
    ac = _ac_words(E, c)
    n = len(c)
    for m in x.terms:
        if m.ghost:
            return False
        real = m.real
        while real[:n] == c.edges:
            real = real[n:]
        if real and real not in ac:
            return False
    vertices = [k for m, k in x.terms.items() if not m.real]
    return len(set(vertices)) <= 1 and (not vertices or len(vertices) == len(E.vertices))


def cycle_graph(n):
    verts = [f"v{i}" for i in range(1, n + 1)]
    edges = [(f"e{i}", verts[i - 1], verts[i % n]) for i in range(1, n + 1)]
    E = Graph(verts, edges)
    return E, E.path([f"e{i}" for i in range(1, n + 1)])


# ---------------------------------------------------------------------------
# cycle oracle: plain enumeration of vertex-simple closed walks

def all_cycles(E):
    """Every cycle as an edge tuple, in every rotation."""
    out = []
    for start in E.vertices:
        stack = [(start, (), (start,))]
        while stack:
            v, edges, seen = stack.pop()
            for e in E.out_edges(v):
                w = E.dst(e)
                if w == start:
                    out.append(edges + (e,))
                elif w not in seen:
                    stack.append((w, edges + (e,), seen + (w,)))
    return out


def reaches(E, a, b):
    frontier, seen = [a], {a}
    while frontier:
        x = frontier.pop()
        if x == b:
            return True
        for e in E.out_edges(x):
            y = E.dst(e)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return False


def oracle_maximal(E, c_edges):
    cycles = all_cycles(E)
    if c_edges not in cycles:
        return False
    base = E.src(c_edges[0])
    rotations = {c_edges[i:] + c_edges[:i] for i in range(len(c_edges))}
    for d in cycles:
        if d in rotations:
            continue
        if any(reaches(E, E.src(e), base) for e in d):
            return False
    return True


# ---------------------------------------------------------------------------
# Chen module oracle: long explicit words standing in for gamma c^inf

def chen_word(module, prefix, periods=12):
    return module.word(prefix) + module.cycle * periods


def oracle_act_generator(E, kind, name, word):
    """Action of a vertex, edge or ghost edge on a long explicit word (None for 0)."""
    first = E.src(word[0])
    if kind == "vertex":
        return word if first == name else None
    if kind == "edge":
        return (name,) + word if E.dst(name) == first else None
    return word[1:] if word[0] == name else None


def strip_to_prefix(module, word):
    """Sigma-normal prefix of a long word that ends in many copies of c."""
    c, n = module.cycle, len(module.cycle)
    while len(word) >= n and word[-n:] == c:
        word = word[:-n]
    return module._normalize_word(word)


# ---------------------------------------------------------------------------
# R_1 = K[x, x^-1] oracle

def laurent(x):
    """R_1 element -> {exponent: coefficient} under c -> x."""
    out = {}
    for m, k in x.terms.items():
        d = len(m.real) - len(m.ghost)
        out[d] = out.get(d, 0) + k
    return {d: k for d, k in out.items() if k}


def taylor_at_one(poly, n):
    import sympy

    X = sympy.Symbol("x")
    f = sum(sympy.Rational(k.numerator, k.denominator) * X ** d for d, k in poly.items())
    s = sympy.series(f, X, 1, n).removeO()
    t = sympy.Symbol("t")
    s = sympy.expand(s.subs(X, t + 1))
    return [Fraction(str(s.coeff(t, i))) for i in range(n)]


def words(E, max_len):
    for L in range(1, max_len + 1):
        for es in itertools.product([e.name for e in E.edges], repeat=L):
            if E.composes(es):
                yield es


def rng(seed=0):
    return random.Random(seed)
