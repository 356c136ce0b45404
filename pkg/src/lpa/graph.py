"""Finite directed graphs, paths, and the closed-path taxonomy.

Graphs are immutable. Declared edge order is kept because it fixes the
deterministic ordering of monomials and the default special edges.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path as FsPath
from typing import NamedTuple

import networkx as nx

from .errors import GraphError, PathError, PreconditionError


class Edge(NamedTuple):
    name: str
    src: str
    dst: str


@dataclass(frozen=True)
class Path:
    """A finite path: a vertex (no edges) or a composable edge sequence.

    ``vertices`` lists the visited vertices, so ``len(vertices) == len(edges) + 1``.
    """

    edges: tuple
    vertices: tuple

    @property
    def src(self):
        return self.vertices[0]

    @property
    def dst(self):
        return self.vertices[-1]

    def __len__(self):
        return len(self.edges)

    def is_vertex(self):
        return not self.edges

    def is_closed(self):
        return bool(self.edges) and self.src == self.dst

    def __str__(self):
        return ".".join(self.edges) if self.edges else self.src


@dataclass(frozen=True)
class ClosedPathClass:
    closed: bool = False
    simple: bool = False
    basic: bool = False
    cycle: bool = False
    loop: bool = False
    source_cycle: bool = False
    source_loop: bool = False
    maximal_cycle: bool = False

    def as_dict(self):
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


class Graph:
    """A finite directed graph with named vertices and edges."""

    def __init__(self, vertices, edges):
        self.vertices = tuple(vertices)
        self.edges = tuple(Edge(*e) for e in edges)
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("duplicate vertex name")
        vset = set(self.vertices)
        names = set(self.vertices)
        for e in self.edges:
            if e.name in names:
                raise GraphError(f"name {e.name!r} used twice")
            names.add(e.name)
            if e.src not in vset or e.dst not in vset:
                raise GraphError(f"edge {e.name!r} has an undeclared endpoint")
        self._edge = {e.name: e for e in self.edges}
        self.edge_index = {e.name: i for i, e in enumerate(self.edges)}
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self._out = {v: tuple(e.name for e in self.edges if e.src == v) for v in self.vertices}
        self._in = {v: tuple(e.name for e in self.edges if e.dst == v) for v in self.vertices}

    # -- lookup -----------------------------------------------------------
    def edge(self, name) -> Edge:
        try:
            return self._edge[name]
        except KeyError:
            raise PathError(f"unknown edge {name!r}") from None

    def has_vertex(self, v):
        return v in self.vertex_index

    def has_edge(self, name):
        return name in self._edge

    def check_vertex(self, v):
        if v not in self.vertex_index:
            raise GraphError(f"unknown vertex {v!r}")

    def src(self, e):
        return self.edge(e).src

    def dst(self, e):
        return self.edge(e).dst

    def out_edges(self, v):
        """s^{-1}(v) in declared order."""
        return self._out[v]

    def in_edges(self, v):
        return self._in[v]

    def is_sink(self, v):
        return not self._out[v]

    def is_source(self, v):
        return not self._in[v]

    # -- paths ------------------------------------------------------------
    def path(self, *edges) -> Path:
        """Path from edge names; raises PathError when they do not compose."""
        if len(edges) == 1 and not isinstance(edges[0], str):
            edges = tuple(edges[0])
        if not edges:
            raise PathError("use vertex_path for length-0 paths")
        es = [self.edge(e) for e in edges]
        for a, b in zip(es, es[1:]):
            if a.dst != b.src:
                raise PathError(f"{a.name} and {b.name} do not compose")
        return Path(tuple(edges), tuple(e.src for e in es) + (es[-1].dst,))

    def vertex_path(self, v) -> Path:
        self.check_vertex(v)
        return Path((), (v,))

    def composes(self, edges):
        return all(self.dst(a) == self.src(b) for a, b in zip(edges, edges[1:]))

    def edge_key(self, edges):
        return tuple(self.edge_index[e] for e in edges)

    # -- serialization ----------------------------------------------------
    @classmethod
    def from_dict(cls, data):
        try:
            vertices = data["vertices"]
            edges = [(e["name"], e["src"], e["dst"]) for e in data["edges"]]
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed graph JSON: {exc}") from None
        return cls(vertices, edges)

    def to_dict(self):
        return {
            "vertices": list(self.vertices),
            "edges": [{"name": e.name, "src": e.src, "dst": e.dst} for e in self.edges],
        }

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            try:
                return cls.from_dict(json.load(fh))
            except json.JSONDecodeError as exc:
                raise GraphError(f"{path}: {exc}") from None

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        es = ", ".join(f"{e.name}:{e.src}->{e.dst}" for e in self.edges)
        return f"Graph({list(self.vertices)}; {es})"


# ---------------------------------------------------------------------------
# fixtures

FIXTURES = {
    "R_1": "r1.json",
    "R_2": "r2.json",
    "G_E1": "g_e1.json",
    "G_S": "g_s.json",
    "G_C2": "g_c2.json",
    "G_C2z": "g_c2z.json",
    "G_C2x": "g_c2x.json",
}


def fixture(name) -> Graph:
    """One of the shipped canonical graphs, by name (``"R_2"``) or file (``"r2.json"``)."""
    fname = FIXTURES.get(name, name)
    if fname not in FIXTURES.values():
        raise GraphError(f"no fixture called {name!r}")
    text = resources.files("lpa.fixtures").joinpath(fname).read_text()
    return Graph.from_dict(json.loads(text))


def load_graph(ref) -> Graph:
    """Load a graph from a JSON file, falling back to a fixture name."""
    p = FsPath(ref)
    if p.exists():
        return Graph.load(p)
    key = p.name
    for name, fname in FIXTURES.items():
        if key in (name, fname, fname[:-5]):
            return fixture(name)
    raise GraphError(f"no such graph file or fixture: {ref}")


# ---------------------------------------------------------------------------
# reachability and cycles

def connects_to(E: Graph, v, w) -> bool:
    """True iff v = w or there is a path from v to w."""
    E.check_vertex(v)
    E.check_vertex(w)
    if v == w:
        return True
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for e in E.out_edges(x):
            y = E.dst(e)
            if y == w:
                return True
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return False


def vertices_connecting_to(E: Graph, v):
    """All vertices that connect to v (v included)."""
    E.check_vertex(v)
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for e in E.in_edges(x):
            y = E.src(e)
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _vertex_sequence(E, p: Path):
    return list(p.vertices[:-1])


def is_basic(p: Path) -> bool:
    """A closed path that is not a proper power of a shorter closed path."""
    n = len(p.edges)
    for d in range(1, n):
        if n % d == 0 and p.edges == p.edges[:d] * (n // d):
            return False
    return True


def cyclic_shifts(p: Path):
    if not p.is_closed():
        raise PreconditionError(f"{p} is not a closed path")
    verts = p.vertices[:-1]
    out = []
    for i in range(len(p.edges)):
        rot = verts[i:] + verts[:i]
        out.append(Path(p.edges[i:] + p.edges[:i], rot + (rot[0],)))
    return out


def _least_rotation(E, edges):
    n = len(edges)
    return min((edges[i:] + edges[:i] for i in range(n)), key=E.edge_key)


def is_cyclic_shift(p: Path, q: Path) -> bool:
    n = len(p.edges)
    if n != len(q.edges) or n == 0:
        return False
    doubled = p.edges + p.edges
    return any(doubled[i:i + n] == q.edges for i in range(n))


def _cycles_from(E, start, allowed, max_len):
    """Cycles based at ``start`` with all vertices in ``allowed``."""
    out = []
    stack = [(start, (), {start})]
    while stack:
        v, edges, seen = stack.pop()
        if len(edges) >= max_len:
            continue
        for e in E.out_edges(v):
            w = E.dst(e)
            if w == start:
                out.append(edges + (e,))
            elif w in allowed and w not in seen:
                stack.append((w, edges + (e,), seen | {w}))
    return out


def cycles_connecting_to(E: Graph, v, max_len):
    """Cycles of length <= max_len whose vertices connect to v, one per rotation class.

    Each cycle is returned as its least rotation in declared edge order;
    the list is ordered by (length, lex).
    """
    reach = vertices_connecting_to(E, v)
    found = set()
    for u in reach:
        for edges in _cycles_from(E, u, reach, max_len):
            found.add(_least_rotation(E, edges))
    ordered = sorted(found, key=lambda es: (len(es), E.edge_key(es)))
    return [E.path(es) for es in ordered]


def is_maximal_cycle(E: Graph, c: Path) -> bool:
    """SCC test: the only nontrivial SCC among vertices reaching s(c) is c itself."""
    if not c.is_closed():
        return False
    verts = _vertex_sequence(E, c)
    if len(set(verts)) != len(verts):
        return False
    reach = vertices_connecting_to(E, c.src)
    g = nx.DiGraph()
    g.add_nodes_from(reach)
    induced = [e for e in E.edges if e.src in reach and e.dst in reach]
    g.add_edges_from((e.src, e.dst) for e in induced)
    nontrivial = [
        comp for comp in nx.strongly_connected_components(g)
        if len(comp) > 1 or g.has_edge(next(iter(comp)), next(iter(comp)))
    ]
    if len(nontrivial) != 1 or nontrivial[0] != set(verts):
        return False
    inside = {e.name for e in induced if e.src in nontrivial[0] and e.dst in nontrivial[0]}
    return inside == set(c.edges)


def classify_closed_path(E: Graph, p: Path) -> ClosedPathClass:
    if not p.edges:
        raise PreconditionError("classification needs a path of length >= 1")
    for e in p.edges:
        E.edge(e)
    if not E.composes(p.edges):
        raise PathError(f"{p} is not a path")
    if not p.is_closed():
        return ClosedPathClass()
    verts = _vertex_sequence(E, p)
    simple = all(x != verts[0] for x in verts[1:])
    cycle = len(set(verts)) == len(verts)
    loop = len(p.edges) == 1
    on_cycle = set(verts)
    source = cycle and not any(
        e.dst in on_cycle and e.name not in p.edges for e in E.edges
    )
    return ClosedPathClass(
        closed=True,
        simple=simple,
        basic=is_basic(p),
        cycle=cycle,
        loop=loop,
        source_cycle=source,
        source_loop=source and loop,
        maximal_cycle=cycle and is_maximal_cycle(E, p),
    )


def require_basic_closed(E: Graph, c: Path):
    if not c.edges or not E.composes(c.edges) or not c.is_closed() or not is_basic(c):
        raise PreconditionError(f"{c} is not a basic closed path")


def require_source_loop(E: Graph, c: Path):
    if not classify_closed_path(E, c).source_loop:
        raise PreconditionError(f"{c} is not a source loop")


def enumerate_Ac(E: Graph, c: Path, max_len):
    """Paths of length 1..max_len ranging at s(c), divisible by c on neither side."""
    require_basic_closed(E, c)
    n = len(c.edges)
    v = c.src
    layer = [()]
    found = []
    for _ in range(max_len):
        nxt = []
        for suffix in layer:
            head = E.src(suffix[0]) if suffix else v
            for e in E.in_edges(head):
                nxt.append((e,) + suffix)
        layer = nxt
        for es in layer:
            if es[:n] == c.edges or es[-n:] == c.edges:
                continue
            found.append(es)
    found.sort(key=lambda es: (len(es), E.edge_key(es)))
    return [E.path(es) for es in found]
