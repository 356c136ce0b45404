"""Graph reductions that preserve the Morita class, and the maps between them.

Each reduction returns the smaller graph F together with a GeneratorMap
theta: L_K(F) -> L_K(E) onto a full corner eps L_K(E) eps. Chaining source
eliminations and one cycle collapse turns a maximal cycle into a source loop.
"""

from __future__ import annotations

from typing import NamedTuple

from .algebra import LeavittPathAlgebra, LpaElement
from .errors import FieldMismatchError, PreconditionError
from .fields import QQ
from .graph import Graph, Path, classify_closed_path, connects_to


class GeneratorMap:
    """theta on the vertices and edges of ``source``; ghosts follow by star."""

    def __init__(self, source: Graph, target: LeavittPathAlgebra, images: dict):
        missing = [g for g in list(source.vertices) + [e.name for e in source.edges] if g not in images]
        if missing:
            raise PreconditionError(f"generator map lacks images for {missing}")
        self.source = source
        self.target = target
        self.images = dict(images)

    def __getitem__(self, generator) -> LpaElement:
        try:
            return self.images[generator]
        except KeyError:
            raise PreconditionError(f"unknown generator {generator!r}") from None

    def vertex(self, v):
        return self[v]

    def edge(self, e):
        return self[e]

    def ghost(self, e):
        return self[e].star()

    @property
    def epsilon(self) -> LpaElement:
        """theta(1): the corner idempotent."""
        total = self.target.zero()
        for v in self.source.vertices:
            total = total + self[v]
        return total

    def to_json(self):
        return {g: str(x) for g, x in self.images.items()}


def _path_image(theta: GeneratorMap, edges, vertex):
    if not edges:
        return theta.vertex(vertex)
    out = theta.edge(edges[0])
    for e in edges[1:]:
        out = out * theta.edge(e)
    return out


def theta_eval(theta: GeneratorMap, x: LpaElement) -> LpaElement:
    """Multiplicative, linear, star-compatible extension of ``theta``."""
    if x.algebra.graph != theta.source:
        raise PreconditionError("element does not live over the map's source graph")
    if x.algebra.field != theta.target.field:
        raise FieldMismatchError("source and target algebras use different fields")
    total = theta.target.zero()
    for m, k in x.items():
        if not m.real and not m.ghost:
            img = theta.vertex(m.vertex)
        elif not m.ghost:
            img = _path_image(theta, m.real, m.vertex)
        elif not m.real:
            img = _path_image(theta, m.ghost, m.vertex).star()
        else:
            img = _path_image(theta, m.real, m.vertex) * _path_image(theta, m.ghost, m.vertex).star()
        total = total + img.scale(k)
    return total


def compose(outer: GeneratorMap, inner: GeneratorMap) -> GeneratorMap:
    """outer . inner, for inner: L(F2) -> L(F1) and outer: L(F1) -> L(E)."""
    if inner.target.graph != outer.source:
        raise PreconditionError("maps do not compose")
    images = {g: theta_eval(outer, x) for g, x in inner.images.items()}
    return GeneratorMap(inner.source, outer.target, images)


def identity_map(algebra: LeavittPathAlgebra) -> GeneratorMap:
    G = algebra.graph
    images = {v: algebra.vertex(v) for v in G.vertices}
    images.update({e.name: algebra.edge(e.name) for e in G.edges})
    return GeneratorMap(G, algebra, images)


def relation_images(theta: GeneratorMap):
    """theta applied to every defining relation of L(source), by label.

    Each value must be zero for theta to be a homomorphism.
    """
    F = theta.source
    out = {}
    V = list(F.vertices)
    for v in V:
        for w in V:
            val = theta.vertex(v) * theta.vertex(w)
            if v == w:
                val = val - theta.vertex(v)
            out[f"V {v}.{w}"] = val
    for e in F.edges:
        out[f"E1 {e.name}"] = theta.vertex(e.src) * theta.edge(e.name) - theta.edge(e.name)
        out[f"E1' {e.name}"] = theta.edge(e.name) * theta.vertex(e.dst) - theta.edge(e.name)
        out[f"E2 {e.name}"] = theta.vertex(e.dst) * theta.ghost(e.name) - theta.ghost(e.name)
        out[f"E2' {e.name}"] = theta.ghost(e.name) * theta.vertex(e.src) - theta.ghost(e.name)
        for f in F.edges:
            val = theta.ghost(e.name) * theta.edge(f.name)
            if e.name == f.name:
                val = val - theta.vertex(e.dst)
            out[f"CK1 {e.name}*.{f.name}"] = val
    for v in V:
        outs = F.out_edges(v)
        if outs:
            val = theta.vertex(v)
            for e in outs:
                val = val - theta.edge(e) * theta.ghost(e)
            out[f"CK2 {v}"] = val
    return out


def _fresh(name, taken):
    if name not in taken:
        return name
    i = 1
    while f"{name}_{i}" in taken:
        i += 1
    return f"{name}_{i}"


def source_eliminate(E: Graph, z, field=QQ, special_edges=None):
    """Drop the source z and its out-edges; theta is the inclusion."""
    E.check_vertex(z)
    if not E.is_source(z):
        raise PreconditionError(f"{z} is not a source")
    if len(E.vertices) < 2:
        raise PreconditionError(f"{z} is the only vertex")
    F = Graph(
        [v for v in E.vertices if v != z],
        [(e.name, e.src, e.dst) for e in E.edges if e.src != z],
    )
    A = LeavittPathAlgebra(E, field, special_edges)
    images = {v: A.vertex(v) for v in F.vertices}
    images.update({e.name: A.edge(e.name) for e in F.edges})
    return F, GeneratorMap(F, A, images)


def collapse_source_cycle(E: Graph, c: Path, field=QQ, special_edges=None):
    """Shrink the source cycle c = e_1...e_n (n >= 2) to a loop d at v = s(c).

    Each exit g of the cycle at v_i becomes f_g: v -> r(g), with
    theta(f_g) = e_1...e_(i-1) g and theta(d) = c.
    """
    flags = classify_closed_path(E, c)
    if not flags.source_cycle:
        raise PreconditionError(f"{c} is not a source cycle")
    if flags.loop:
        raise PreconditionError(f"{c} is already a loop")
    cyc = list(c.vertices[:-1])
    v = cyc[0]
    gone = set(cyc[1:])
    on_cycle = set(cyc)
    taken = set(E.vertices) | {e.name for e in E.edges}
    A = LeavittPathAlgebra(E, field, special_edges)

    d = _fresh("d", taken)
    taken.add(d)
    new_edges = [(d, v, v)]
    images = {d: A.path_element(c)}
    for i, vi in enumerate(cyc):
        for g in E.out_edges(vi):
            if E.dst(g) in on_cycle:
                continue
            f = _fresh(f"f_{g}", taken)
            taken.add(f)
            new_edges.append((f, v, E.dst(g)))
            head = c.edges[:i]
            images[f] = A.path_element(E.path(head + (g,)))
    for e in E.edges:
        if e.src not in on_cycle and e.src not in gone:
            new_edges.append((e.name, e.src, e.dst))
            images[e.name] = A.edge(e.name)
    F = Graph([w for w in E.vertices if w not in gone], new_edges)
    images.update({w: A.vertex(w) for w in F.vertices})
    return F, GeneratorMap(F, A, images)


class Reduction(NamedTuple):
    graph: Graph
    loop: Path
    chain: list

    @property
    def steps(self):
        return [kind for kind, _ in self.chain]

    def theta(self, algebra: LeavittPathAlgebra) -> GeneratorMap:
        """The composite L(final graph) -> ``algebra`` (identity for an empty chain)."""
        if not self.chain:
            return identity_map(algebra)
        maps = [m for _, m in self.chain]
        out = maps[0]
        for m in maps[1:]:
            out = compose(out, m)
        return out


def reduce_to_source_loop(E: Graph, c: Path, field=QQ, special_edges=None) -> Reduction:
    """Eliminate sources feeding c (least name first), then collapse c to a loop."""
    if not classify_closed_path(E, c).maximal_cycle:
        raise PreconditionError(f"{c} is not a maximal cycle")
    G, chain = E, []
    special = special_edges
    on_cycle = set(c.vertices)
    while True:
        feeders = sorted(
            z for z in G.vertices
            if z not in on_cycle and G.is_source(z) and connects_to(G, z, c.src)
        )
        if not feeders:
            break
        G, theta = source_eliminate(G, feeders[0], field, special)
        chain.append((f"eliminate {feeders[0]}", theta))
        special = _restrict(special, G)
    flags = classify_closed_path(G, c)
    if not flags.source_cycle:
        blocking = sorted(e.src for e in G.edges if e.dst in on_cycle and e.name not in c.edges)
        raise PreconditionError(f"no source left to eliminate; {blocking[0]} still enters {c}")
    if flags.loop:
        return Reduction(G, c, chain)
    F, theta = collapse_source_cycle(G, c, field, special)
    chain.append((f"collapse {c}", theta))
    loop = F.path(F.out_edges(c.src)[0])
    return Reduction(F, loop, chain)


def _restrict(special, G):
    if not special:
        return special
    return {v: e for v, e in special.items() if G.has_vertex(v) and G.has_edge(e)}
