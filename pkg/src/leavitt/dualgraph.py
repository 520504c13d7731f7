"""Dual graph constructions: D(E), the dual D_E(F) of a subgraph, and d(E) = D_E(E)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .algebra import dimension
from .quiver import Edge, Graph, GraphError, has_no_exits, is_acyclic, sinks
from .report import Report
from .structure import matricial_shape


@dataclass(frozen=True)
class SubgraphSpec:
    vertices: frozenset[str]
    edges: frozenset[str]

    @classmethod
    def of(cls, vertices: Iterable[str], edges: Iterable[str]) -> "SubgraphSpec":
        return cls(frozenset(vertices), frozenset(edges))

    @classmethod
    def whole(cls, g: Graph) -> "SubgraphSpec":
        return cls(frozenset(g.vertices), frozenset(e.id for e in g.edges))

    def validate(self, g: Graph) -> None:
        for v in self.vertices:
            if not g.has_vertex(v):
                raise GraphError(f"unknown vertex {v!r}")
        for e in self.edges:
            if not g.has_edge(e):
                raise GraphError(f"unknown edge {e!r}")
            if g.s(e) not in self.vertices or g.r(e) not in self.vertices:
                raise GraphError(f"not a subgraph: edge {e!r} leaves the vertex set")


def dual_edge_id(e: str, f: str) -> str:
    return f"{e}.{f}"


def _dual_edges(g: Graph, edges: Iterable[str]) -> list[Edge]:
    keep = set(edges)
    out = []
    for e in sorted(keep):
        for f in g.out_edges[g.r(e)]:
            if f in keep:
                out.append(Edge(dual_edge_id(e, f), e, f))
    return out


def usual_dual(g: Graph) -> Graph:
    """D(E): vertices are the edges of E, one edge e.f per path ef of length 2."""
    ids = [e.id for e in g.edges]
    return Graph(tuple(ids), tuple(_dual_edges(g, ids)))


def dual_in(g: Graph, F: SubgraphSpec) -> Graph:
    """D_E(F) = D(F) plus the sinks of F and the vertices of F emitting edges outside F.

    Each edge e of F whose range is one of those extra vertices becomes an
    edge from the vertex e to r(e); it is named ``e.r(e)`` so it cannot
    clash with the vertex e itself.
    """
    F.validate(g)
    out_F = {v: [e for e in g.out_edges[v] if e in F.edges] for v in F.vertices}
    F1 = {v for v in F.vertices if not out_F[v]}
    s_F = {g.s(e) for e in F.edges}
    s_rest = {e.src for e in g.edges if e.id not in F.edges}
    F2 = s_F & s_rest
    verts = sorted(F.edges) + sorted(F1 | F2)
    edges = _dual_edges(g, F.edges)
    for e in sorted(F.edges):
        if g.r(e) in F1 or g.r(e) in F2:
            edges.append(Edge(dual_edge_id(e, g.r(e)), e, g.r(e)))
    return Graph(tuple(verts), tuple(edges))


def dual(g: Graph) -> Graph:
    """d(E) = D_E(E)."""
    return dual_in(g, SubgraphSpec.whole(g))


def compare_invariants(g: Graph) -> Report:
    """Compare isomorphism invariants of L_K(E) with those of L_K(d(E)) (and L_K(D(E)) if E has no sinks)."""
    rep = Report()
    targets = [("d(E)", dual(g))]
    if not sinks(g):
        targets.append(("D(E)", usual_dual(g)))
    for name, h in targets:
        a, b = is_acyclic(g), is_acyclic(h)
        rep.add(f"{name}: acyclic", a == b, f"{a} vs {b}")
        da, db = dimension(g), dimension(h)
        if da is not None and db is not None:
            rep.add(f"{name}: dimension", da == db, f"{da} vs {db}")
        na, nb = has_no_exits(g), has_no_exits(h)
        rep.add(f"{name}: directly_finite", na == nb, f"{na} vs {nb}")
        if na and nb:
            sa, sb = matricial_shape(g), matricial_shape(h)
            rep.add(f"{name}: matricial_shape", sa == sb, f"{sa.to_json()} vs {sb.to_json()}")
    return rep
