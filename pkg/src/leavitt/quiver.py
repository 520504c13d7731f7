"""Finite directed multigraphs and the path/cycle predicates used on them."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

# Plain ids follow the usual identifier grammar; derived graphs (E_F, duals)
# additionally use '(', ',', ')' and '.' to build collision-free names.
ID_RE = re.compile(r"[A-Za-z(][A-Za-z0-9_.,()]*\Z")


class GraphError(ValueError):
    """Invalid graph data."""


class GraphParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class InfinitePathCount(ValueError):
    """Raised when infinitely many paths end at the requested vertex."""


@dataclass(frozen=True, order=True)
class Edge:
    id: str
    src: str
    dst: str


@dataclass(frozen=True)
class Graph:
    """A finite quiver. Vertices and edges are kept sorted by id."""

    vertices: tuple[str, ...] = ()
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        verts = tuple(sorted(self.vertices))
        edges = tuple(sorted(Edge(*e) if not isinstance(e, Edge) else e for e in self.edges))
        seen: set[str] = set()
        for v in verts:
            _check_id(v)
            if v in seen:
                raise GraphError(f"duplicate id {v!r}")
            seen.add(v)
        vset = set(verts)
        for e in edges:
            _check_id(e.id)
            if e.id in seen:
                raise GraphError(f"duplicate id {e.id!r}")
            seen.add(e.id)
            for end in (e.src, e.dst):
                if end not in vset:
                    raise GraphError(f"edge {e.id!r} references undeclared vertex {end!r}")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str, str]]) -> "Graph":
        return cls(tuple(vertices), tuple(Edge(*e) for e in edges))

    # derived lookups; safe to cache because the dataclass is frozen
    @cached_property
    def edge_map(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(self.vertices)

    @cached_property
    def out_edges(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.src].append(e.id)
        return {v: tuple(es) for v, es in out.items()}

    @cached_property
    def in_edges(self) -> dict[str, tuple[str, ...]]:
        inn: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            inn[e.dst].append(e.id)
        return {v: tuple(es) for v, es in inn.items()}

    def s(self, e: str) -> str:
        return self.edge_map[e].src

    def r(self, e: str) -> str:
        return self.edge_map[e].dst

    def has_vertex(self, v: str) -> bool:
        return v in self.vertex_set

    def has_edge(self, e: str) -> bool:
        return e in self.edge_map

    def __len__(self):
        return len(self.vertices)

    def to_text(self) -> str:
        lines = [f"vertex {v}" for v in self.vertices]
        lines += [f"edge {e.id} {e.src} {e.dst}" for e in self.edges]
        return "\n".join(lines) + ("\n" if lines else "")

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"id": e.id, "src": e.src, "dst": e.dst} for e in self.edges],
        }

    def __repr__(self):
        return f"Graph({len(self.vertices)} vertices, {len(self.edges)} edges)"


def _check_id(name: str) -> None:
    if not isinstance(name, str) or not ID_RE.match(name):
        raise GraphError(f"invalid id {name!r}")


def parse_graph(text: str) -> Graph:
    """Parse the line-based graph format (``vertex <id>`` / ``edge <id> <src> <dst>``)."""
    vertices: list[str] = []
    edges: list[Edge] = []
    seen: dict[str, int] = {}
    vertex_set: set[str] = set()
    pending: list[tuple[Edge, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "vertex":
            if len(parts) != 2:
                raise GraphParseError("expected 'vertex <id>'", lineno)
            ids = [parts[1]]
        elif kind == "edge":
            if len(parts) != 4:
                raise GraphParseError("expected 'edge <id> <src> <dst>'", lineno)
            ids = [parts[1]]
        else:
            raise GraphParseError(f"unknown directive {kind!r}", lineno)
        for name in ids:
            if not ID_RE.match(name):
                raise GraphParseError(f"invalid id {name!r}", lineno)
            if name in seen:
                raise GraphParseError(f"duplicate id {name!r} (first declared on line {seen[name]})", lineno)
            seen[name] = lineno
        if kind == "vertex":
            vertices.append(parts[1])
            vertex_set.add(parts[1])
        else:
            pending.append((Edge(parts[1], parts[2], parts[3]), lineno))
    for e, lineno in pending:
        for end in (e.src, e.dst):
            if end not in vertex_set:
                raise GraphParseError(f"edge {e.id!r} references undeclared vertex {end!r}", lineno)
        edges.append(e)
    if not vertices:
        raise GraphParseError("graph declares no vertices")
    return Graph(tuple(vertices), tuple(edges))


def graph_from_json(data: dict) -> Graph:
    return Graph(
        tuple(data["vertices"]),
        tuple(Edge(d["id"], d["src"], d["dst"]) for d in data["edges"]),
    )


def dumps_json(g: Graph) -> str:
    return json.dumps(g.to_json(), sort_keys=True)


# --- paths and cycles -------------------------------------------------------


@dataclass(frozen=True)
class Path:
    """A trivial path at ``source`` (no edges) or a composable edge sequence."""

    edges: tuple[str, ...]
    source: str
    range: str

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def is_trivial(self) -> bool:
        return not self.edges


def make_path(g: Graph, edges: Iterable[str] = (), base: str | None = None) -> Path:
    edges = tuple(edges)
    if not edges:
        if base is None or not g.has_vertex(base):
            raise GraphError(f"trivial path needs a vertex of the graph, got {base!r}")
        return Path((), base, base)
    for e in edges:
        if not g.has_edge(e):
            raise GraphError(f"unknown edge {e!r}")
    for a, b in zip(edges, edges[1:]):
        if g.r(a) != g.s(b):
            raise GraphError(f"edges {a!r} and {b!r} are not composable")
    return Path(edges, g.s(edges[0]), g.r(edges[-1]))


@dataclass(frozen=True)
class Cycle:
    """A closed path ``edges`` with ``vertices[i] = s(edges[i])``.

    Cycles proper are the simple ones (pairwise distinct sources);
    closed paths that revisit a vertex arise as lifts of E_F cycles.
    """

    edges: tuple[str, ...]
    vertices: tuple[str, ...] = field(compare=False)

    @property
    def base(self) -> str:
        return self.vertices[0]

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def is_simple(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices)

    def rotate_to(self, v: str) -> "Cycle":
        i = self.vertices.index(v)
        return Cycle(self.edges[i:] + self.edges[:i], self.vertices[i:] + self.vertices[:i])

    def canonical(self) -> "Cycle":
        """Rotation starting at the smallest source vertex (first occurrence)."""
        return self.rotate_to(min(self.vertices))

    def __str__(self):
        return " ".join(self.edges)


def make_cycle(g: Graph, edges: Iterable[str]) -> Cycle:
    p = make_path(g, edges)
    if p.is_trivial or p.source != p.range:
        raise GraphError(f"{' '.join(p.edges)!r} is not a closed path")
    return Cycle(p.edges, tuple(g.s(e) for e in p.edges))


def sinks(g: Graph) -> list[str]:
    return [v for v in g.vertices if not g.out_edges[v]]


def sources(g: Graph) -> list[str]:
    return [v for v in g.vertices if not g.in_edges[v]]


def regular_vertices(g: Graph) -> list[str]:
    return [v for v in g.vertices if g.out_edges[v]]


def simple_cycles(g: Graph) -> list[Cycle]:
    """All cycles with pairwise distinct sources, one per rotation class.

    Each is based at its smallest vertex; parallel edges give distinct
    cycles. Ordered by (length, base, edges).
    """
    found: list[Cycle] = []
    for base in g.vertices:
        # DFS through vertices larger than base so each cycle is seen once
        stack: list[tuple[str, tuple[str, ...], tuple[str, ...]]] = [(base, (), ())]
        while stack:
            v, path, visited = stack.pop()
            for e in g.out_edges[v]:
                w = g.r(e)
                if w == base:
                    found.append(Cycle(path + (e,), visited + (v,)))
                elif w > base and w not in visited and w != v:
                    stack.append((w, path + (e,), visited + (v,)))
    found.sort(key=lambda c: (c.length, c.base, c.edges))
    return found


def find_cycle(g: Graph) -> Cycle | None:
    """A witness cycle, or None when the graph is acyclic."""
    # Kahn's algorithm decides acyclicity cheaply; enumerate only if needed
    indeg = {v: len(g.in_edges[v]) for v in g.vertices}
    queue = [v for v in g.vertices if indeg[v] == 0]
    removed = 0
    while queue:
        v = queue.pop()
        removed += 1
        for e in g.out_edges[v]:
            w = g.r(e)
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    if removed == len(g.vertices):
        return None
    return simple_cycles(g)[0]


def is_acyclic(g: Graph) -> bool:
    return find_cycle(g) is None


def cycle_exits(g: Graph, c: Cycle) -> list[str]:
    """Edges e with s(e) = s(e_i) and e != e_i for some position i of c."""
    exits = set()
    for v, ei in zip(c.vertices, c.edges):
        exits.update(e for e in g.out_edges[v] if e != ei)
    return sorted(exits)


def cycle_has_exit(g: Graph, c: Cycle) -> str | None:
    """First exit edge of ``c`` (sorted by id), or None."""
    exits = cycle_exits(g, c)
    return exits[0] if exits else None


def no_exit_witness(g: Graph) -> tuple[Cycle, str] | None:
    """A (cycle, exit) pair if some cycle has an exit, else None."""
    for c in simple_cycles(g):
        f = cycle_has_exit(g, c)
        if f is not None:
            return c, f
    return None


def has_no_exits(g: Graph) -> bool:
    return no_exit_witness(g) is None


def reachable_from(g: Graph, v: str) -> set[str]:
    seen = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for e in g.out_edges[u]:
            w = g.r(e)
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def reaches(g: Graph, v: str, w: str) -> bool:
    """True iff a (possibly trivial) path runs from v to w."""
    if not (g.has_vertex(v) and g.has_vertex(w)):
        raise GraphError(f"unknown vertex in reaches({v!r}, {w!r})")
    return w in reachable_from(g, v)


def cofinality_witness(g: Graph) -> tuple[str, str] | None:
    """(vertex, tail description) for a non-cofinal vertex, or None.

    On a finite graph every path in E^{<=inf} either stops at a sink or
    eventually runs around a simple cycle, so it suffices to check that each
    vertex reaches every sink and some vertex of every simple cycle.
    """
    tails = [(f"sink {w}", {w}) for w in sinks(g)]
    tails += [(f"cycle {c}", set(c.vertices)) for c in simple_cycles(g)]
    for v in g.vertices:
        reach = reachable_from(g, v)
        for desc, targets in tails:
            if not reach & targets:
                return v, desc
    return None


def is_cofinal(g: Graph) -> bool:
    return cofinality_witness(g) is None


def count_paths_into(g: Graph, v: str, forbidden: Iterable[str] = ()) -> int:
    """Number of paths (trivial one included) ending at v and avoiding ``forbidden``."""
    if not g.has_vertex(v):
        raise GraphError(f"unknown vertex {v!r}")
    banned = set(forbidden)
    incoming = {u: [e for e in g.in_edges[u] if e not in banned] for u in g.vertices}
    # ancestors of v in the allowed subgraph
    anc = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for e in incoming[u]:
            x = g.s(e)
            if x not in anc:
                anc.add(x)
                stack.append(x)
    # paths_to[u] = number of paths ending at u inside the ancestor subgraph;
    # computed in topological order, which fails exactly when a cycle feeds v
    indeg = {u: 0 for u in anc}
    for u in anc:
        for e in incoming[u]:
            indeg[u] += 1
    # incoming edges of ancestors all start at ancestors, so this is closed
    outgoing: dict[str, list[str]] = {u: [] for u in anc}
    for u in anc:
        for e in incoming[u]:
            outgoing[g.s(e)].append(u)
    order = []
    queue = sorted(u for u in anc if indeg[u] == 0)
    while queue:
        u = queue.pop()
        order.append(u)
        for w in outgoing[u]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    if len(order) != len(anc):
        raise InfinitePathCount(f"a cycle reaches {v!r}; infinitely many paths end there")
    paths_to = {}
    for u in order:
        paths_to[u] = 1 + sum(paths_to[g.s(e)] for e in incoming[u])
    return paths_to[v]


def paths_of_length(g: Graph, n: int) -> list[tuple[str, ...]]:
    """All edge sequences of length exactly n >= 1 that compose."""
    if n <= 0:
        return []
    layer = [(e.id,) for e in g.edges]
    for _ in range(n - 1):
        layer = [p + (f,) for p in layer for f in g.out_edges[g.r(p[-1])]]
    return layer


def subgraph_without(g: Graph, edges: Iterable[str]) -> Graph:
    drop = set(edges)
    return Graph(g.vertices, tuple(e for e in g.edges if e.id not in drop))
