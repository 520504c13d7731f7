"""Random graphs and elements for property sweeps. All draws go through an explicit rng."""

from __future__ import annotations

import random

from .algebra import Element, LeavittPathAlgebra
from .quiver import Graph, reaches


def _names(prefix: str, n: int) -> list[str]:
    return [f"{prefix}{i}" for i in range(n)]


def random_graph(rng: random.Random, max_vertices: int = 6, max_edges: int = 9, min_edges: int = 0) -> Graph:
    nv = rng.randint(1, max_vertices)
    ne = rng.randint(min(min_edges, max_edges), max_edges)
    verts = _names("v", nv)
    edges = [(f"e{i}", rng.choice(verts), rng.choice(verts)) for i in range(ne)]
    return Graph.build(verts, edges)


def random_acyclic_graph(rng: random.Random, max_vertices: int = 6, max_edges: int = 9, min_edges: int = 0) -> Graph:
    nv = rng.randint(1, max_vertices)
    verts = _names("v", nv)
    if nv == 1:
        return Graph.build(verts, [])
    ne = rng.randint(min(min_edges, max_edges), max_edges)
    edges = []
    for i in range(ne):
        a, b = sorted(rng.sample(range(nv), 2))
        edges.append((f"e{i}", verts[a], verts[b]))
    return Graph.build(verts, edges)


def random_cyclic_graph(rng: random.Random, max_vertices: int = 6, max_edges: int = 9) -> Graph:
    """A random graph guaranteed to contain a cycle."""
    g = random_graph(rng, max_vertices, max(max_edges - 1, 0))
    v = rng.choice(g.vertices)
    w = rng.choice(g.vertices)
    edges = [(e.id, e.src, e.dst) for e in g.edges]
    # close a cycle: an edge w -> v where v already reaches w, or a loop
    if not reaches(g, v, w):
        w = v
    edges.append((f"e{len(edges)}", w, v))
    return Graph.build(g.vertices, edges)


def random_no_exit_graph(rng: random.Random, max_vertices: int = 6, max_edges: int = 9) -> Graph:
    """Disjoint cycles whose vertices emit nothing else, fed by an acyclic part."""
    nv = rng.randint(1, max_vertices)
    verts = _names("v", nv)
    # the last vertices are grouped into cycles; the rest is layered before them
    n_cyc = rng.randint(0, nv)
    cyc_verts = verts[nv - n_cyc:]
    edges: list[tuple[str, str, str]] = []
    i = 0
    while i < len(cyc_verts):
        k = rng.randint(1, min(3, len(cyc_verts) - i))
        group = cyc_verts[i:i + k]
        for j, v in enumerate(group):
            edges.append((f"e{len(edges)}", v, group[(j + 1) % k]))
        i += k
    tree = verts[: nv - n_cyc]
    budget = max(max_edges - len(edges), 0)
    for _ in range(rng.randint(0, budget)):
        if not tree:
            break
        a = rng.randrange(len(tree))
        later = verts[a + 1:]
        if not later:
            continue
        edges.append((f"e{len(edges)}", tree[a], rng.choice(later)))
    return Graph.build(verts, edges)


def random_edge_subset(rng: random.Random, g: Graph, max_size: int | None = None) -> list[str]:
    ids = [e.id for e in g.edges]
    k = rng.randint(0, len(ids) if max_size is None else min(max_size, len(ids)))
    return sorted(rng.sample(ids, k))


def random_element(
    A: LeavittPathAlgebra,
    rng: random.Random,
    max_terms: int = 3,
    max_length: int = 2,
    coeff_range: int = 3,
    nonzero: bool = True,
) -> Element:
    basis = A.basis(max_length)
    if not basis:
        return A.zero()
    while True:
        out = A.zero()
        for m in rng.sample(basis, min(rng.randint(1, max_terms), len(basis))):
            c = rng.randint(-coeff_range, coeff_range)
            if c:
                out = out + A.from_monomial(m, c)
        if out or not nonzero:
            return out


def random_homogeneous_element(A: LeavittPathAlgebra, rng: random.Random, max_terms: int = 3, max_length: int = 2) -> Element:
    basis = A.basis(max_length)
    d = rng.choice(basis).degree
    pool = [m for m in basis if m.degree == d]
    out = A.zero()
    while not out:
        for m in rng.sample(pool, min(rng.randint(1, max_terms), len(pool))):
            out = out + A.from_monomial(m, rng.choice([-2, -1, 1, 2, 3]))
    return out
