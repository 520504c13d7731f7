"""The graph E_F, the homomorphism theta: L_K(E_F) -> L_K(E) and the subalgebras B(a_1..a_l).

Given finitely many elements of L_K(E), only a finite edge set F occurs in
them. E_F is a finite graph built from F; theta maps its Leavitt path algebra
into L_K(E), and together with a few vertices and idempotents the image
forms a subalgebra B containing the given elements. Ring properties proved
for Leavitt path algebras of finite graphs then pass to L_K(E).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .algebra import EDGE, VERTEX, Element, LeavittPathAlgebra, Monomial, ck_relators
from .field import RATIONAL, Field
from .linalg import Echelon
from .quiver import (
    Cycle,
    Edge,
    Graph,
    GraphError,
    cycle_has_exit,
    is_acyclic,
    simple_cycles,
)
from .report import Report

EDGE_TYPE, MIDDLE_TYPE, RANGE_TYPE = "edge", "middle", "range"


def pair_id(x: str, y: str) -> str:
    return f"({x},{y})"


@dataclass(frozen=True)
class EFGraph:
    """E_F together with the vertex tags and the host data (E, F)."""

    graph: Graph
    host: Graph
    F: tuple[str, ...]
    kinds: tuple[tuple[str, str], ...]  # (E_F vertex, tag), sorted
    pairs: tuple[tuple[str, str, str], ...]  # (E_F edge id, x, y)

    @cached_property
    def kind(self) -> dict[str, str]:
        return dict(self.kinds)

    @cached_property
    def pair(self) -> dict[str, tuple[str, str]]:
        return {eid: (x, y) for eid, x, y in self.pairs}

    def vertices_of(self, tag: str) -> list[str]:
        return [v for v, k in self.kinds if k == tag]


def build_ef(g: Graph, F: Iterable[str]) -> EFGraph:
    """E_F^0 = F u (r(F) n s(F) n s(E^1 minus F)) u (r(F) minus s(F)), edges (e, y) with r(e) = sigma(y).

    Here sigma(y) = s(y) for an edge-type vertex y and sigma(v) = v for a
    vertex-type one; the range-type edges (e, r(e)) are the case y in r(F)\\s(F).
    """
    F = tuple(sorted(set(F)))
    for e in F:
        if not g.has_edge(e):
            raise GraphError(f"unknown edge {e!r} in F")
    Fset = set(F)
    rF = {g.r(e) for e in F}
    sF = {g.s(e) for e in F}
    s_rest = {e.src for e in g.edges if e.id not in Fset}
    middle = rF & sF & s_rest
    rng = rF - sF
    kinds = {e: EDGE_TYPE for e in F}
    kinds.update({v: MIDDLE_TYPE for v in middle})
    kinds.update({v: RANGE_TYPE for v in rng})

    def sigma(y: str) -> str:
        return g.s(y) if kinds[y] == EDGE_TYPE else y

    pairs = []
    for e in F:
        for y in sorted(kinds):
            if g.r(e) == sigma(y):
                pairs.append((pair_id(e, y), e, y))
    ef_graph = Graph(tuple(kinds), tuple(Edge(pid, x, y) for pid, x, y in pairs))
    return EFGraph(ef_graph, g, F, tuple(sorted(kinds.items())), tuple(sorted(pairs)))


def acyclicity_transfer_check(g: Graph, F: Iterable[str]) -> Report:
    """E acyclic implies E_F acyclic."""
    rep = Report()
    ef = build_ef(g, F)
    if not is_acyclic(g):
        rep.add("acyclicity_transfer", True, "vacuous: E has a cycle")
        return rep
    cycles = simple_cycles(ef.graph)
    rep.add("acyclicity_transfer", not cycles, f"E_F cycle {cycles[0]}" if cycles else None)
    return rep


class Theta:
    """The homomorphism theta: L_K(E_F) -> L_K(E) for one (E, F, K)."""

    def __init__(self, ef: EFGraph, field: Field = RATIONAL, host: LeavittPathAlgebra | None = None):
        self.ef = ef
        self.host = host if host is not None else LeavittPathAlgebra(ef.host, field)
        if self.host.graph != ef.host:
            raise ValueError("host algebra does not match E_F's graph")
        self.field = self.host.field
        self.source = LeavittPathAlgebra(ef.graph, self.field)
        self.vertex_images, self.edge_images = self._generators()
        self._mono_cache: dict[Monomial, Element] = {}

    def _generators(self):
        ef, A, g = self.ef, self.host, self.ef.host
        Fset = set(ef.F)

        def ff_star(v: str) -> Element:
            # sum of f f* over f in F emitted by v
            out = A.zero()
            for f in g.out_edges[v]:
                if f in Fset:
                    out = out + A.edge(f) * A.ghost(f)
            return out

        vmap: dict[str, Element] = {}
        for v, kind in ef.kinds:
            if kind == EDGE_TYPE:
                vmap[v] = A.edge(v) * A.ghost(v)
            elif kind == MIDDLE_TYPE:
                vmap[v] = A.vertex(v) - ff_star(v)
            else:
                vmap[v] = A.vertex(v)
        emap: dict[str, Element] = {}
        for eid, e, y in ef.pairs:
            kind = ef.kind[y]
            if kind == EDGE_TYPE:
                emap[eid] = A.edge(e) * A.edge(y) * A.ghost(y)
            elif kind == MIDDLE_TYPE:
                emap[eid] = A.edge(e) - A.edge(e) * ff_star(g.r(e))
            else:
                emap[eid] = A.edge(e)
        return vmap, emap

    def generator_image(self, token: str) -> Element:
        kind, name = self.source.resolve(token)
        if kind == VERTEX:
            return self.vertex_images[name]
        if kind == EDGE:
            return self.edge_images[name]
        return self.edge_images[name].adjoint()

    def monomial_image(self, m: Monomial) -> Element:
        hit = self._mono_cache.get(m)
        if hit is not None:
            return hit
        if m.is_vertex:
            out = self.vertex_images[m.base]
        else:
            out = None
            for e in m.real:
                img = self.edge_images[e]
                out = img if out is None else out * img
            for e in reversed(m.ghost):
                img = self.edge_images[e].adjoint()
                out = img if out is None else out * img
        self._mono_cache[m] = out
        return out

    def __call__(self, a: Element) -> Element:
        if a.algebra.graph != self.ef.graph:
            raise ValueError("element does not live in L_K(E_F)")
        out = self.host.zero()
        for m, c in a.terms.items():
            out = out + self.monomial_image(m).scale(c)
        return out

    def map_words(self, combo) -> Element:
        """Image of a formal combination of E_F words (used for relators)."""
        out = self.host.zero()
        for c, word in combo:
            img = None
            for tok in word:
                t = self.generator_image(tok)
                img = t if img is None else img * t
            out = out + img.scale(c)
        return out

    # explicit preimages witnessing the image properties
    def edge_witness(self, e: str) -> Element:
        """x_e in L_K(E_F) with theta(x_e) = e, for e in F."""
        AF = self.source
        out = AF.zero()
        for eid, x, _ in self.ef.pairs:
            if x == e:
                out = out + AF.edge(eid)
        return out

    def vertex_witness(self, w: str) -> Element:
        """Sum of w (if it is an E_F vertex) and the F-edges emitted by w, as E_F vertices."""
        AF, g = self.source, self.ef.host
        out = AF.zero()
        if AF.graph.has_vertex(w):
            out = out + AF.vertex(w)
        for f in g.out_edges[w]:
            if f in self.ef.kind:
                out = out + AF.vertex(f)
        return out


def theta_generators(ef: EFGraph, field: Field = RATIONAL) -> tuple[dict[str, Element], dict[str, Element]]:
    t = Theta(ef, field)
    return t.vertex_images, t.edge_images


def theta(ef: EFGraph, a: Element) -> Element:
    return Theta(ef, a.algebra.field)(a)


def verify_theta_homomorphism(ef: EFGraph, field: Field = RATIONAL, th: Theta | None = None) -> Report:
    th = th if th is not None else Theta(ef, field)
    A, AF, g = th.host, th.source, ef.host
    rep = Report()

    bad = [name for name, combo in ck_relators(ef.graph) if th.map_words(combo)]
    rep.add("relators_vanish", not bad, f"{len(bad)} relators survive, e.g. {bad[0]}" if bad else None)

    verts = list(th.vertex_images.items())
    witness = None
    for i, (v, tv) in enumerate(verts):
        if not tv or tv * tv != tv:
            witness = f"theta({v}) is not a nonzero idempotent"
            break
        for w, tw in verts[i + 1:]:
            if tv * tw or tw * tv:
                witness = f"theta({v}), theta({w}) not orthogonal"
                break
        if witness:
            break
    rep.add("vertex_images_orthogonal_idempotents", witness is None, witness)

    witness = None
    for v, tv in th.vertex_images.items():
        if tv.degrees() != {0}:
            witness = f"theta({v}) has degrees {sorted(tv.degrees())}"
    for eid, te in th.edge_images.items():
        if te.degrees() != {1}:
            witness = f"theta({eid}) has degrees {sorted(te.degrees())}"
    rep.add("graded", witness is None, witness)

    witness = None
    for e in ef.F:
        x = th.edge_witness(e)
        if th(x) != A.edge(e) or th(x.adjoint()) != A.ghost(e):
            witness = f"edge {e}"
            break
    rep.add("F_and_F_star_in_image", witness is None, witness)

    rF = sorted({g.r(e) for e in ef.F})
    witness = None
    for w in rF:
        if th(th.vertex_witness(w)) != A.vertex(w):
            witness = f"vertex {w}"
            break
    rep.add("range_vertices_in_image", witness is None, witness)

    Fset = set(ef.F)
    witness = None
    for w in g.vertices:
        out = g.out_edges[w]
        if out and set(out) <= Fset:
            x = AF.zero()
            for f in out:
                x = x + AF.vertex(f)
            if th(x) != A.vertex(w):
                witness = f"vertex {w}"
                break
    rep.add("saturated_vertices_in_image", witness is None, witness)
    return rep


# --- the S-partition and B(a_1, ..., a_l) -------------------------------------


@dataclass(frozen=True)
class SPartition:
    F: tuple[str, ...]
    S: tuple[str, ...]
    S1: tuple[str, ...]
    S2: tuple[str, ...]
    S3: tuple[str, ...]
    S4: tuple[str, ...]

    def to_json(self) -> dict:
        return {k: list(getattr(self, k)) for k in ("F", "S", "S1", "S2", "S3", "S4")}


def partition_vertices(g: Graph, F: Iterable[str], S: Iterable[str]) -> SPartition:
    F = tuple(sorted(set(F)))
    S = tuple(sorted(set(S)))
    Fset = set(F)
    rF = {g.r(e) for e in F}
    S1 = tuple(v for v in S if v in rF)
    T = [v for v in S if v not in rF]
    S2, S3, S4 = [], [], []
    for v in T:
        out = set(g.out_edges[v])
        inF = out & Fset
        if out and out <= Fset:
            S2.append(v)
        elif not inF:
            S3.append(v)
        else:
            S4.append(v)
    return SPartition(F, S, S1, tuple(S2), tuple(S3), tuple(S4))


def extract_context(elements: Sequence[Element]) -> SPartition:
    """F = edges occurring in non-vertex monomials, S = vertices occurring as monomials."""
    if not elements:
        raise ValueError("need at least one element")
    alg = elements[0].algebra
    F: set[str] = set()
    S: set[str] = set()
    for a in elements:
        if a.algebra != alg:
            raise ValueError("elements from different algebras")
        if not a:
            raise ValueError("zero element in input")
        for m in a.terms:
            if m.is_vertex:
                S.add(m.base)
            else:
                F.update(m.real)
                F.update(m.ghost)
    return partition_vertices(alg.graph, F, S)


@dataclass
class SubalgebraDecomposition:
    """Generators of B(a_1..a_l) = Im(theta) + sum K v (v in S3) + sum K u_w (w in S4)."""

    algebra: LeavittPathAlgebra
    partition: SPartition
    ef: EFGraph
    theta: Theta
    s3_vertices: dict[str, Element]
    s4_idempotents: dict[str, Element]
    inputs: list[Element] = field(default_factory=list)
    _spans: dict = field(default_factory=dict, repr=False)

    @property
    def theta_vertex_images(self) -> dict[str, Element]:
        return self.theta.vertex_images

    @property
    def theta_edge_images(self) -> dict[str, Element]:
        return self.theta.edge_images

    def generators(self) -> list[tuple[str, Element]]:
        """Labelled algebra generators of B (theta images of E_F generators, S3, u_w)."""
        out = []
        for v, x in self.theta.vertex_images.items():
            out.append((f"theta({v})", x))
        for e, x in self.theta.edge_images.items():
            out.append((f"theta({e})", x))
            out.append((f"theta({e}*)", x.adjoint()))
        for v, x in self.s3_vertices.items():
            out.append((f"S3:{v}", x))
        for w, x in self.s4_idempotents.items():
            out.append((f"u_{w}", x))
        return out

    def unit(self) -> Element:
        """Identity of B: theta(1) + S3 vertices + u_w."""
        out = self.algebra.zero()
        for x in self.theta.vertex_images.values():
            out = out + x
        for x in self.s3_vertices.values():
            out = out + x
        for x in self.s4_idempotents.values():
            out = out + x
        return out

    def default_bound(self) -> int:
        return 2 + max((a.max_length() for a in self.inputs), default=0)

    def span(self, bound: int) -> Echelon:
        """Solver for the span of theta(monomials <= bound), S3 and the u_w."""
        ech = self._spans.get(bound)
        if ech is None:
            ech = Echelon(track=True)
            for m in self.theta.source.basis(bound):
                ech.add(self.theta.monomial_image(m).terms, ("theta", m))
            for v, x in self.s3_vertices.items():
                ech.add(x.terms, ("S3", v))
            for w, x in self.s4_idempotents.items():
                ech.add(x.terms, ("u", w))
            self._spans[bound] = ech
        return ech

    def summary(self) -> dict:
        return {
            "partition": self.partition.to_json(),
            "ef": self.ef.graph.to_json(),
            "theta_vertex_images": {k: str(v) for k, v in self.theta.vertex_images.items()},
            "theta_edge_images": {k: str(v) for k, v in self.theta.edge_images.items()},
            "s3_vertices": list(self.s3_vertices),
            "s4_idempotents": {k: str(v) for k, v in self.s4_idempotents.items()},
        }


def build_b(elements: Sequence[Element]) -> SubalgebraDecomposition:
    part = extract_context(elements)
    A = elements[0].algebra
    g = A.graph
    ef = build_ef(g, part.F)
    th = Theta(ef, host=A)
    Fset = set(part.F)
    s3 = {v: A.vertex(v) for v in part.S3}
    s4 = {}
    for w in part.S4:
        u = A.vertex(w)
        for f in g.out_edges[w]:
            if f in Fset:
                u = u - A.edge(f) * A.ghost(f)
        s4[w] = u
    return SubalgebraDecomposition(A, part, ef, th, s3, s4, list(elements))


def membership(b: SubalgebraDecomposition, x: Element, bound: int | None = None) -> dict | None:
    """Coefficients writing x over theta(monomials <= bound), S3 and u_w; None if not found.

    None is a bound-limited negative: x may still lie in B at a larger bound.
    Labels are ("theta", E_F monomial), ("S3", vertex) and ("u", vertex).
    """
    if bound is None:
        bound = b.default_bound()
    if bound < 0:
        raise ValueError("bound must be >= 0")
    return b.span(bound).solve(x.terms)


def verify_decomposition(b: SubalgebraDecomposition, bound: int = 4) -> Report:
    rep = Report()

    bad = [w for w, u in b.s4_idempotents.items() if u * u != u]
    rep.add("u_idempotent", not bad, f"u_{bad[0]}" if bad else None)

    bad = [w for w, u in b.s4_idempotents.items() if u.degrees() != {0}]
    rep.add("u_homogeneous_degree_0", not bad, f"u_{bad[0]}" if bad else None)

    theta_gens = [(lbl, x) for lbl, x in b.generators() if lbl.startswith("theta")]
    s3 = [(f"S3:{v}", x) for v, x in b.s3_vertices.items()]
    s4 = [(f"u_{w}", x) for w, x in b.s4_idempotents.items()]
    witness = None
    parts = [theta_gens, s3, s4]
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            for la, xa in parts[i]:
                for lb, xb in parts[j]:
                    if xa * xb:
                        witness = f"{la} * {lb} != 0"
                        break
                if witness:
                    break
    # distinct members of S3 and of S4 are orthogonal as well
    for group in (s3, s4):
        for la, xa in group:
            for lb, xb in group:
                if la != lb and xa * xb and witness is None:
                    witness = f"{la} * {lb} != 0"
    rep.add("ring_direct_sum_orthogonality", witness is None, witness)

    ech = b.span(bound)
    total = len(ech.labels)
    rep.add(
        "joint_linear_independence",
        ech.rank == total,
        None if ech.rank == total else f"rank {ech.rank} < {total} generators at bound {bound}",
    )
    if b.inputs:
        missing = [str(a) for a in b.inputs if ech.solve(a.terms) is None]
        rep.add("inputs_in_B", not missing, f"{missing[0]} at bound {bound}" if missing else None)
    return rep


def directedness_check(
    small: Sequence[Element], large: Sequence[Element], bound: int | None = None
) -> Report:
    """Every generator of B(small) lies in B(large) (bounded-degree membership)."""
    if not all(any(a == b for b in large) for a in small):
        raise ValueError("small must be a subset of large")
    bs, bl = build_b(small), build_b(large)
    gens = bs.generators()
    if bound is None:
        bound = max((x.max_length() for _, x in gens), default=0)
    rep = Report()
    missing = [lbl for lbl, x in gens if membership(bl, x, bound) is None]
    rep.add("B(S) <= B(S')", not missing, f"{missing[0]} at bound {bound}" if missing else None)
    return rep


def lift_cycle(ef: EFGraph, c: Cycle) -> tuple[Cycle, bool]:
    """Lift (f1,f2)(f2,f3)...(fn,f1) to the closed path f1 f2 ... fn of E.

    Returns the lift and whether the exit property transfers (an exit of c in
    E_F yields an exit of the lift in E).
    """
    for v in c.vertices:
        if ef.kind.get(v) != EDGE_TYPE:
            raise ValueError(f"cycle passes through the non-edge vertex {v!r}")
    g = ef.host
    lifted = Cycle(tuple(c.vertices), tuple(g.s(f) for f in c.vertices))
    for a, b in zip(lifted.edges, lifted.edges[1:] + lifted.edges[:1]):
        if g.r(a) != g.s(b):
            raise ValueError("lift is not a closed path")
    preserved = cycle_has_exit(ef.graph, c) is None or cycle_has_exit(g, lifted) is not None
    return lifted, preserved
