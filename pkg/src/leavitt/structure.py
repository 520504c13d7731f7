"""Ring-theoretic structure of L_K(E): matricial shape, regularity, direct finiteness, ideals."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import Element, LeavittPathAlgebra
from .linalg import Echelon, same_span
from .local_global import build_b
from .quiver import (
    Cycle,
    Graph,
    count_paths_into,
    has_no_exits,
    is_acyclic,
    no_exit_witness,
    simple_cycles,
    sinks,
)
from .report import Report


class ShapeError(ValueError):
    """The matricial structure theorem does not apply (a cycle has an exit)."""


class CyclicGraphError(ValueError):
    """A finite-dimensional method was asked to run on a graph with a cycle."""


class SearchExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class MatricialShape:
    """L_K(E) = (+) M_k(K) over k_blocks (+) M_m(K[x, x^-1]) over laurent_blocks."""

    k_blocks: tuple[int, ...]
    laurent_blocks: tuple[int, ...]

    def to_json(self) -> dict:
        return {"k_blocks": list(self.k_blocks), "laurent_blocks": list(self.laurent_blocks)}


def cycle_block_size(g: Graph, c: Cycle) -> int:
    """Paths ending at c's base that do not run around the whole of c.

    Each such path enters c at some vertex u along edges outside c and then
    follows c for less than a full turn to the base, so we count paths into
    every vertex of c that avoid c's edges.
    """
    return sum(count_paths_into(g, u, c.edges) for u in c.vertices)


def matricial_shape(g: Graph) -> MatricialShape:
    bad = no_exit_witness(g)
    if bad is not None:
        c, f = bad
        raise ShapeError(f"cycle {c} has exit {f}")
    k_blocks = sorted(count_paths_into(g, w) for w in sinks(g))
    laurent = sorted(cycle_block_size(g, c) for c in simple_cycles(g))
    return MatricialShape(tuple(k_blocks), tuple(laurent))


# --- von Neumann regularity ----------------------------------------------------


def default_regularity_bound(x: Element) -> int:
    cycles = simple_cycles(x.algebra.graph)
    longest = max((c.length for c in cycles), default=0)
    return x.max_length() + longest + 2


def regularity_witness(x: Element, bound: int | None = None) -> Element | None:
    """Some y with x y x = x, or None if none exists in the searched space.

    Acyclic graphs: searched over the whole (finite) basis, so a witness is
    always found. Otherwise x must be homogeneous and y is sought among
    degree -deg(x) monomials of total length <= bound.
    """
    A = x.algebra
    if not x:
        return A.zero()
    acyclic = is_acyclic(A.graph)
    if acyclic:
        candidates = A.full_basis()
    else:
        if not x.is_homogeneous():
            raise ValueError("graph has a cycle: only homogeneous elements are covered (graded regularity)")
        if bound is None:
            bound = default_regularity_bound(x)
        (deg,) = x.degrees()
        candidates = [m for m in A.basis(bound) if m.degree == -deg]
    # x b x can be nonzero only if b starts where x ends and ends where x starts
    lefts = {A.left_vertex(m) for m in x.terms}
    rights = {A.right_vertex(m) for m in x.terms}
    candidates = [m for m in candidates if A.left_vertex(m) in rights and A.right_vertex(m) in lefts]
    ech = Echelon(track=True)
    for m in candidates:
        ech.add((x * A.from_monomial(m) * x).terms, m)
    coeffs = ech.solve(x.terms)
    if coeffs is None:
        return None
    y = A.zero()
    for m, c in coeffs.items():
        y = y + A.from_monomial(m, c)
    if x * y * x != x:
        raise AssertionError("regularity certificate failed to verify")
    return y


# --- direct finiteness ---------------------------------------------------------


@dataclass
class DirectFiniteness:
    directly_finite: bool
    cycle: Cycle | None = None
    exit: str | None = None
    x: Element | None = None
    y: Element | None = None
    u: Element | None = None

    def to_json(self) -> dict:
        out: dict = {"directly_finite": self.directly_finite}
        if not self.directly_finite:
            out.update(cycle=str(self.cycle), exit=self.exit, x=str(self.x), y=str(self.y), u=str(self.u))
        return out


def directly_finite_decider(A: LeavittPathAlgebra) -> DirectFiniteness:
    """Directly finite iff no cycle has an exit; otherwise build x y = u != y x."""
    bad = no_exit_witness(A.graph)
    if bad is None:
        return DirectFiniteness(True)
    c, f = bad
    c = c.rotate_to(A.graph.s(f))
    y = A.path(c.edges)
    x = y.adjoint()
    u = A.vertex(c.base)
    if x * y != u or y * x == u:
        raise AssertionError("direct-finiteness counterexample failed to verify")
    return DirectFiniteness(False, c, f, x, y, u)


# --- one-sided ideals in finite dimension ---------------------------------------


def _algebra_generators(A: LeavittPathAlgebra) -> list[Element]:
    gens = [A.vertex(v) for v in A.graph.vertices]
    for e in A.graph.edges:
        gens.append(A.edge(e.id))
        gens.append(A.ghost(e.id))
    return gens


def _require_acyclic(A: LeavittPathAlgebra) -> None:
    if not is_acyclic(A.graph):
        raise CyclicGraphError("graph has a cycle: L_K(E) is infinite-dimensional")


@dataclass
class IdealBasis:
    """A basis of a left (or right) ideal of a finite-dimensional L_K(E)."""

    algebra: LeavittPathAlgebra
    side: str
    basis: list[Element]
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        _require_acyclic(self.algebra)
        ech = Echelon()
        for b in self.basis:
            if not ech.add(b.terms):
                raise ValueError("ideal basis is linearly dependent")
        self._ech = ech
        if self.check:
            # closure under the algebra generators gives closure under everything
            for t in _algebra_generators(self.algebra):
                for b in self.basis:
                    z = t * b if self.side == "left" else b * t
                    if not ech.contains(z.terms):
                        raise ValueError(f"span is not a {self.side} ideal: {t} applied to {b} leaves it")

    def __len__(self):
        return len(self.basis)

    def contains(self, x: Element) -> bool:
        return self._ech.contains(x.terms)


def _mul_side(side: str, t: Element, y: Element) -> Element:
    return t * y if side == "left" else y * t


def left_ideal_basis(A: LeavittPathAlgebra, gens: Sequence[Element], side: str = "left") -> IdealBasis:
    """Basis of L gens (side='left') or gens L (side='right')."""
    _require_acyclic(A)
    ech = Echelon()
    queue = []
    for x in gens:
        if ech.add(x.terms):
            queue.append(x)
    mults = _algebra_generators(A)
    while queue:
        y = queue.pop()
        for t in mults:
            z = _mul_side(side, t, y)
            if z and ech.add(z.terms):
                queue.append(z)
    basis = [Element(A, row) for row in ech.basis()]
    return IdealBasis(A, side, basis, check=False)


def is_graded_ideal(ib: IdealBasis) -> tuple[bool, tuple[Element, int] | None]:
    for b in ib.basis:
        for d, part in b.degree_split().items():
            if not ib.contains(part):
                return False, (b, d)
    return True, None


def verify_principal(A: LeavittPathAlgebra, gens: Sequence[Element], x: Element, side: str = "left") -> bool:
    """True iff the ideal generated by gens equals the one generated by x."""
    ia = left_ideal_basis(A, gens, side)
    ib = left_ideal_basis(A, [x], side)
    return same_span([b.terms for b in ia.basis], [b.terms for b in ib.basis])


def _random_combination(rng: random.Random, basis: Sequence[Element], spread: int, A: LeavittPathAlgebra) -> Element:
    out = A.zero()
    for b in basis:
        c = rng.randint(-spread, spread)
        if c:
            out = out + b.scale(c)
    return out


def principal_generator_search(
    A: LeavittPathAlgebra,
    gens: Sequence[Element],
    trials: int = 32,
    seed: int = 0,
    side: str = "left",
) -> tuple[Element | None, int]:
    """Find x with L x = L gens; returns (x or None, trials used).

    The given generators are tried first. Then trial t draws coefficients
    from {-k..k}, k = 1 + t // 8, over a basis of the ideal. None after all
    trials is not a proof that no generator exists.
    """
    ideal = left_ideal_basis(A, gens, side)
    if not ideal.basis:
        return A.zero(), 0
    target = [b.terms for b in ideal.basis]
    for x in gens:
        if x and same_span(target, [b.terms for b in left_ideal_basis(A, [x], side).basis]):
            return x, 0
    rng = random.Random(seed)
    for t in range(trials):
        x = _random_combination(rng, ideal.basis, 1 + t // 8, A)
        if not x:
            continue
        if same_span(target, [b.terms for b in left_ideal_basis(A, [x], side).basis]):
            return x, t + 1
    return None, trials


def bezout_lemma_harness(
    A: LeavittPathAlgebra,
    gens: Sequence[Element],
    trials: int = 32,
    seed: int = 0,
) -> tuple[Report, Element]:
    """Find a principal generator inside the unital subalgebra B(gens), then check it globally.

    Mirrors the argument that a ring in which every finite subset lies in a
    unital Bezout subring is itself Bezout: with S = B(gens) and
    S x_1 + ... + S x_n = S x we get x_i = s_i x, hence sum R x_i = R x.
    """
    _require_acyclic(A)
    rep = Report()
    gens = [x for x in gens if x]
    if not gens:
        rep.add("trivial_ideal", True, "all generators are zero; x = 0")
        return rep, A.zero()
    b = build_b(gens)
    th = b.theta
    # B is finite-dimensional: E acyclic forces E_F acyclic
    b_basis = [th.monomial_image(m) for m in th.source.full_basis()]
    b_basis += list(b.s3_vertices.values()) + list(b.s4_idempotents.values())
    one_b = b.unit()
    rep.add(
        "unit_of_B_fixes_generators",
        all(one_b * x == x and x * one_b == x for x in gens),
    )
    rep.add("unit_of_B_idempotent", one_b * one_b == one_b)

    local = Echelon()
    for s in b_basis:
        for x in gens:
            local.add((s * x).terms)
    local_basis = [Element(A, row) for row in local.basis()]
    target = [r for r in local.rows.values()]

    def generates_locally(x: Element) -> bool:
        return same_span(target, [(s * x).terms for s in b_basis])

    found = None
    for x in gens:
        if generates_locally(x):
            found = x
            break
    rng = random.Random(seed)
    t = 0
    while found is None and t < trials:
        x = _random_combination(rng, local_basis, 1 + t // 8, A)
        t += 1
        if x and generates_locally(x):
            found = x
    if found is None:
        raise SearchExhausted(f"no generator of the B-ideal found in {trials} trials")
    x = found
    rep.add("local_generator_in_B", True, str(x))

    solver = Echelon(track=True)
    for i, s in enumerate(b_basis):
        solver.add((s * x).terms, i)
    witness = None
    for xi in gens:
        coeffs = solver.solve(xi.terms)
        if coeffs is None:
            witness = f"{xi} not in S x"
            break
        s_i = A.zero()
        for i, c in coeffs.items():
            s_i = s_i + b_basis[i].scale(c)
        if s_i * x != xi:
            witness = f"x_i = s_i x fails for {xi}"
            break
    rep.add("generators_are_multiples_s_i_x", witness is None, witness)
    rep.add("global_principality", verify_principal(A, gens, x))
    return rep, x


# --- evaluation of a single-loop component --------------------------------------


def loop_evaluation(A: LeavittPathAlgebra, loop: str, value=-1):
    """The homomorphism L_K(E) -> K sending the loop's component to K[x, x^-1] at x = value.

    Only for a component made of one vertex with one loop and nothing else;
    everything outside the component maps to 0.
    """
    g = A.graph
    v = g.s(loop)
    if g.r(loop) != v or g.out_edges[v] != (loop,) or g.in_edges[v] != (loop,):
        raise ValueError(f"{loop!r} is not an isolated single loop")
    val = A.field(value)
    if not val:
        raise ValueError("evaluation point must be nonzero")
    inv = 1 / val

    def phi(x: Element):
        total = A.field.zero
        for m, c in x.terms.items():
            if m.base != v:
                continue
            total = total + c * val ** len(m.real) * inv ** len(m.ghost)
        return total

    return phi


def laurent_nonmembership(A: LeavittPathAlgebra, gen: Element, target: Element, loop: str, value=-1) -> bool:
    """True if evaluation certifies target is not in the left ideal L gen."""
    phi = loop_evaluation(A, loop, value)
    return not phi(gen) and bool(phi(target))


# --- summary --------------------------------------------------------------------


def structure_summary(g: Graph) -> dict:
    acyclic = is_acyclic(g)
    no_exit = has_no_exits(g)
    shape = matricial_shape(g).to_json() if no_exit else None
    return {
        "acyclic": acyclic,
        "no_exit": no_exit,
        "directly_finite": no_exit,
        "von_neumann_regular": acyclic,
        "shape": shape,
    }

