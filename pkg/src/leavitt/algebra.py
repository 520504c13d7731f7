"""Leavitt path algebras L_K(E) of finite graphs, in exact arithmetic.

Elements are stored in the normal form given by the basis of monomials
``p q*`` (r(p) = r(q)) that do not end, on both sides, in the special edge
of the junction vertex. For each regular vertex v the special edge is the
smallest edge id emitted by v; CK2 is oriented as

    gamma_v gamma_v*  ->  v - sum_{e in s^-1(v), e != gamma_v} e e*

which together with CK1 and the path relations is a terminating, confluent
rewriting system on words in vertices, edges and ghost edges.
"""

from __future__ import annotations

import random
from collections import defaultdict
from typing import Iterable, NamedTuple, Sequence

from .expr import parse_expression
from .field import RATIONAL, Field
from .quiver import Graph, count_paths_into, is_acyclic, sinks


class AlgebraError(ValueError):
    pass


class Monomial(NamedTuple):
    """``real ghost*`` with ``base = r(real) = r(ghost)``; both empty means the vertex ``base``."""

    real: tuple[str, ...]
    ghost: tuple[str, ...]
    base: str

    @property
    def sort_key(self):
        return (len(self.real), len(self.ghost), self.real, self.ghost, self.base)

    @property
    def degree(self) -> int:
        return len(self.real) - len(self.ghost)

    @property
    def length(self) -> int:
        return len(self.real) + len(self.ghost)

    @property
    def is_vertex(self) -> bool:
        return not self.real and not self.ghost

    def star(self) -> "Monomial":
        return Monomial(self.ghost, self.real, self.base)

    def tokens(self) -> tuple[str, ...]:
        if self.is_vertex:
            return (self.base,)
        return self.real + tuple(e + "*" for e in reversed(self.ghost))

    def __str__(self):
        return " ".join(self.tokens())


# internal generator kinds for the word rewriting engine
VERTEX, EDGE, GHOST = "v", "e", "g"


class LeavittPathAlgebra:
    """L_K(E) for a finite graph E over an exact field K."""

    def __init__(self, graph: Graph, field: Field = RATIONAL):
        self.graph = graph
        self.field = field
        self.special = special_edges(graph)
        self._src = {e.id: e.src for e in graph.edges}
        self._dst = {e.id: e.dst for e in graph.edges}
        self._mul_cache: dict = {}
        self._canon_cache: dict = {}

    def __eq__(self, other):
        if not isinstance(other, LeavittPathAlgebra):
            return NotImplemented
        return self is other or (self.field == other.field and self.graph == other.graph)

    def __hash__(self):
        return hash((self.graph, self.field))

    def __repr__(self):
        return f"LeavittPathAlgebra({self.graph!r}, {self.field.name})"

    # --- monomial level ---------------------------------------------------

    def left_vertex(self, m: Monomial) -> str:
        """s(p): the vertex v with v m = m."""
        return self._src[m.real[0]] if m.real else m.base

    def right_vertex(self, m: Monomial) -> str:
        """s(q): the vertex v with m v = m."""
        return self._src[m.ghost[0]] if m.ghost else m.base

    def is_canonical(self, m: Monomial) -> bool:
        if m.real and m.ghost and m.real[-1] == m.ghost[-1]:
            e = m.real[-1]
            return self.special.get(self._src[e]) != e
        return True

    def canonicalize(self, m: Monomial) -> tuple[tuple[Monomial, int], ...]:
        """Expand a (composable) ``p q*`` into canonical monomials with integer coefficients."""
        hit = self._canon_cache.get(m)
        if hit is not None:
            return hit
        out: list[tuple[Monomial, int]] = []
        p, q, v = m
        sign = 1
        while p and q and p[-1] == q[-1] and self.special.get(self._src[p[-1]]) == p[-1]:
            e = p[-1]
            u = self._src[e]
            p, q = p[:-1], q[:-1]
            for f in self.graph.out_edges[u]:
                if f != e:
                    out.append((Monomial(p + (f,), q + (f,), self._dst[f]), -sign))
            v = u
        out.append((Monomial(p, q, v), sign))
        res = tuple(out)
        self._canon_cache[m] = res
        return res

    def mul_monomials(self, a: Monomial, b: Monomial) -> tuple[tuple[Monomial, int], ...]:
        """Normal form of the product of two canonical monomials."""
        key = (a, b)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        res: tuple[tuple[Monomial, int], ...] = ()
        # junction: a's ghost q1* meets b's real p2 at s(q1) = s(p2)
        q1, p2 = a.ghost, b.real
        if self.right_vertex(a) == self.left_vertex(b):
            n1, n2 = len(q1), len(p2)
            if n1 <= n2 and p2[:n1] == q1:
                res = self.canonicalize(Monomial(a.real + p2[n1:], b.ghost, b.base))
            elif n2 < n1 and q1[:n2] == p2:
                res = self.canonicalize(Monomial(a.real, b.ghost + q1[n2:], a.base))
        self._mul_cache[key] = res
        return res

    # --- constructors -----------------------------------------------------

    def zero(self) -> "Element":
        return Element(self, {})

    def from_monomial(self, m: Monomial, c=1) -> "Element":
        c = self.field(c)
        acc: dict = {}
        for mm, s in self.canonicalize(m):
            _acc(acc, mm, c * s)
        return Element(self, acc)

    def vertex(self, v: str) -> "Element":
        if not self.graph.has_vertex(v):
            raise AlgebraError(f"unknown vertex {v!r}")
        return Element(self, {Monomial((), (), v): self.field.one})

    def edge(self, e: str) -> "Element":
        if not self.graph.has_edge(e):
            raise AlgebraError(f"unknown edge {e!r}")
        return Element(self, {Monomial((e,), (), self._dst[e]): self.field.one})

    def ghost(self, e: str) -> "Element":
        if not self.graph.has_edge(e):
            raise AlgebraError(f"unknown edge {e!r}")
        return Element(self, {Monomial((), (e,), self._dst[e]): self.field.one})

    def path(self, edges: Sequence[str]) -> "Element":
        out = None
        for e in edges:
            out = self.edge(e) if out is None else out * self.edge(e)
        if out is None:
            raise AlgebraError("empty path; use vertex()")
        return out

    def one(self) -> "Element":
        """Sum of all vertices: the unit of L_K(E) for finite E."""
        return Element(self, {Monomial((), (), v): self.field.one for v in self.graph.vertices})

    def vertex_sum(self, vertices: Iterable[str]) -> "Element":
        return Element(self, {Monomial((), (), v): self.field.one for v in set(vertices)})

    def generator(self, token: str) -> "Element":
        kind, name = self.resolve(token)
        return {VERTEX: self.vertex, EDGE: self.edge, GHOST: self.ghost}[kind](name)

    def resolve(self, token: str) -> tuple[str, str]:
        if token.endswith("*"):
            name = token[:-1]
            if self.graph.has_edge(name):
                return GHOST, name
            raise AlgebraError(f"unknown edge {name!r} in {token!r}")
        if self.graph.has_vertex(token):
            return VERTEX, token
        if self.graph.has_edge(token):
            return EDGE, token
        raise AlgebraError(f"unknown generator {token!r}")

    def parse(self, text: str) -> "Element":
        """Parse an expression and reduce it to normal form."""
        return self.reduce(parse_expression(text))

    # --- word rewriting ---------------------------------------------------

    def _pair_rule(self, a, b):
        """Replacement for the adjacent pair (a, b): None if it is not a redex."""
        ka, x = a
        kb, y = b
        src, dst = self._src, self._dst
        if ka == VERTEX:
            if kb == VERTEX:
                return [(1, (a,))] if x == y else []
            end = src[y] if kb == EDGE else dst[y]
            return [(1, (b,))] if end == x else []
        if kb == VERTEX:
            end = dst[x] if ka == EDGE else src[x]
            return [(1, (a,))] if end == y else []
        if ka == EDGE and kb == EDGE:
            return None if dst[x] == src[y] else []
        if ka == GHOST and kb == GHOST:
            return None if src[x] == dst[y] else []
        if ka == GHOST:  # CK1
            return [(1, ((VERTEX, dst[y]),))] if x == y else []
        # edge followed by ghost: real/ghost junction
        if dst[x] != dst[y]:
            return []
        u = src[x]
        if x == y and self.special.get(u) == x:  # oriented CK2
            rep = [(1, ((VERTEX, u),))]
            rep += [(-1, ((EDGE, f), (GHOST, f))) for f in self.graph.out_edges[u] if f != x]
            return rep
        return None

    def _redexes(self, word) -> list[int]:
        return [i for i in range(len(word) - 1) if self._pair_rule(word[i], word[i + 1]) is not None]

    def _word_to_monomial(self, word) -> Monomial:
        if len(word) == 1 and word[0][0] == VERTEX:
            return Monomial((), (), word[0][1])
        real = tuple(n for k, n in word if k == EDGE)
        ghosts = [n for k, n in word if k == GHOST]
        q = tuple(reversed(ghosts))
        base = self._dst[real[-1]] if real else self._dst[q[-1]]
        return Monomial(real, q, base)

    def reduce(self, combo, rng: random.Random | None = None) -> "Element":
        """Rewrite a formal combination of words to normal form.

        ``combo`` is an expression string, a word (sequence of tokens), or a
        sequence of ``(coefficient, word)`` pairs. Redexes are contracted
        leftmost-first, or in a random order when ``rng`` is given; the
        result does not depend on the order.
        """
        if isinstance(combo, str):
            combo = parse_expression(combo)
        elif combo and isinstance(combo[0], str):
            combo = [(1, tuple(combo))]
        F = self.field
        pending: dict = {}
        for c, word in combo:
            if not word:
                if c:
                    raise AlgebraError("bare nonzero scalar has no meaning without a unit")
                continue
            gens = tuple(self.resolve(t) for t in word)
            _acc(pending, gens, F(c))
        done: dict = {}
        while pending:
            if rng is None:
                word = next(iter(pending))
            else:
                word = rng.choice(list(pending))
            c = pending.pop(word)
            spots = self._redexes(word)
            if not spots:
                _acc(done, self._word_to_monomial(word), c)
                continue
            i = spots[0] if rng is None else rng.choice(spots)
            for rc, rep in self._pair_rule(word[i], word[i + 1]):
                _acc(pending, word[:i] + rep + word[i + 2:], c * rc)
        return Element(self, done)

    # --- bases and dimension ---------------------------------------------

    def paths_by_range(self, n: int) -> list[dict[str, list[tuple[str, ...]]]]:
        """``out[k][v]`` = paths of length k ending at v, for k = 0..n."""
        g = self.graph
        layers = [{v: [()] for v in g.vertices}]
        for _ in range(n):
            nxt: dict[str, list[tuple[str, ...]]] = {v: [] for v in g.vertices}
            for v, paths in layers[-1].items():
                for e in g.out_edges[v]:
                    nxt[self._dst[e]].extend(p + (e,) for p in paths)
            layers.append(nxt)
        return layers

    def basis(self, max_length: int) -> list[Monomial]:
        """Canonical monomials with |p| + |q| <= max_length, sorted."""
        if max_length < 0:
            raise ValueError("max_length must be >= 0")
        layers = self.paths_by_range(max_length)
        out = []
        for v in self.graph.vertices:
            for lp in range(max_length + 1):
                for lq in range(max_length + 1 - lp):
                    for p in layers[lp][v]:
                        for q in layers[lq][v]:
                            m = Monomial(p, q, v)
                            if self.is_canonical(m):
                                out.append(m)
        out.sort(key=lambda m: m.sort_key)
        return out

    def full_basis(self) -> list[Monomial]:
        """The whole canonical basis; only for acyclic graphs."""
        if not is_acyclic(self.graph):
            raise AlgebraError("L_K(E) is infinite-dimensional: the graph has a cycle")
        return self.basis(2 * max(len(self.graph.vertices) - 1, 0))

    def dimension(self) -> int | None:
        """dim_K L_K(E), or None when it is infinite (E has a cycle)."""
        return dimension(self.graph)

    def check_ck_relations(self) -> list[tuple[str, "Element"]]:
        """Reduce every defining relator; return the ones that fail to vanish."""
        bad = []
        for name, combo in ck_relators(self.graph):
            val = self.reduce(combo)
            if val:
                bad.append((name, val))
        return bad


class Element:
    """An element of L_K(E) in normal form: a sparse map monomial -> nonzero scalar."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: LeavittPathAlgebra, terms: dict):
        self.algebra = algebra
        self.terms = terms

    # comparison and containers
    def __eq__(self, other):
        if isinstance(other, Element):
            return self.algebra == other.algebra and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self) -> list[tuple[Monomial, object]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key)

    def monomials(self) -> list[Monomial]:
        return [m for m, _ in self.items()]

    def coefficient(self, m: Monomial):
        return self.terms.get(m, self.algebra.field.zero)

    def _check(self, other: "Element"):
        if not isinstance(other, Element):
            raise TypeError(f"expected an Element, got {type(other).__name__}")
        if not (self.algebra is other.algebra or self.algebra == other.algebra):
            raise AlgebraError("elements belong to different algebras (graph or field mismatch)")

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, Element):
            if other == 0:
                return self
            return NotImplemented
        self._check(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            _acc(acc, m, c)
        return Element(self.algebra, acc)

    def __radd__(self, other):
        if other == 0:
            return self
        return NotImplemented

    def __neg__(self):
        return Element(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def scale(self, k) -> "Element":
        k = self.algebra.field(k)
        if not k:
            return Element(self.algebra, {})
        return Element(self.algebra, {m: k * c for m, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Element):
            return self.scale(other)
        self._check(other)
        alg = self.algebra
        acc: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                prod = alg.mul_monomials(m1, m2)
                if prod:
                    c = c1 * c2
                    for m, s in prod:
                        _acc(acc, m, c * s if s != 1 else c)
        return Element(alg, acc)

    def __rmul__(self, k):
        return self.scale(k)

    def __pow__(self, n: int):
        if n < 1:
            raise ValueError("only positive powers (the algebra may lack a unit)")
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    # structure
    def adjoint(self) -> "Element":
        return Element(self.algebra, {m.star(): c for m, c in self.terms.items()})

    def degree_split(self) -> dict[int, "Element"]:
        parts: dict[int, dict] = defaultdict(dict)
        for m, c in self.terms.items():
            parts[m.degree][m] = c
        return {d: Element(self.algebra, parts[d]) for d in sorted(parts)}

    def degrees(self) -> set[int]:
        return {m.degree for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def max_length(self) -> int:
        return max((m.length for m in self.terms), default=0)

    def edges_used(self) -> set[str]:
        out = set()
        for m in self.terms:
            out.update(m.real)
            out.update(m.ghost)
        return out

    def vertex_support(self) -> set[str]:
        """Left and right end vertices of the monomials (local-unit support)."""
        alg = self.algebra
        out = set()
        for m in self.terms:
            out.add(alg.left_vertex(m))
            out.add(alg.right_vertex(m))
        return out

    # output
    def __str__(self):
        if not self.terms:
            return "0"
        fmt = self.algebra.field.format
        parts = []
        for i, (m, c) in enumerate(self.items()):
            text = fmt(c)
            neg = text.startswith("-")
            mag = text[1:] if neg else text
            body = str(m) if mag == "1" else f"{mag} {m}"
            if i == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"Element({self})"

    def to_json(self) -> list[dict]:
        out = []
        for m, c in self.items():
            out.append({
                "real": list(m.real),
                "ghost": list(m.ghost),
                "base": m.base if m.is_vertex else None,
                "coeff": _coeff_json(c),
            })
        return out


def _coeff_json(c) -> str:
    num = getattr(c, "numerator", None)
    if num is not None:
        return f"{num}/{c.denominator}"
    return f"{c.v}/1"


def _acc(acc: dict, key, c) -> None:
    v = acc.get(key)
    if v is None:
        if c:
            acc[key] = c
        return
    v = v + c
    if v:
        acc[key] = v
    else:
        del acc[key]


def special_edges(g: Graph) -> dict[str, str]:
    """Smallest emitted edge id for every regular vertex."""
    return {v: es[0] for v, es in g.out_edges.items() if es}


def dimension(g: Graph) -> int | None:
    if not is_acyclic(g):
        return None
    return sum(count_paths_into(g, w) ** 2 for w in sinks(g))


def ck_relators(g: Graph) -> list[tuple[str, list[tuple[int, tuple[str, ...]]]]]:
    """The defining relators of L_K(E) as formal combinations of words."""
    rels: list[tuple[str, list]] = []
    for v in g.vertices:
        for w in g.vertices:
            combo = [(1, (v, w))]
            if v == w:
                combo.append((-1, (v,)))
            rels.append((f"{v} {w}", combo))
    for e in g.edges:
        star = e.id + "*"
        rels.append((f"s({e.id}) {e.id}", [(1, (e.src, e.id)), (-1, (e.id,))]))
        rels.append((f"{e.id} r({e.id})", [(1, (e.id, e.dst)), (-1, (e.id,))]))
        rels.append((f"r({e.id}) {star}", [(1, (e.dst, star)), (-1, (star,))]))
        rels.append((f"{star} s({e.id})", [(1, (star, e.src)), (-1, (star,))]))
    for e in g.edges:
        for f in g.edges:
            combo = [(1, (e.id + "*", f.id))]
            if e.id == f.id:
                combo.append((-1, (f.dst,)))
            rels.append((f"CK1 {e.id}* {f.id}", combo))
    for v in g.vertices:
        out = g.out_edges[v]
        if out:
            combo = [(1, (v,))] + [(-1, (e, e + "*")) for e in out]
            rels.append((f"CK2 {v}", combo))
    return rels
