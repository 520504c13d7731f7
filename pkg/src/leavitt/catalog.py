"""Named small graphs used as fixtures."""

from __future__ import annotations

from .quiver import Graph


def rose(n: int) -> Graph:
    """One vertex v with loops y1..yn."""
    return Graph.build(["v"], [(f"y{i}", "v", "v") for i in range(1, n + 1)])


def chain_of_roses(levels: int = 3) -> Graph:
    """Finite truncation of the chain v_k -> ... -> v_1, two loops f_i, g_i at each v_i."""
    verts = [f"v{i}" for i in range(1, levels + 1)]
    edges = []
    for i in range(1, levels + 1):
        edges += [(f"f{i}", f"v{i}", f"v{i}"), (f"g{i}", f"v{i}", f"v{i}")]
    for i in range(1, levels):
        edges.append((f"e{i}", f"v{i + 1}", f"v{i}"))
    return Graph.build(verts, edges)


_SPOKES = ["f", "g", "h"]


def clock(spokes: int = 3, sinks: list[str] | None = None) -> Graph:
    """A source v emitting one edge to each of ``spokes`` distinct sinks."""
    names = _SPOKES[:spokes] + [f"k{i}" for i in range(len(_SPOKES), spokes)]
    sinks = sinks or [f"w{i}" for i in range(1, spokes + 1)]
    return Graph.build(["v", *sinks], [(e, "v", w) for e, w in zip(names, sinks)])


def infinite_clock_truncation(spokes: int = 3) -> Graph:
    """A finite piece of the infinite clock: spoke f lands on w."""
    return clock(spokes, ["w"] + [f"w{i}" for i in range(2, spokes + 1)])


def single_edge() -> Graph:
    return Graph.build(["v", "w"], [("f", "v", "w")])


def isolated_vertex() -> Graph:
    return Graph.build(["v"], [])


def two_cycle() -> Graph:
    return Graph.build(["v", "w"], [("e", "v", "w"), ("f", "w", "v")])


def loop_with_tail() -> Graph:
    """A loop c at w fed by an edge e: v -> w."""
    return Graph.build(["v", "w"], [("c", "w", "w"), ("e", "v", "w")])


FIXTURES = {
    "rose1": lambda: rose(1),
    "rose2": lambda: rose(2),
    "rose3": lambda: rose(3),
    "chain": chain_of_roses,
    "clock": clock,
    "infinite_clock": infinite_clock_truncation,
    "single_edge": single_edge,
    "isolated": isolated_vertex,
    "two_cycle": two_cycle,
    "loop_with_tail": loop_with_tail,
}
