"""Reflection sets as colored multigraphs on {1..n}.

[(i j); k] becomes the edge (i, j, k) with i < j and a diagonal reflection of
color c at i becomes the loop (i, c).  Traversing an edge (i, j, k) from i to
j contributes +k to a cycle sum and from j to i contributes -k.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import networkx as nx

from errors import GraphShapeError, UnsupportedGroupError
from wreath_core import rank

logger = logging.getLogger(__name__)

TREE = "Tree"
ROOTED_TREE = "RootedTree"
UNICYCLE = "Unicycle"
OTHER = "Other"


@dataclass(frozen=True)
class ReflGraph:
    n: int
    m: int
    edges: tuple = ()
    loops: tuple = ()

    def to_networkx(self):
        """MultiGraph of the non-loop edges, colors kept as an edge attribute"""
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(1, self.n + 1))
        for i, j, color in self.edges:
            graph.add_edge(i, j, color=color)
        return graph

    def to_dot(self):
        lines = ["graph reflections {"]
        lines += [f"  {v};" for v in range(1, self.n + 1)]
        lines += [f'  {i} -- {j} [label="{c}"];' for i, j, c in self.edges]
        lines += [f'  {i} -- {i} [label="{c}"];' for i, c in self.loops]
        lines.append("}")
        return "\n".join(lines)


@dataclass(frozen=True)
class GraphClass:
    tag: str
    cycle_vertices: Optional[tuple] = None
    delta: Optional[int] = None
    loop_color: Optional[int] = None


@dataclass(frozen=True)
class SetPartition:
    """Blocks sorted by their smallest element; block numbers start at 1"""
    blocks: tuple
    index: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0]))
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "index", {v: pos for pos, b in enumerate(blocks, start=1) for v in b})

    @classmethod
    def singletons(cls, n):
        return cls(tuple((v,) for v in range(1, n + 1)))

    def block_of(self, v):
        return self.index[v]

    def covers(self, n):
        return sorted(self.index) == list(range(1, n + 1)) and len(self.index) == sum(map(len, self.blocks))


def graph_of(reflections, params):
    edges = []
    loops = []
    for r in reflections:
        if r.is_diagonal:
            loops.append((r.i, r.color))
        else:
            edges.append((r.i, r.j, r.color))
    return ReflGraph(params.n, params.m, tuple(sorted(edges)), tuple(sorted(loops)))


def _is_connected(graph):
    return graph.n == 1 or nx.is_connected(graph.to_networkx())


def _unique_cycle(graph):
    """Vertices of the only cycle of a connected unicycle, in canonical order"""
    cycle = [u for u, *_ in nx.find_cycle(graph.to_networkx())]
    if len(cycle) == 2:
        return tuple(sorted(cycle))
    start = cycle.index(min(cycle))
    cycle = cycle[start:] + cycle[:start]
    # walk towards the smaller neighbour of the smallest vertex
    if cycle[-1] < cycle[1]:
        cycle = cycle[:1] + cycle[:0:-1]
    return tuple(cycle)


def _cycle_delta(graph, cycle):
    m = graph.m
    if len(cycle) == 2:
        a, b = cycle
        first, second = [c for i, j, c in graph.edges if (i, j) == (a, b)]
        return (first - second) % m
    colors = {(i, j): c for i, j, c in graph.edges}
    total = 0
    for pos, v in enumerate(cycle):
        w = cycle[(pos + 1) % len(cycle)]
        total += colors[(v, w)] if v < w else -colors[(w, v)]
    return total % m


def classify(graph):
    if not _is_connected(graph):
        return GraphClass(OTHER)
    n, edge_count, loop_count = graph.n, len(graph.edges), len(graph.loops)
    if loop_count == 0 and edge_count == n - 1:
        return GraphClass(TREE)
    if loop_count == 1 and edge_count == n - 1:
        vertex, color = graph.loops[0]
        return GraphClass(ROOTED_TREE, cycle_vertices=(vertex,), loop_color=color)
    if loop_count == 0 and edge_count == n:
        cycle = _unique_cycle(graph)
        return GraphClass(UNICYCLE, cycle_vertices=cycle, delta=_cycle_delta(graph, cycle))
    return GraphClass(OTHER)


def delta(graph):
    """Signed color sum around the unique cycle, in canonical orientation"""
    shape = classify(graph)
    if shape.tag != UNICYCLE:
        raise GraphShapeError(f"delta needs a unicycle, got {shape.tag}")
    return shape.delta


def is_good_generating_set(reflections, params):
    """Graph criterion for rank-many reflections to generate the whole group"""
    reflections = tuple(reflections)
    if not (params.well_generated or params.m == 1):
        raise UnsupportedGroupError(f"{params} is not well generated")
    size = rank(params)
    if len(reflections) != size or len(set(reflections)) != size:
        raise GraphShapeError(f"expected {size} distinct reflections, got {len(reflections)}")
    if size == 0:
        return True
    shape = classify(graph_of(reflections, params))
    if params.m == 1:
        return shape.tag == TREE
    if params.p == 1:
        return shape.tag == ROOTED_TREE and math.gcd(shape.loop_color, params.m) == 1
    return shape.tag == UNICYCLE and math.gcd(shape.delta, params.m) == 1


def contract(graph, partition):
    """Quotient multigraph; an edge inside a block becomes a loop"""
    m = graph.m
    edges = []
    loops = [(partition.block_of(i), c) for i, c in graph.loops]
    for i, j, c in graph.edges:
        bi, bj = partition.block_of(i), partition.block_of(j)
        if bi == bj:
            loops.append((bi, c))
        elif bi < bj:
            edges.append((bi, bj, c))
        else:
            edges.append((bj, bi, (-c) % m))
    return ReflGraph(len(partition.blocks), m, tuple(sorted(edges)), tuple(sorted(loops)))


def _crosses_blocks(graph, partition):
    return all(partition.block_of(i) != partition.block_of(j) for i, j, _ in graph.edges)


def classify_relative(graph, partition):
    """Tree / rooted tree / unicycle relative to a partition of the vertices

    For the relative unicycle, delta is the color that decides generation:
    the loop color when the contraction is a rooted tree, otherwise the
    delta of the contracted cycle.
    """
    quotient = classify(contract(graph, partition))
    crossing = _crosses_blocks(graph, partition)
    loops = len(graph.loops)
    if loops == 0 and crossing and quotient.tag == TREE:
        return GraphClass(TREE)
    if loops == 1 and crossing and quotient.tag == ROOTED_TREE:
        vertex, color = graph.loops[0]
        return GraphClass(ROOTED_TREE, cycle_vertices=(vertex,), loop_color=color)
    if loops == 0 and quotient.tag == ROOTED_TREE:
        return GraphClass(UNICYCLE, cycle_vertices=quotient.cycle_vertices, delta=quotient.loop_color)
    if loops == 0 and quotient.tag == UNICYCLE:
        return GraphClass(UNICYCLE, cycle_vertices=quotient.cycle_vertices, delta=quotient.delta)
    return GraphClass(OTHER)
