"""Grid and torus graphs with a fixed, bit-stable edge indexing.

Conventions: ``m`` is the number of rows, ``n`` the number of columns, and
vertex ``(r, c)`` has dense index ``r * n + c``.  Edges are numbered
horizontal (row-major), then vertical (row-major), then horizontal wraps
(by row), then vertical wraps (by column).

Tori are built as simple graphs: a wrap edge that would duplicate an
existing edge (``n == 2`` or ``m == 2``) or form a loop (``n == 1`` or
``m == 1``) is not added.  This gives ``3n`` edges for the ``2 x n`` torus
and the ``n``-cycle for the ``1 x n`` torus.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .errors import NonBipartiteError

GRID = "grid"
TORUS = "torus"
TOPOLOGIES = (GRID, TORUS)

EDGE_KINDS = ("horizontal", "vertical", "wrap-horizontal", "wrap-vertical")


@dataclass(frozen=True)
class Vertex:
    row: int
    col: int


@dataclass(frozen=True)
class Edge:
    index: int
    u: Vertex
    v: Vertex
    kind: str
    slot: int = 0


@dataclass(frozen=True)
class Graph:
    rows: int
    cols: int
    topology: str
    vertices: tuple
    edges: tuple
    incidence: tuple = field(repr=False)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def vertex_index(self, row: int, col: int) -> int:
        if not (0 <= row < self.rows and 0 <= col < self.cols):
            raise IndexError(f"vertex ({row},{col}) outside {self.rows}x{self.cols}")
        return row * self.cols + col

    def endpoints(self, e: int) -> tuple[int, int]:
        edge = self.edges[e]
        return (self.vertex_index(edge.u.row, edge.u.col),
                self.vertex_index(edge.v.row, edge.v.col))

    def horizontal(self, row: int, pos: int) -> int:
        """Index of the edge joining ``(row, pos)`` and ``(row, pos + 1)``."""
        if not (0 <= row < self.rows and 0 <= pos < self.cols - 1):
            raise IndexError(f"no horizontal edge at row {row}, position {pos}")
        return row * (self.cols - 1) + pos

    def vertical(self, pos: int, col: int) -> int:
        """Index of the edge joining ``(pos, col)`` and ``(pos + 1, col)``."""
        if not (0 <= pos < self.rows - 1 and 0 <= col < self.cols):
            raise IndexError(f"no vertical edge at position {pos}, column {col}")
        return self.rows * (self.cols - 1) + pos * self.cols + col

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def to_dict(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "topology": self.topology,
            "edges": [
                {"index": e.index, "u": [e.u.row, e.u.col], "v": [e.v.row, e.v.col],
                 "kind": e.kind, "slot": e.slot}
                for e in self.edges
            ],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def _assemble(m: int, n: int, topology: str, pairs: list) -> Graph:
    vertices = tuple(Vertex(r, c) for r in range(m) for c in range(n))
    edges = []
    incidence = [[] for _ in vertices]
    for (a, b, kind) in pairs:
        idx = len(edges)
        edges.append(Edge(idx, Vertex(*a), Vertex(*b), kind, 0))
        incidence[a[0] * n + a[1]].append(idx)
        incidence[b[0] * n + b[1]].append(idx)
    return Graph(m, n, topology, vertices, tuple(edges),
                 tuple(tuple(inc) for inc in incidence))


def _grid_pairs(m: int, n: int) -> list:
    pairs = [((r, c), (r, c + 1), "horizontal") for r in range(m) for c in range(n - 1)]
    pairs += [((r, c), (r + 1, c), "vertical") for r in range(m - 1) for c in range(n)]
    return pairs


def build_grid(m: int, n: int) -> Graph:
    if m < 1 or n < 1:
        raise ValueError(f"grid dimensions must be positive, got {m}x{n}")
    return _assemble(m, n, GRID, _grid_pairs(m, n))


def build_torus(m: int, n: int) -> Graph:
    if m < 1 or n < 2:
        raise ValueError(f"torus needs m >= 1 and n >= 2, got {m}x{n}")
    pairs = _grid_pairs(m, n)
    if n >= 3:
        pairs += [((r, 0), (r, n - 1), "wrap-horizontal") for r in range(m)]
    if m >= 3:
        pairs += [((0, c), (m - 1, c), "wrap-vertical") for c in range(n)]
    return _assemble(m, n, TORUS, pairs)


def build(m: int, n: int, topology: str = GRID) -> Graph:
    if topology == GRID:
        return build_grid(m, n)
    if topology == TORUS:
        return build_torus(m, n)
    raise ValueError(f"unknown topology {topology!r}")


def graph_from_dict(data: dict) -> Graph:
    g = build(int(data["rows"]), int(data["cols"]), data.get("topology", GRID))
    if "edges" in data:
        if data["edges"] != g.to_dict()["edges"]:
            raise ValueError("edge list does not match the canonical indexing")
    return g


def graph_from_json(text: str) -> Graph:
    return graph_from_dict(json.loads(text))


def neighbours(g: Graph, v: int) -> list[tuple[int, int]]:
    """``(edge index, other endpoint)`` pairs for every edge at ``v``."""
    out = []
    for e in g.incidence[v]:
        a, b = g.endpoints(e)
        out.append((e, b if a == v else a))
    return out


def bipartition(g: Graph) -> Optional[tuple[frozenset, frozenset]]:
    """Two colour classes (vertex indices) or ``None`` if an odd cycle exists.

    The class containing vertex 0 comes first.
    """
    colour = [-1] * g.num_vertices
    for start in range(g.num_vertices):
        if colour[start] >= 0:
            continue
        colour[start] = 0
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for _, w in neighbours(g, v):
                if colour[w] < 0:
                    colour[w] = 1 - colour[v]
                    queue.append(w)
                elif colour[w] == colour[v]:
                    return None
    black = frozenset(v for v, c in enumerate(colour) if c == 0)
    white = frozenset(v for v, c in enumerate(colour) if c == 1)
    return black, white


def is_bipartite(g: Graph) -> bool:
    return bipartition(g) is not None


@dataclass(frozen=True)
class HDescription:
    """``A x = t * 1`` (one row per vertex) together with ``x >= 0``."""

    equalities: tuple
    nonnegativity: int
    odd_set_omitted: bool = True

    def contains(self, x, t: int = 1) -> bool:
        if any(xi < 0 for xi in x) or len(x) != self.nonnegativity:
            return False
        return all(sum(a * xi for a, xi in zip(row, x)) == t for row in self.equalities)


def h_description(g: Graph) -> HDescription:
    if not is_bipartite(g):
        raise NonBipartiteError(
            f"{g.topology}({g.rows},{g.cols}) is not bipartite; "
            "its matching polytope needs odd-set constraints")
    rows = []
    for v in range(g.num_vertices):
        row = [0] * g.num_edges
        for e in g.incidence[v]:
            row[e] += 1
        rows.append(tuple(row))
    return HDescription(tuple(rows), g.num_edges, True)


def perfect_matchings(g: Graph) -> list[frozenset]:
    """All perfect matchings as edge-index sets, bipartite or not.

    Plain recursion on the lowest unmatched vertex; fine for the small
    graphs this package targets.
    """
    if g.num_vertices % 2:
        return []
    nbrs = [neighbours(g, v) for v in range(g.num_vertices)]
    matched = [False] * g.num_vertices
    out = []
    chosen = []

    def rec(v):
        while v < g.num_vertices and matched[v]:
            v += 1
        if v == g.num_vertices:
            out.append(frozenset(chosen))
            return
        matched[v] = True
        for e, w in nbrs[v]:
            if not matched[w]:
                matched[w] = True
                chosen.append(e)
                rec(v + 1)
                chosen.pop()
                matched[w] = False
        matched[v] = False

    rec(0)
    return out
