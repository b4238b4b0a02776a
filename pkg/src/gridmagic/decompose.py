"""Peel a magic labelling of sum t into t perfect matchings (a domino stacking)."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import GridMagicError, NonBipartiteError, VerificationError
from .graph import GRID, Graph, bipartition, neighbours
from .labelling import MagicLabelling, validate


@dataclass(frozen=True)
class Decomposition:
    source: MagicLabelling
    layers: tuple             # each layer: sorted tuple of edge indices

    def resum(self) -> tuple:
        labels = [0] * self.source.graph.num_edges
        for layer in self.layers:
            for e in layer:
                labels[e] += 1
        return tuple(labels)

    def to_dict(self) -> dict:
        return {"sum": self.source.sum, "layers": [list(layer) for layer in self.layers]}

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def extract_matching(g: Graph, support) -> tuple:
    """A perfect matching inside ``support`` via augmenting paths.

    Left vertices are scanned in index order and their edges by edge index,
    so the result is deterministic.
    """
    parts = bipartition(g)
    if parts is None:
        raise NonBipartiteError("matching extraction needs a bipartite graph")
    allowed = set(support)
    left = sorted(parts[0])
    if len(left) * 2 != g.num_vertices:
        raise GridMagicError("labelling invalid or graph non-bipartite: unbalanced sides")
    adj = {v: [(e, w) for e, w in neighbours(g, v) if e in allowed] for v in left}
    for v in left:
        adj[v].sort()
    owner = {}                # right vertex -> (left vertex, edge)

    def augment(v, seen):
        for e, w in adj[v]:
            if w in seen:
                continue
            seen.add(w)
            if w not in owner or augment(owner[w][0], seen):
                owner[w] = (v, e)
                return True
        return False

    for v in left:
        if not augment(v, set()):
            raise GridMagicError("labelling invalid or graph non-bipartite: support has no perfect matching")
    return tuple(sorted(e for _, e in owner.values()))


def decompose(lab: MagicLabelling) -> Decomposition:
    report = validate(lab)
    if not report.is_magic:
        raise GridMagicError(f"not a magic labelling: {report.violations[0]}")
    g = lab.graph
    residual = list(lab.labels)
    layers = []
    for step in range(lab.sum, 0, -1):
        support = [e for e, x in enumerate(residual) if x > 0]
        layer = extract_matching(g, support)
        for e in layer:
            residual[e] -= 1
        if not validate(MagicLabelling(g, step - 1, tuple(residual))).is_magic:
            raise VerificationError(f"residual after peeling to sum {step - 1} is not magic")
        layers.append(layer)
    dec = Decomposition(lab, tuple(layers))
    if dec.resum() != lab.labels:
        raise VerificationError("layers do not re-sum to the input labelling")
    return dec


def render_layer(g: Graph, layer) -> str:
    """Draw one perfect matching of a grid as rows of H (horizontal) / V (vertical) cells."""
    if g.topology != GRID:
        raise ValueError("only grid layers can be drawn")
    cells = [["?"] * g.cols for _ in range(g.rows)]
    for e in layer:
        edge = g.edges[e]
        ch = "H" if edge.kind == "horizontal" else "V"
        cells[edge.u.row][edge.u.col] = ch
        cells[edge.v.row][edge.v.col] = ch
    return "\n".join("".join(row) for row in cells)
