"""Magic labellings, their validation, and explicit interior witnesses."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .graph import GRID, Graph, build, build_grid

WITNESS_CASES = (
    "2xn-t3",
    "3xn-t5",
    "4x4-t4",
    "even-even-t4",
    "even-even-t5",
    "even-odd-t5",
    "even-odd-t5-flipped",
)


@dataclass(frozen=True)
class MagicLabelling:
    graph: Graph
    sum: int
    labels: tuple

    def __post_init__(self):
        if len(self.labels) != self.graph.num_edges:
            raise ValueError(
                f"expected {self.graph.num_edges} labels, got {len(self.labels)}")
        object.__setattr__(self, "labels", tuple(int(x) for x in self.labels))

    def vertex_sum(self, v: int) -> int:
        return sum(self.labels[e] for e in self.graph.incidence[v])

    def to_dict(self) -> dict:
        g = self.graph
        return {"graph": {"rows": g.rows, "cols": g.cols, "topology": g.topology},
                "sum": self.sum, "labels": list(self.labels)}

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def labelling_from_dict(data: dict) -> MagicLabelling:
    gd = data["graph"]
    g = build(int(gd["rows"]), int(gd["cols"]), gd.get("topology", GRID))
    labels = data["labels"]
    if len(labels) != g.num_edges:
        raise ValueError(f"labelling has {len(labels)} labels, graph has {g.num_edges} edges")
    return MagicLabelling(g, int(data["sum"]), tuple(labels))


def labelling_from_json(text: str) -> MagicLabelling:
    return labelling_from_dict(json.loads(text))


def from_matching(g: Graph, matching) -> MagicLabelling:
    labels = [0] * g.num_edges
    for e in matching:
        labels[e] += 1
    return MagicLabelling(g, 1, tuple(labels))


@dataclass
class ValidationReport:
    is_magic: bool
    is_interior: bool
    violations: list = field(default_factory=list)


def validate(lab: MagicLabelling) -> ValidationReport:
    violations = []
    for e, x in enumerate(lab.labels):
        if x < 0:
            violations.append(f"edge {e} has negative label {x}")
    for v in range(lab.graph.num_vertices):
        s = lab.vertex_sum(v)
        if s != lab.sum:
            vert = lab.graph.vertices[v]
            violations.append(f"vertex ({vert.row},{vert.col}) sums to {s}, not {lab.sum}")
    magic = not violations
    return ValidationReport(magic, magic and all(x >= 1 for x in lab.labels), violations)


# --- interior witnesses --------------------------------------------------

def _fill(g: Graph, t: int, horiz, vert) -> MagicLabelling:
    """Label grid edges from ``horiz(row, pos)`` and ``vert(pos, col)``."""
    labels = [0] * g.num_edges
    for r in range(g.rows):
        for p in range(g.cols - 1):
            labels[g.horizontal(r, p)] = horiz(r, p)
    for p in range(g.rows - 1):
        for c in range(g.cols):
            labels[g.vertical(p, c)] = vert(p, c)
    return MagicLabelling(g, t, tuple(labels))


def _witness_2xn(m, n):
    g = build_grid(m, n)
    return _fill(g, 3, lambda r, p: 1, lambda p, c: 2 if c in (0, n - 1) else 1)


def _witness_3xn(m, n):
    g = build_grid(m, n)

    def horiz(r, p):
        if r == 1:
            return 1 if p % 2 == 0 else 2
        return 3 if p % 2 == 0 else 1

    return _fill(g, 5, horiz, lambda p, c: 2 if c in (0, n - 1) else 1)


def _witness_even_even_t4(m, n):
    g = build_grid(m, n)
    return _fill(
        g, 4,
        lambda r, p: 2 if r in (0, m - 1) and p % 2 == 0 else 1,
        lambda p, c: 2 if c in (0, n - 1) and p % 2 == 0 else 1,
    )


def _witness_even_even_t5(m, n):
    g = build_grid(m, n)

    def horiz(r, p):
        if r in (0, m - 1) and (p in (0, n - 2) or p % 2 == 1):
            return 2
        return 1

    def vert(p, c):
        if c in (0, n - 1):
            return 3 if p % 2 == 0 else 1
        if c in (1, n - 2):
            return 2 if p % 2 == 1 else 1
        return 2 if p % 2 == 0 else 1

    return _fill(g, 5, horiz, vert)


def _witness_even_odd_t5(m, n):
    g = build_grid(m, n)

    def horiz(r, p):
        return 2 if r in (0, m - 1) and p != 1 else 1

    def vert(p, c):
        if c in (0, n - 1):
            return 3 if p % 2 == 0 else 1
        if c in (1, 2):
            return 2 if p % 2 == 0 else 1
        return 2 if p % 2 == 1 else 1

    return _fill(g, 5, horiz, vert)


def flip_columns(lab: MagicLabelling) -> MagicLabelling:
    """Mirror a grid labelling left to right."""
    g = lab.graph
    n = g.cols
    return _fill(
        g, lab.sum,
        lambda r, p: lab.labels[g.horizontal(r, n - 2 - p)],
        lambda p, c: lab.labels[g.vertical(p, n - 1 - c)],
    )


def _require(cond, case, m, n, need):
    if not cond:
        raise ValueError(f"witness {case!r} needs {need}; got m={m}, n={n}")


def gorenstein_witness(case: str, m: int, n: int) -> MagicLabelling:
    """Interior magic labelling used to certify (non-)Gorenstein behaviour.

    ``2xn-t3``, ``3xn-t5`` and ``4x4-t4`` give the unique interior point at
    the Gorenstein index.  ``even-even-t5`` has a weight-1 edge at
    horizontal position 2 of row 0, which no translate of a point of the
    polytope by the ``even-even-t4`` witness can have.  ``even-odd-t5`` and
    its mirror image are two distinct interior points of the 5th dilate.
    """
    if case == "2xn-t3":
        _require(m == 2 and n >= 3, case, m, n, "m == 2, n >= 3")
        return _witness_2xn(m, n)
    if case == "3xn-t5":
        _require(m == 3 and n >= 4 and n % 2 == 0, case, m, n, "m == 3, n even >= 4")
        return _witness_3xn(m, n)
    if case == "4x4-t4":
        _require(m == 4 and n == 4, case, m, n, "m == n == 4")
        return _witness_even_even_t4(m, n)
    if case == "even-even-t4":
        _require(m >= 4 and n >= 4 and m % 2 == 0 and n % 2 == 0, case, m, n,
                 "m, n even >= 4")
        return _witness_even_even_t4(m, n)
    if case == "even-even-t5":
        _require(m >= 4 and n >= 6 and m % 2 == 0 and n % 2 == 0, case, m, n,
                 "m even >= 4, n even >= 6")
        return _witness_even_even_t5(m, n)
    if case in ("even-odd-t5", "even-odd-t5-flipped"):
        _require(m >= 4 and m % 2 == 0 and n >= 5 and n % 2 == 1, case, m, n,
                 "m even >= 4, n odd >= 5")
        lab = _witness_even_odd_t5(m, n)
        return flip_columns(lab) if case.endswith("flipped") else lab
    raise ValueError(f"unknown witness case {case!r}; choose from {', '.join(WITNESS_CASES)}")


def check_difflemma(lab: MagicLabelling) -> bool:
    """Row identity for magic labellings of the 3 x n grid, n even.

    With ``a``, ``b``, ``c`` the top, middle and bottom horizontal labels at
    1-based position ``i``: ``c_i = b_i - a_i`` for even ``i`` and
    ``c_i = t - a_i + b_i`` for odd ``i``.
    """
    g = lab.graph
    if g.topology != GRID or g.rows != 3 or g.cols % 2:
        raise ValueError(f"difference identity needs grid(3, even n), got {g.topology}({g.rows},{g.cols})")
    t = lab.sum
    for i in range(1, g.cols):
        a, b, c = (lab.labels[g.horizontal(r, i - 1)] for r in range(3))
        expected = b - a if i % 2 == 0 else t - a + b
        if c != expected:
            return False
    return True
