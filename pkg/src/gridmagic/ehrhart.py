"""Ehrhart polynomials, h-vectors and Gorenstein tests for matching polytopes.

The lattice points of the ``t``-th dilate of the perfect matching polytope
of a bipartite graph are exactly its magic labellings of sum ``t``, so all
counts come from :mod:`gridmagic.counting`.  Interior points are the
labellings with every label at least 1.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Optional

from . import counting
from .errors import EmptyPolytopeError, GridMagicError, NonBipartiteError, VerificationError
from .graph import GRID, Graph, build, is_bipartite, perfect_matchings
from .linalg import affine_rank

HVECTOR = "hvector"
FUNCTIONAL = "functional"
BOTH = "both"


# --- dimension ----------------------------------------------------------

def formula_dimension(m: int, n: int, topology: str = GRID) -> Optional[int]:
    """Closed-form dimension of the matching polytope, ``None`` when not covered."""
    if m * n % 2:
        return None
    if topology == GRID:
        return (m - 1) * (n - 1)
    a, b = sorted((m, n))
    if a == 1:
        return 0 if b == 2 else 1
    if a == 2:
        if b == 2:
            return 1
        return b + 1 if b % 2 == 0 else b
    return m * n + 1 if (m % 2 == 0 and n % 2 == 0) else m * n


def elp_dimension(g: Graph) -> int:
    """``|E| - |V| + 1 - B`` for a matching covered graph.

    ``B`` is taken as 0 for bipartite graphs and 1 otherwise; the latter is
    right for the non-bipartite tori here, which are bricks.
    """
    return g.num_edges - g.num_vertices + 1 - (0 if is_bipartite(g) else 1)


def dimension(g: Graph, check_formula: bool = True) -> int:
    matchings = perfect_matchings(g)
    if not matchings:
        raise EmptyPolytopeError(f"{g.topology}({g.rows},{g.cols}) has no perfect matching")
    points = []
    for mt in matchings:
        x = [0] * g.num_edges
        for e in mt:
            x[e] = 1
        points.append(x)
    d = affine_rank(points)
    if check_formula:
        expected = formula_dimension(g.rows, g.cols, g.topology)
        if expected is not None and expected != d:
            raise VerificationError(
                f"affine rank {d} disagrees with the dimension formula {expected} "
                f"for {g.topology}({g.rows},{g.cols})")
    return d


# --- polynomial utilities -------------------------------------------------

def interpolate(points: list[tuple[int, int]]) -> list[Fraction]:
    """Coefficients (constant first) of the polynomial through ``points``."""
    k = len(points)
    coeffs = [Fraction(0)] * k
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = 1
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            # multiply basis by (x - xj)
            basis = [Fraction(0)] + basis
            for p in range(len(basis) - 1):
                basis[p] -= xj * basis[p + 1]
            denom *= xi - xj
        for p, b in enumerate(basis):
            coeffs[p] += yi * b / denom
    return coeffs


def evaluate(coeffs, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def h_vector(counts, d: int) -> list[int]:
    """Numerator of the Ehrhart series from ``L(0..d)``.

    ``h_j = sum_i (-1)^i C(d+1, i) L(j-i)``, trailing zeros removed.
    """
    if len(counts) < d + 1:
        raise ValueError(f"need L(0..{d}), got {len(counts)} values")
    h = []
    for j in range(d + 1):
        h.append(sum((-1) ** i * comb(d + 1, i) * int(counts[j - i]) for i in range(j + 1)))
    while len(h) > 1 and h[-1] == 0:
        h.pop()
    if any(x < 0 for x in h):
        raise VerificationError(f"negative h-vector entry in {h}; counts are not an Ehrhart polynomial")
    return h


def expand_series(h, d: int, terms: int) -> list[int]:
    """First ``terms`` coefficients of ``h(z) / (1 - z)^(d+1)``."""
    return [sum(hj * comb(t - j + d, d) for j, hj in enumerate(h) if j <= t)
            for t in range(terms)]


def is_palindromic(h) -> bool:
    return list(h) == list(reversed(h))


def is_unimodal(h) -> bool:
    h = list(h)
    i = 0
    while i + 1 < len(h) and h[i] <= h[i + 1]:
        i += 1
    while i + 1 < len(h) and h[i] >= h[i + 1]:
        i += 1
    return i == len(h) - 1


def series_text(h, d: int) -> str:
    terms = []
    for j, c in enumerate(h):
        if c == 0:
            continue
        if j == 0:
            terms.append(str(c))
        elif j == 1:
            terms.append(f"{c}z" if c != 1 else "z")
        else:
            terms.append(f"{c}z^{j}" if c != 1 else f"z^{j}")
    return f"({' + '.join(reversed(terms))}) / (1-z)^{d + 1}"


# --- Ehrhart data -----------------------------------------------------------

def _graph_for(m: int, n: int, topology: str) -> Graph:
    g = build(m, n, topology)
    if topology == GRID and m * n % 2:
        raise EmptyPolytopeError(f"grid({m},{n}) has an odd number of vertices")
    return g


def lattice_counts(g: Graph, ts, mode: str = counting.ALL, threads: int = 1) -> list[int]:
    ts = list(ts)

    def one(t):
        return counting.count(g, t, mode).value

    if threads > 1 and len(ts) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(one, ts))
    return [one(t) for t in ts]


@dataclass
class EhrhartData:
    rows: int
    cols: int
    topology: str
    dimension: int
    counts: list
    polynomial: list
    h_vector: list
    gorenstein: dict = field(default_factory=dict)

    @property
    def series(self) -> str:
        return series_text(self.h_vector, self.dimension)

    def to_dict(self) -> dict:
        return {
            "d": self.dimension,
            "counts": [int(c) for c in self.counts],
            "coeffs_num": [c.numerator for c in self.polynomial],
            "coeffs_den": [c.denominator for c in self.polynomial],
            "h": list(self.h_vector),
            "gorenstein": dict(self.gorenstein),
        }

    @classmethod
    def from_dict(cls, data: dict, rows: int = 0, cols: int = 0, topology: str = GRID):
        poly = [Fraction(a, b) for a, b in zip(data["coeffs_num"], data["coeffs_den"])]
        return cls(rows, cols, topology, data["d"], list(data["counts"]), poly,
                   list(data["h"]), dict(data.get("gorenstein", {})))


def ehrhart_polynomial(m: int, n: int, topology: str = GRID, threads: int = 1) -> EhrhartData:
    """Exact Ehrhart polynomial by interpolation at ``t = 0..d``.

    ``L(d+1)`` and ``L(d+2)`` are held out and must be reproduced.
    """
    g = _graph_for(m, n, topology)
    d = dimension(g)
    counts = lattice_counts(g, range(d + 3), threads=threads)
    if counts[0] != 1:
        raise VerificationError(f"L(0) = {counts[0]}, expected 1")
    poly = interpolate(list(enumerate(counts[: d + 1])))
    for t in (d + 1, d + 2):
        if evaluate(poly, t) != counts[t]:
            raise VerificationError(
                f"held-out count L({t}) = {counts[t]} does not match the interpolant; "
                f"dimension {d} or the counts are wrong")
    h = h_vector(counts, d)
    if sum(h) != factorial(d) * poly[-1]:
        raise VerificationError("h-vector sum does not equal the normalised volume")
    pal = is_palindromic(h)
    verdict = {"verdict": pal, "index": d + 1 - (len(h) - 1) if pal else None, "mode": HVECTOR}
    return EhrhartData(m, n, topology, d, counts, poly, h, verdict)


# --- Gorenstein ------------------------------------------------------------

@dataclass
class GorensteinResult:
    verdict: bool
    index: Optional[int]
    mode: str
    point: bool = False
    h_vector: Optional[list] = None
    evidence: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "index": self.index, "mode": self.mode}


def _hvector_mode(m, n, topology, threads):
    data = ehrhart_polynomial(m, n, topology, threads=threads)
    h = data.h_vector
    pal = is_palindromic(h)
    index = data.dimension + 1 - (len(h) - 1) if pal else None
    return GorensteinResult(pal, index, HVECTOR, data.dimension == 0, h,
                            {"d": data.dimension, "counts": data.counts})


def _functional_mode(m, n, topology, t_max, threads):
    g = _graph_for(m, n, topology)
    interior = lattice_counts(g, range(t_max + 1), counting.INTERIOR, threads)
    k = next((t for t, c in enumerate(interior) if c > 0), None)
    if k is None or t_max < k + 2:
        raise GridMagicError(
            f"t_max={t_max} too small: need at least two dilates past the first "
            f"interior point (found at {k})")
    full = lattice_counts(g, range(t_max - k + 1), threads=threads)
    unique = interior[k] == 1
    shifted = all(interior[t] == full[t - k] for t in range(k, t_max + 1))
    verdict = unique and shifted
    evidence = {"interior": interior, "counts": full, "first_interior": k}
    return GorensteinResult(verdict, k if verdict else None, FUNCTIONAL, False, None, evidence)


def gorenstein_check(m: int, n: int, topology: str = GRID, mode: str = BOTH,
                     t_max: Optional[int] = None, threads: int = 1) -> GorensteinResult:
    """Decide whether the matching polytope is Gorenstein, and its index.

    ``hvector`` tests palindromicity of the full h-vector; ``functional``
    looks for the first dilate ``k`` with an interior point and checks
    ``L_interior(t) == L(t - k)`` up to ``t_max``; ``both`` runs the two and
    insists they agree.  A point polytope is reported as Gorenstein of
    index 1 in either mode.
    """
    g = _graph_for(m, n, topology)
    if not is_bipartite(g):
        raise NonBipartiteError(f"{topology}({m},{n}) is not bipartite")
    if mode not in (HVECTOR, FUNCTIONAL, BOTH):
        raise ValueError(f"unknown Gorenstein mode {mode!r}")
    if dimension(g) == 0:
        return GorensteinResult(True, 1, mode, True, [1])
    if mode == HVECTOR:
        return _hvector_mode(m, n, topology, threads)
    if t_max is None:
        t_max = 8
    if mode == FUNCTIONAL:
        return _functional_mode(m, n, topology, t_max, threads)
    hv = _hvector_mode(m, n, topology, threads)
    fn = _functional_mode(m, n, topology, t_max, threads)
    if (hv.verdict, hv.index) != (fn.verdict, fn.index):
        raise VerificationError(
            f"h-vector mode says {hv.verdict}/{hv.index}, functional mode says "
            f"{fn.verdict}/{fn.index}")
    hv.mode = BOTH
    hv.evidence.update(fn.evidence)
    return hv


def reciprocity_pairs(data: EhrhartData, ts) -> list[tuple[int, int, int]]:
    """``(t, (-1)^d L(-t), interior count at t)`` for each ``t``."""
    g = build(data.rows, data.cols, data.topology)
    d = data.dimension
    out = []
    for t in ts:
        lhs = (-1) ** d * evaluate(data.polynomial, -t)
        out.append((t, int(lhs), counting.count(g, t, counting.INTERIOR).value))
    return out
