"""Exact counts and enumeration of magic labellings.

Two engines:

* :func:`count_grid` sweeps the grid column by column, keeping one exact
  accumulator per horizontal profile (the labels crossing a column
  boundary).  Each column is processed one cell at a time: at a cell the
  incoming horizontal label ``u`` and the vertical label ``p`` from above
  only matter through ``u + p``, so the outgoing pair ``(w, q)`` is filled
  from anti-diagonal sums.  This is the column transition with the
  telescoped vertical labels made explicit.
* :func:`count_generic` assigns edge labels vertex by vertex (column-major
  order) with memoisation on the residual demands.  It works for any small
  bipartite multigraph and is used as the oracle for the grid engine.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CapExceededError, NonBipartiteError
from .graph import GRID, Graph, build_grid, is_bipartite
from .labelling import MagicLabelling

ALL = "all"
INTERIOR = "interior"
MODES = (ALL, INTERIOR)

DEFAULT_STATE_CAP = 10**7
DEFAULT_ENUMERATE_LIMIT = 10**6

_INT64_LIMIT = 2**63 - 1


@dataclass(frozen=True)
class CountResult:
    value: int
    mode: str
    rows: int
    cols: int
    sum: int
    topology: str = GRID

    def __int__(self):
        return self.value


def _lower(mode: str) -> int:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    return 1 if mode == INTERIOR else 0


def _widen(a: np.ndarray, t: int) -> np.ndarray:
    # every new entry is a sum of at most t+1 old ones
    if a.dtype != object and int(a.max(initial=0)) * (t + 1) > _INT64_LIMIT:
        return a.astype(object)
    return a


def _cell(a: np.ndarray, axis: int, t: int, w_lo: int, w_hi: int,
          q_lo: int, q_hi: int) -> np.ndarray:
    """One cell update on ``a`` with profile axes ``0..m-1`` and carry axis ``-1``.

    ``axis`` holds the incoming horizontal label and is overwritten with the
    outgoing one; the carry (vertical label from above) becomes the label
    going down.  Outgoing labels are restricted to ``[w_lo, w_hi]`` and
    ``[q_lo, q_hi]``.
    """
    a = _widen(a, t)
    a = np.moveaxis(a, axis, -2)
    diag = np.zeros(a.shape[:-2] + (t + 1,), dtype=a.dtype)
    for u in range(t + 1):
        diag[..., u:] += a[..., u, : t + 1 - u]
    out = np.zeros_like(a)
    for w in range(w_lo, min(w_hi, t) + 1):
        q_top = min(q_hi, t - w)
        if q_top < q_lo:
            continue
        qs = np.arange(q_lo, q_top + 1)
        out[..., w, q_lo:q_top + 1] = diag[..., t - w - qs]
    return np.moveaxis(out, -2, axis)


def _column(prof: np.ndarray, m: int, t: int, lo: int, last: bool) -> np.ndarray:
    a = np.zeros(prof.shape + (t + 1,), dtype=prof.dtype)
    a[..., 0] = prof
    for r in range(m):
        w_lo, w_hi = (0, 0) if last else (lo, t)
        q_lo, q_hi = (0, 0) if r == m - 1 else (lo, t)
        a = _cell(a, r, t, w_lo, w_hi, q_lo, q_hi)
    return a[..., 0]


def _check_states(m: int, t: int, cap: int):
    states = (t + 1) ** (m + 1)
    if states > cap:
        raise CapExceededError(
            f"profile table of size (t+1)^(m+1) = {states} exceeds the state cap {cap}")


def _initial(m: int, t: int) -> np.ndarray:
    prof = np.zeros((t + 1,) * m, dtype=np.int64)
    prof[(0,) * m] = 1
    return prof


def count_grid(m: int, n: int, t: int, mode: str = ALL,
               state_cap: int = DEFAULT_STATE_CAP) -> CountResult:
    """Number of magic labellings of sum ``t`` of the ``m x n`` grid.

    With ``mode="interior"`` only labellings whose every label is at least 1
    are counted.
    """
    if m < 1 or n < 1 or t < 0:
        raise ValueError(f"need m, n >= 1 and t >= 0; got m={m}, n={n}, t={t}")
    lo = _lower(mode)
    _check_states(m, t, state_cap)
    prof = _initial(m, t)
    for c in range(n):
        prof = _column(prof, m, t, lo, last=(c == n - 1))
    return CountResult(int(prof[(0,) * m]), mode, m, n, t)


def grid_sequence(m: int, t: int, n_terms: int,
                  state_cap: int = DEFAULT_STATE_CAP) -> list[int]:
    """``[T(m, n, t) for n in range(n_terms)]`` from a single sweep.

    After each column the zero-profile entry counts labellings whose last
    column sends nothing to the right, which is exactly ``T(m, c + 1, t)``.
    """
    _check_states(m, t, state_cap)
    prof = _initial(m, t)
    out = [1] if n_terms > 0 else []
    for _ in range(1, n_terms):
        prof = _column(prof, m, t, 0, last=False)
        out.append(int(prof[(0,) * m]))
    return out


# --- generic engine -----------------------------------------------------

def _elimination_order(g: Graph) -> list[int]:
    return sorted(range(g.num_vertices),
                  key=lambda v: (g.vertices[v].col, g.vertices[v].row))


def _prepare(g: Graph):
    if not is_bipartite(g):
        raise NonBipartiteError(
            f"{g.topology}({g.rows},{g.cols}) is not bipartite: magic labellings "
            "are not the lattice points of its matching polytope dilates")
    order = _elimination_order(g)
    pos = {v: i for i, v in enumerate(order)}
    # edges owned by each vertex: those going to later vertices in the order
    forward = []
    for v in order:
        own = []
        for e in g.incidence[v]:
            a, b = g.endpoints(e)
            w = b if a == v else a
            if pos[w] > pos[v]:
                own.append((e, pos[w]))
        forward.append(tuple(own))
    return order, forward


def count_generic(g: Graph, t: int, mode: str = ALL) -> CountResult:
    """Exact count on any small bipartite graph by memoised vertex elimination."""
    lo = _lower(mode)
    order, forward = _prepare(g)
    nv = len(order)

    @lru_cache(maxsize=None)
    def rec(k: int, residual: tuple) -> int:
        if k == nv:
            return 1
        need = residual[0]
        rest = list(residual[1:])
        own = forward[k]
        total = 0

        def assign(j, left):
            nonlocal total
            if j == len(own) - 1 or not own:
                if not own:
                    if left == 0:
                        total += rec(k + 1, tuple(rest))
                    return
                _, w = own[j]
                idx = w - k - 1
                if lo <= left <= rest[idx]:
                    rest[idx] -= left
                    total += rec(k + 1, tuple(rest))
                    rest[idx] += left
                return
            _, w = own[j]
            idx = w - k - 1
            for x in range(lo, min(left, rest[idx]) + 1):
                rest[idx] -= x
                assign(j + 1, left - x)
                rest[idx] += x

        assign(0, need)
        return total

    value = rec(0, (t,) * nv)
    rec.cache_clear()
    return CountResult(value, mode, g.rows, g.cols, t, g.topology)


def enumerate_labellings(g: Graph, t: int, mode: str = ALL,
                         limit: int = DEFAULT_ENUMERATE_LIMIT) -> list[MagicLabelling]:
    """All magic labellings of sum ``t``, sorted lexicographically by label vector."""
    lo = _lower(mode)
    order, forward = _prepare(g)
    nv = len(order)
    labels = [0] * g.num_edges
    residual = [t] * nv
    found = []

    def rec(k):
        if k == nv:
            if len(found) >= limit:
                raise CapExceededError(
                    f"more than {limit} labellings; raise the limit", partial=len(found))
            found.append(tuple(labels))
            return
        own = forward[k]
        if not own:
            if residual[k] == 0:
                rec(k + 1)
            return

        def assign(j, left):
            e, w = own[j]
            if j == len(own) - 1:
                if lo <= left <= residual[w]:
                    labels[e] = left
                    residual[w] -= left
                    rec(k + 1)
                    residual[w] += left
                    labels[e] = 0
                return
            for x in range(lo, min(left, residual[w]) + 1):
                labels[e] = x
                residual[w] -= x
                assign(j + 1, left - x)
                residual[w] += x
            labels[e] = 0

        assign(0, residual[k])

    rec(0)
    found.sort()
    return [MagicLabelling(g, t, lab) for lab in found]


def count(g: Graph, t: int, mode: str = ALL) -> CountResult:
    """Dispatch: profile sweep for grids, generic engine otherwise."""
    if g.topology == GRID:
        return count_grid(g.rows, g.cols, t, mode)
    return count_generic(g, t, mode)


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("GRIDMAGIC_THREADS", "1")))
    except ValueError:
        return 1
