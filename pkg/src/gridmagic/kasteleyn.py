"""Kasteleyn's product formula for domino tilings of an m x n board.

Each factor ``(c^(n+1) - cbar^(n+1)) / (c - cbar)`` is evaluated through the
three-term recurrence ``f(k) = 2 a f(k-1) + f(k-2)``, ``f(0) = 1``,
``f(-1) = 0``, with ``a = cos(j pi / (m+1))``: ``c`` and ``cbar`` are the
roots of ``x^2 - 2 a x - 1``.  No square roots are needed.
"""

from __future__ import annotations

import mpmath

from .errors import CapExceededError

START_BITS = 128
DEFAULT_CEILING = 4096


def _product(m: int, n: int):
    total = mpmath.mpf(1)
    for j in range(1, (m + 1) // 2 + 1):
        a2 = 2 * mpmath.cos(j * mpmath.pi / (m + 1))
        prev, cur = mpmath.mpf(0), mpmath.mpf(1)
        for _ in range(n):
            prev, cur = cur, a2 * cur + prev
        total *= cur
    return total


def kasteleyn(m: int, n: int, ceiling: int = DEFAULT_CEILING) -> int:
    """Number of domino tilings of the ``m x n`` board (0 when ``mn`` is odd)."""
    if m < 1 or n < 1:
        raise ValueError(f"board dimensions must be positive, got {m}x{n}")
    bits = START_BITS
    while bits <= ceiling:
        with mpmath.workprec(bits):
            value = _product(m, n)
            nearest = mpmath.nint(value)
            if abs(value - nearest) < 0.25:
                return int(nearest)
        bits *= 2
    raise CapExceededError(f"product did not settle to an integer within {ceiling} bits")
