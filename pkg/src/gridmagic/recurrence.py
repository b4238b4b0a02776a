"""Transfer matrices, linear recurrences and tiling reciprocity.

A :class:`Recurrence` stores ``a(n) = c1*a(n-1) + ... + cr*a(n-r)`` with
exact rational coefficients and a seed of ``r`` consecutive values.  It can
be run forwards or, when ``cr != 0``, backwards to negative indices.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import counting
from .errors import BackwardUndefinedError, CapExceededError, GridMagicError, VerificationError
from .linalg import charpoly

DEFAULT_STATE_CAP = 10**5


def _as_number(x: Fraction):
    return x.numerator if x.denominator == 1 else x


@dataclass(frozen=True)
class Recurrence:
    coeffs: tuple            # (c1, ..., cr)
    seed: tuple              # a(seed_index), ..., a(seed_index + r - 1)
    seed_index: int = 0

    def __post_init__(self):
        if len(self.coeffs) < 1:
            raise ValueError("a recurrence needs order >= 1")
        if len(self.seed) != len(self.coeffs):
            raise ValueError("seed length must equal the order")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "seed", tuple(Fraction(s) for s in self.seed))

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def forward(self, count: int) -> list:
        """The ``count`` values following the seed."""
        window = list(self.seed)
        out = []
        for _ in range(count):
            nxt = sum(c * window[-k] for k, c in enumerate(self.coeffs, start=1))
            window.append(nxt)
            window.pop(0)
            out.append(nxt)
        return out

    def backward(self, count: int) -> list:
        """The ``count`` values preceding the seed, nearest first."""
        last = self.coeffs[-1]
        if last == 0:
            raise BackwardUndefinedError(
                "backward extension undefined for this recurrence (trailing coefficient is 0)")
        window = list(self.seed)
        out = []
        r = self.order
        for _ in range(count):
            # window[-1] = c1*window[-2] + ... + c_{r-1}*window[0] + c_r*prev
            partial = sum(self.coeffs[k - 1] * window[r - 1 - k] for k in range(1, r))
            prev = (window[-1] - partial) / last
            window.insert(0, prev)
            window.pop()
            out.append(prev)
        return out

    def value_at(self, n: int):
        lo = self.seed_index
        hi = lo + self.order - 1
        if lo <= n <= hi:
            return self.seed[n - lo]
        if n > hi:
            return self.forward(n - hi)[-1]
        return self.backward(lo - n)[-1]

    def values(self, start: int, stop: int) -> list:
        """``[a(start), ..., a(stop - 1)]`` as ints where integral."""
        return [_as_number(self.value_at(i)) for i in range(start, stop)]

    def predicts(self, seq, start: int = 0) -> bool:
        """Does the recurrence reproduce ``seq`` (indexed from ``start``)?"""
        vals = self.values(start, start + len(seq))
        return all(Fraction(a) == Fraction(b) for a, b in zip(vals, seq))

    def text(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs, start=1):
            if c == 0:
                continue
            parts.append(f"{_fmt(c)}*a(n-{k})")
        return "a(n) = " + (" + ".join(parts) if parts else "0")

    def to_dict(self) -> dict:
        return {"order": self.order,
                "coeffs": [_fmt(c) for c in self.coeffs],
                "seed_index": self.seed_index,
                "seed": [_fmt(s) for s in self.seed]}


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def recurrence_from_dict(data: dict) -> Recurrence:
    return Recurrence(tuple(Fraction(c) for c in data["coeffs"]),
                      tuple(Fraction(s) for s in data["seed"]),
                      int(data.get("seed_index", 0)))


# --- transfer matrix --------------------------------------------------------

@dataclass
class TransferMatrix:
    m: int
    t: int
    states: list
    successors: list = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.states)

    def dense(self) -> list[list[int]]:
        mat = [[0] * self.size for _ in range(self.size)]
        for i, succ in enumerate(self.successors):
            for j in succ:
                mat[i][j] = 1
        return mat

    def walk_counts(self, n_terms: int) -> list[int]:
        """``[(A^n)[0][0] for n in range(n_terms)]``."""
        vec = [0] * self.size
        vec[0] = 1
        out = []
        for _ in range(n_terms):
            out.append(vec[0])
            nxt = [0] * self.size
            for i, x in enumerate(vec):
                if x:
                    for j in self.successors[i]:
                        nxt[j] += x
            vec = nxt
        return out

    def power_entry(self, n: int) -> int:
        return self.walk_counts(n + 1)[-1]


def column_successors(u, t: int) -> list[tuple]:
    """Outgoing profiles ``w`` compatible with incoming ``u`` in one column.

    Vertical labels telescope: ``p_0 = 0``, ``p_{j+1} = t - u_j - w_j - p_j``;
    every ``p_j`` must be nonnegative and ``p_m`` must vanish.
    """
    m = len(u)
    out = []

    def rec(j, p, w):
        if j == m:
            if p == 0:
                out.append(tuple(w))
            return
        room = t - u[j] - p
        for wj in range(0, room + 1):
            nxt = room - wj
            if j == m - 1 and nxt != 0:
                continue
            w.append(wj)
            rec(j + 1, nxt, w)
            w.pop()

    rec(0, 0, [])
    return out


def transfer_matrix(m: int, t: int, state_cap: int = DEFAULT_STATE_CAP) -> TransferMatrix:
    size = (t + 1) ** m
    if size > state_cap:
        raise CapExceededError(f"(t+1)^m = {size} states exceeds the cap {state_cap}")
    states = list(itertools.product(range(t + 1), repeat=m))
    index = {s: i for i, s in enumerate(states)}
    succ = [sorted(index[w] for w in column_successors(u, t)) for u in states]
    return TransferMatrix(m, t, states, succ)


def char_poly_recurrence(tm: TransferMatrix, verify_terms: int = 6) -> Recurrence:
    """Cayley-Hamilton recurrence of order ``(t+1)^m`` for ``T(m, n, t)``."""
    poly = charpoly(tm.dense())
    d = tm.size
    coeffs = tuple(-c for c in poly[1:])
    seq = tm.walk_counts(d + verify_terms)
    rec = Recurrence(coeffs, tuple(seq[:d]), 0)
    if not rec.predicts(seq):
        raise VerificationError("characteristic-polynomial recurrence failed to reproduce the walk counts")
    return rec


# --- Berlekamp-Massey -------------------------------------------------------

def _bm_raw(seq) -> tuple[int, list]:
    """Minimal connection polynomial ``C`` (``C[0] = 1``) and its length."""
    s = [Fraction(x) for x in seq]
    c, b = [Fraction(1)], [Fraction(1)]
    length, shift, bd = 0, 1, Fraction(1)
    for i in range(len(s)):
        disc = s[i] + sum(c[j] * s[i - j] for j in range(1, length + 1) if j < len(c))
        if disc == 0:
            shift += 1
            continue
        coef = disc / bd
        new = c + [Fraction(0)] * max(0, len(b) + shift - len(c))
        for j, bj in enumerate(b):
            new[j + shift] -= coef * bj
        if 2 * length <= i:
            b, length, bd, shift = c, i + 1 - length, disc, 1
        else:
            shift += 1
        c = new
    c = c + [Fraction(0)] * max(0, length + 1 - len(c))
    return length, c[: length + 1]


def berlekamp_massey(seq, start: int = 0, certify: bool = True) -> Recurrence:
    """Minimal linear recurrence fitting ``seq`` (indexed from ``start``).

    With ``certify`` the last quarter of the terms is held out: the
    recurrence found on the first three quarters must already predict them.
    """
    seq = [Fraction(x) for x in seq]
    if len(seq) < 2:
        raise GridMagicError("need at least two terms")
    length, c = _bm_raw(seq)
    if length == 0:
        raise GridMagicError("the zero sequence has no recurrence of positive order")
    if 2 * length > len(seq):
        raise GridMagicError(
            f"no certified recurrence: order {length} needs at least {2 * length} terms, got {len(seq)}")
    coeffs = tuple(-x for x in c[1:])
    rec = Recurrence(coeffs, tuple(seq[:length]), start)
    if not rec.predicts(seq, start):
        raise VerificationError("Berlekamp-Massey result does not reproduce the input")
    if certify:
        cut = len(seq) - len(seq) // 4
        plen, pc = _bm_raw(seq[:cut])
        if plen == 0 or not Recurrence(tuple(-x for x in pc[1:]), tuple(seq[:plen]), start).predicts(seq, start):
            raise GridMagicError(
                "held-out terms not predicted from the prefix; supply a longer sequence")
    return rec


def default_length(m: int, t: int) -> int:
    return 4 * (t + 1) ** m + 4


def tiling_recurrence(m: int, t: int = 1, n_terms: Optional[int] = None) -> tuple[Recurrence, list]:
    """Minimal recurrence in ``n`` for ``T(m, n, t)`` and the sequence used."""
    n_terms = n_terms or default_length(m, t)
    seq = counting.grid_sequence(m, t, n_terms)
    return berlekamp_massey(seq), seq


# --- reciprocity ------------------------------------------------------------

def reciprocity_exponent(m: int) -> int:
    return (m + 1) // 2


@dataclass
class ReciprocityRow:
    n: int
    forward: int
    backward: object
    sign: int
    passed: bool

    def to_dict(self):
        b = self.backward
        return {"n": self.n, "forward": self.forward,
                "backward": b if isinstance(b, int) else str(b),
                "sign": self.sign, "pass": self.passed}


@dataclass
class ReciprocityReport:
    m: int
    t: int
    recurrence: Recurrence
    rows: list
    checks: dict = field(default_factory=dict)

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.rows) and all(self.checks.values())

    def to_dict(self):
        return {"m": self.m, "t": self.t, "recurrence": self.recurrence.to_dict(),
                "rows": [r.to_dict() for r in self.rows], "checks": dict(self.checks),
                "all_pass": self.all_pass}


def verify_reciprocity(m: int, n_max: int, n_terms: Optional[int] = None) -> ReciprocityReport:
    """Check ``T(m, n, 1) == (-1)^(l n) T(m, -n-2, 1)`` with ``l = ceil(m/2)``.

    Negative-index values come from running the minimal recurrence
    backwards.  The sign is also checked against the case split on
    ``m mod 4`` (sign ``(-1)^n`` only when ``m = 2 mod 4``, after using that
    ``T(m, n, 1) = 0`` for odd ``n`` when ``m`` is odd).
    """
    rec, seq = tiling_recurrence(m, 1, n_terms or max(default_length(m, 1), n_max + 1))
    ell = reciprocity_exponent(m)
    rows = []
    for n in range(n_max + 1):
        fwd = seq[n] if n < len(seq) else int(rec.value_at(n))
        back = _as_number(rec.value_at(-n - 2))
        sign = (-1) ** (ell * n)
        rows.append(ReciprocityRow(n, fwd, back, sign, Fraction(fwd) == sign * Fraction(back)))
    checks = {}
    case_sign_ok = True
    for row in rows:
        case_sign = (-1) ** row.n if m % 4 == 2 else 1
        case_sign_ok &= Fraction(row.forward) == case_sign * Fraction(row.backward)
    checks["case_split"] = case_sign_ok
    if m % 2 == 1:
        checks["odd_n_vanish"] = all(seq[n] == 0 for n in range(1, min(len(seq), n_max + 1), 2))
    return ReciprocityReport(m, 1, rec, rows, checks)


def power_recurrence(m: int, t: int, n_max: int, n_terms: Optional[int] = None) -> ReciprocityReport:
    """Minimal recurrence for ``T(m, n, 1)^t`` and its reciprocity check.

    Each row compares ``T(m, n, 1)^t`` with ``(-1)^(t l n)`` times the
    backward value of the power recurrence at ``-n-2``.  The extra check
    ``power_of_base`` asserts that backward values of the power sequence are
    the ``t``-th powers of the base sequence's backward values.
    """
    n_terms = n_terms or max(default_length(m, t), n_max + 1)
    base = counting.grid_sequence(m, 1, n_terms)
    seq = [x ** t for x in base]
    rec = berlekamp_massey(seq)
    base_rec = berlekamp_massey(base)
    ell = reciprocity_exponent(m)
    rows = []
    power_of_base = True
    for n in range(n_max + 1):
        back = rec.value_at(-n - 2)
        sign = (-1) ** (t * ell * n)
        rows.append(ReciprocityRow(n, seq[n], _as_number(back), sign, seq[n] == sign * back))
        power_of_base &= back == base_rec.value_at(-n - 2) ** t
    return ReciprocityReport(m, t, rec, rows, {"power_of_base": power_of_base})
