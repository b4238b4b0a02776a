"""Executable acceptance criteria.

Each criterion is a function that raises ``AssertionError`` on failure and
returns a one-line summary on success.  :func:`run_all` times them against
their budgets; ``gridmagic selftest`` and ``tests/test_acceptance.py`` both
go through this module.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import counting, ehrhart, recurrence
from .counting import INTERIOR, count_generic, count_grid, enumerate_labellings
from .decompose import decompose
from .graph import build, build_grid, build_torus
from .kasteleyn import kasteleyn
from .labelling import check_difflemma, gorenstein_witness, validate


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    budget: float            # seconds
    check: Callable[[], str]


def _poly_34():
    # (1/120)(t+1)(t+2)(t+3)(t+4)(t^2+5t+5), coefficients constant first
    coeffs = [Fraction(1)]
    for factor in ([1, 1], [2, 1], [3, 1], [4, 1], [5, 5, 1]):
        out = [Fraction(0)] * (len(coeffs) + len(factor) - 1)
        for i, a in enumerate(coeffs):
            for j, b in enumerate(factor):
                out[i + j] += a * b
        coeffs = out
    return [c / 120 for c in coeffs]


def c01_ehrhart_34():
    data = ehrhart.ehrhart_polynomial(3, 4)
    assert data.polynomial == _poly_34(), data.polynomial
    assert data.h_vector == [1, 4, 1], data.h_vector
    return f"L(t) coefficients {[str(c) for c in data.polynomial]}, h = {data.h_vector}"


def c02_hvector_45():
    data = ehrhart.ehrhart_polynomial(4, 5)
    expected = [1, 82, 1339, 7356, 16432, 15578, 5919, 760, 21]
    assert len(data.counts) == 15
    assert data.h_vector == expected, data.h_vector
    return f"h = {data.h_vector} from T(4,5,0..14)"


GORENSTEIN_EXPECTED = {
    (1, 2): 1, (1, 4): 1, (1, 6): 1,            # point polytopes
    (2, 2): 2, (2, 3): 3, (2, 4): 3, (2, 5): 3, (2, 6): 3,
    (3, 4): 5, (3, 6): 5,
    (4, 4): 4,
    (4, 5): None, (4, 6): None,
}


def c03_classification():
    seen = []
    for (m, n), index in GORENSTEIN_EXPECTED.items():
        res = ehrhart.gorenstein_check(m, n, mode=ehrhart.BOTH, t_max=max(8, (index or 5) + 3))
        if index is None:
            assert not res.verdict, (m, n, res)
        else:
            assert res.verdict and res.index == index, (m, n, res)
            assert res.point == (m == 1), (m, n, res)
        seen.append(f"{m}x{n}:{'point' if res.point else (res.index or 'no')}")
    return " ".join(seen)


def c04_unique_interior():
    cases = [("2xn-t3", 2, 5, 3), ("3xn-t5", 3, 6, 5), ("4x4-t4", 4, 4, 4)]
    for case, m, n, t in cases:
        found = enumerate_labellings(build_grid(m, n), t, INTERIOR)
        assert len(found) == 1, (case, len(found))
        assert found[0].labels == gorenstein_witness(case, m, n).labels, case
    return "unique interior points equal the witnesses at (2,5,3), (3,6,5), (4,4,4)"


def c05_non_gorenstein_evidence():
    lo5 = count_grid(4, 6, 5, INTERIOR).value
    l1 = count_grid(4, 6, 1).value
    assert lo5 > l1, (lo5, l1)
    w = gorenstein_witness("even-odd-t5", 4, 5)
    f = gorenstein_witness("even-odd-t5-flipped", 4, 5)
    for lab in (w, f):
        rep = validate(lab)
        assert rep.is_magic and rep.is_interior and lab.sum == 5
    assert w.labels != f.labels
    return f"grid(4,6): L_int(5) = {lo5} > L(1) = {l1}; grid(4,5) has two distinct interior points at t=5"


def c06_kasteleyn():
    for m in range(1, 9):
        for n in range(1, 9):
            k = kasteleyn(m, n)
            assert k == count_grid(m, n, 1).value, (m, n, k)
            if m * n % 2:
                assert k == 0
    return "64 boards agree, zero exactly when mn is odd"


def c07_reciprocity():
    for m in range(2, 7):
        rep = recurrence.verify_reciprocity(m, 10)
        assert rep.all_pass, (m, [r for r in rep.rows if not r.passed], rep.checks)
        assert len(rep.rows) == 11
    return "m = 2..6, n = 0..10 all pass"


def c08_transfer_matrix():
    for m in (1, 2):
        for t in (1, 2):
            tm = recurrence.transfer_matrix(m, t)
            walks = tm.walk_counts(7)
            assert walks[0] == 1
            for n in range(1, 7):
                assert walks[n] == count_grid(m, n, t).value, (m, t, n)
            rec = recurrence.char_poly_recurrence(tm)
            assert rec.order == (t + 1) ** m
            truth = counting.grid_sequence(m, t, rec.order + 5)
            assert rec.values(rec.order, rec.order + 5) == truth[rec.order:], (m, t)
    return "(A^n)[0][0] = T(m,n,t) for m,t <= 2, n <= 6; char-poly recurrences predict 5 held-out terms"


def c09_powers():
    seq = [x * x for x in counting.grid_sequence(2, 1, 21)]
    rec = recurrence.berlekamp_massey(seq[:12])
    assert rec.order == 3, rec.order
    assert rec.values(12, 21) == seq[12:21]
    for m in (2, 3):
        for t in (2, 3):
            rep = recurrence.power_recurrence(m, t, 8)
            assert rep.all_pass, (m, t)
    return f"squared sequence: {rec.text()}; power reciprocity holds for m in (2,3), t in (2,3)"


def c10_decomposition():
    total = 0
    for (m, n, tmax) in ((3, 4, 3), (2, 6, 4)):
        g = build_grid(m, n)
        for t in range(tmax + 1):
            for lab in enumerate_labellings(g, t):
                dec = decompose(lab)
                assert len(dec.layers) == t
                assert dec.resum() == lab.labels
                total += 1
    return f"{total} labellings decomposed and re-summed"


def c11_torus_gorenstein():
    for (m, n, k, tmax) in ((2, 4, 3, 8), (4, 4, 4, 6)):
        g = build_torus(m, n)
        interior = [count_generic(g, t, INTERIOR).value for t in range(tmax + 1)]
        full = [count_generic(g, t).value for t in range(tmax - k + 1)]
        assert all(x == 0 for x in interior[:k]), interior
        assert all(interior[t] == full[t - k] for t in range(k, tmax + 1)), (interior, full)
    return "torus(2,4) index 3 for t <= 8; torus(4,4) index 4 for t <= 6"


def c12_dimensions():
    cases = {("grid", 2, 3): 2, ("grid", 3, 4): 6, ("grid", 4, 4): 9,
             ("torus", 2, 3): 3, ("torus", 2, 4): 5, ("torus", 4, 4): 17, ("torus", 4, 3): 12}
    for (top, m, n), d in cases.items():
        assert ehrhart.formula_dimension(m, n, top) == d
        assert ehrhart.dimension(build(m, n, top), check_formula=False) == d, (top, m, n)
    return "affine ranks: " + ", ".join(f"{t}({m},{n})={d}" for (t, m, n), d in cases.items())


def c13_difflemma():
    total = 0
    for n, tmax in ((4, 3), (6, 2)):
        g = build_grid(3, n)
        for t in range(tmax + 1):
            for lab in enumerate_labellings(g, t):
                assert check_difflemma(lab), lab.labels
                total += 1
    return f"identity holds on all {total} enumerated labellings"


def c14_ehrhart_reciprocity():
    for m, n in ((2, 4), (3, 4)):
        data = ehrhart.ehrhart_polynomial(m, n)
        for t, lhs, rhs in ehrhart.reciprocity_pairs(data, range(1, 9)):
            assert lhs == rhs, (m, n, t, lhs, rhs)
    return "(-1)^d L(-t) = interior count for grid(2,4), grid(3,4), t = 1..8"


def c15_unimodal():
    checked = []
    for (m, n), index in GORENSTEIN_EXPECTED.items():
        if index is None:
            continue
        res = ehrhart.gorenstein_check(m, n, mode=ehrhart.HVECTOR)
        assert ehrhart.is_unimodal(res.h_vector), (m, n, res.h_vector)
        checked.append(res.h_vector)
    h = ehrhart.ehrhart_polynomial(2, 4, "torus").h_vector
    assert ehrhart.is_unimodal(h), h
    return f"{len(checked)} Gorenstein grid h-vectors and torus(2,4) h = {h} are unimodal"


CRITERIA = [
    Criterion(1, "Ehrhart polynomial and h-vector of P(3,4)", 5, c01_ehrhart_34),
    Criterion(2, "h-vector of P(4,5)", 600, c02_hvector_45),
    Criterion(3, "Gorenstein classification, m <= 4, n <= 6", 900, c03_classification),
    Criterion(4, "unique interior points equal the witnesses", 60, c04_unique_interior),
    Criterion(5, "non-Gorenstein evidence", 60, c05_non_gorenstein_evidence),
    Criterion(6, "Kasteleyn product equals tiling count", 30, c06_kasteleyn),
    Criterion(7, "tiling reciprocity", 60, c07_reciprocity),
    Criterion(8, "transfer-matrix consistency", 30, c08_transfer_matrix),
    Criterion(9, "power sequences", 30, c09_powers),
    Criterion(10, "decomposition round trip", 120, c10_decomposition),
    Criterion(11, "torus Gorenstein identities", 600, c11_torus_gorenstein),
    Criterion(12, "dimension formulas", 120, c12_dimensions),
    Criterion(13, "3 x n difference identity", 60, c13_difflemma),
    Criterion(14, "Ehrhart reciprocity", 60, c14_ehrhart_reciprocity),
    Criterion(15, "unimodality", 900, c15_unimodal),
]


@dataclass
class Outcome:
    criterion: Criterion
    passed: bool
    seconds: float
    detail: str

    def line(self, timings: bool = True) -> str:
        tag = "PASS" if self.passed else "FAIL"
        head = f"[{tag}] {self.criterion.number:2d}. {self.criterion.title}"
        if timings:
            head += f" ({self.seconds:.2f}s / {self.criterion.budget:g}s)"
        return f"{head}: {self.detail}"


def run(criterion: Criterion) -> Outcome:
    start = time.perf_counter()
    try:
        detail = criterion.check()
        passed = True
    except AssertionError as exc:
        detail, passed = f"assertion failed: {exc}", False
    except Exception as exc:  # a crash is a failed criterion, not a crashed suite
        detail, passed = f"{type(exc).__name__}: {exc}", False
    elapsed = time.perf_counter() - start
    if passed and elapsed > criterion.budget:
        passed, detail = False, f"over budget: {detail}"
    return Outcome(criterion, passed, elapsed, detail)


def run_all(criteria=None) -> list[Outcome]:
    return [run(c) for c in (criteria or CRITERIA)]
