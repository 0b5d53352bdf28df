"""Exact feasibility oracle: phase-1 simplex over the edge/triangle incidence.

Decides whether non-negative triangle weights exist whose sums over each edge
equal exactly 1, by minimizing the total artificial slack with smallest-index
(Bland) pivoting, which cannot cycle. The tableau is held as integer
numerator rows with one positive denominator per row, gcd-reduced after every
pivot; the hot path is vectorized numpy int64 guarded by a proven-no-overflow
bound, falling back losslessly to Python big ints when the guard trips. Both
paths perform the identical pivot sequence, so results are bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .decompose import Decomposition
from .errors import LPSizeError
from .graph import enumerate_triangles, triangle_edge_ids

DEFAULT_MAX_LP_TRIANGLES = 5000

# Entries below this bound cannot overflow int64 in one cross-multiplication.
_NUMPY_GUARD = 1 << 31


@dataclass(frozen=True)
class FeasibilityVerdict:
    feasible: bool
    decomposition: Decomposition | None

    def __bool__(self):
        return self.feasible


class _Overflow(Exception):
    pass


class _NumpyTableau:
    def __init__(self, nums, dens):
        self.nums = np.array(nums, dtype=np.int64)
        self.dens = np.array(dens, dtype=np.int64)

    def entry(self, i, j):
        return int(self.nums[i, j]), int(self.dens[i])

    def negative_columns(self, row, limit):
        return np.nonzero(self.nums[row, :limit] < 0)[0]

    def column_signs(self, col, rows):
        return self.nums[:rows, col]

    def pivot(self, r, c):
        nums, dens = self.nums, self.dens
        peak = max(int(np.abs(nums).max(initial=0)), int(dens.max(initial=1)))
        if peak >= _NUMPY_GUARD:
            raise _Overflow
        p = int(nums[r, c])
        col = nums[:, c].copy()
        pivot_row = nums[r].copy()
        nums *= p
        nums -= np.outer(col, pivot_row)
        nums[r] = pivot_row
        dens *= p
        dens[r] = p
        g = np.gcd.reduce(np.abs(nums), axis=1)
        g = np.gcd(g, dens)
        g[g == 0] = 1
        nums //= g[:, None]
        dens //= g

    def to_python(self):
        return _PyTableau(self.nums.tolist(), self.dens.tolist())


class _PyTableau:
    def __init__(self, nums, dens):
        self.nums = nums
        self.dens = dens

    def entry(self, i, j):
        return self.nums[i][j], self.dens[i]

    def negative_columns(self, row, limit):
        r = self.nums[row]
        return [j for j in range(limit) if r[j] < 0]

    def column_signs(self, col, rows):
        return [self.nums[i][col] for i in range(rows)]

    def pivot(self, r, c):
        nums, dens = self.nums, self.dens
        p = nums[r][c]
        pivot_row = nums[r]
        for i in range(len(nums)):
            if i == r:
                continue
            a = nums[i][c]
            if a == 0:
                # Value-preserving scaling only; the row is already reduced.
                continue
            row = [x * p - a * y for x, y in zip(nums[i], pivot_row)]
            den = dens[i] * p
            g = math.gcd(den, *row) or 1
            nums[i] = [x // g for x in row]
            dens[i] = den // g
        g = math.gcd(p, *pivot_row) or 1
        nums[r] = [x // g for x in pivot_row]
        dens[r] = p // g

    def to_python(self):
        return self


def _phase_one(incidence_rows, t, m):
    """Run the phase-1 simplex; returns (slack_is_zero, witness dict col->Fraction)."""
    width = t + m + 1
    rhs = width - 1
    nums = []
    for i, row in enumerate(incidence_rows):
        full = list(row) + [0] * m + [1]
        full[t + i] = 1
        nums.append(full)
    objective = [0] * width
    for j in range(t):
        objective[j] = -sum(r[j] for r in incidence_rows)
    objective[rhs] = -m
    nums.append(objective)
    dens = [1] * (m + 1)

    tableau = _NumpyTableau(nums, dens)
    basis = [t + i for i in range(m)]
    banned = [False] * (t + m)

    while True:
        entering = None
        for j in tableau.negative_columns(m, t + m):
            if not banned[j]:
                entering = int(j)
                break
        if entering is None:
            break
        col = tableau.column_signs(entering, m)
        leave_row = None
        best_num = best_den = None
        for i in range(m):
            a = int(col[i])
            if a <= 0:
                continue
            rn, _ = tableau.entry(i, rhs)
            # Ratios share the row denominator with the pivot entry, so the
            # comparison rhs_i/a_i < rhs_k/a_k is the integer cross product.
            if leave_row is None or rn * best_den < best_num * a or (
                rn * best_den == best_num * a and basis[i] < basis[leave_row]
            ):
                leave_row = i
                best_num, best_den = rn, a
        if leave_row is None:
            raise AssertionError("phase-1 objective is bounded; no pivot row found")
        try:
            tableau.pivot(leave_row, entering)
        except _Overflow:
            tableau = tableau.to_python()
            tableau.pivot(leave_row, entering)
        leaving = basis[leave_row]
        if leaving >= t:
            banned[leaving] = True
        basis[leave_row] = entering

    slack_num, _ = tableau.entry(m, rhs)
    if slack_num != 0:
        return False, None
    witness = {}
    for i in range(m):
        if basis[i] < t:
            rn, rd = tableau.entry(i, rhs)
            witness[basis[i]] = Fraction(rn, rd)
    return True, witness


def lp_feasible(g, max_triangles=DEFAULT_MAX_LP_TRIANGLES):
    """Decide fractional triangle decomposability exactly; witness on success.

    Solves the m x t feasibility system directly, independent of the flow
    method. Intended for small instances; instances with more than
    `max_triangles` triangles abort with LPSizeError.
    """
    if g.m == 0:
        return FeasibilityVerdict(True, Decomposition(entries=[], graph=g))
    triangles = enumerate_triangles(g)
    t = int(triangles.shape[0])
    if t > max_triangles:
        raise LPSizeError(max_triangles, t)
    if t == 0:
        return FeasibilityVerdict(False, None)

    ids = triangle_edge_ids(g, triangles)
    rows = [[0] * t for _ in range(g.m)]
    for j in range(t):
        for e in ids[j].tolist():
            rows[e][j] = 1

    feasible, witness = _phase_one(rows, t, g.m)
    if not feasible:
        return FeasibilityVerdict(False, None)

    entries = []
    sums = [Fraction(0)] * g.m
    for j, tri in enumerate(map(tuple, triangles.tolist())):
        w = witness.get(j, Fraction(0))
        if w < 0:
            raise AssertionError("simplex produced a negative weight")
        entries.append((tri, w))
        for e in ids[j].tolist():
            sums[e] += w
    if any(s != 1 for s in sums):
        raise AssertionError("simplex witness does not cover every edge exactly")
    return FeasibilityVerdict(True, Decomposition(entries=entries, graph=g))
