"""Removal of triangles whose three vertices all have degree >= (1-d)n + 2.

The deficiency d is fixed from the input graph and never recomputed, so the
eligibility threshold is constant while degrees drop. Each removal takes the
three triangle edges out of the graph; the removed triangles re-enter the
final decomposition with weight one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graph import Graph, degree_stats


@dataclass(frozen=True)
class PeelResult:
    residual: Graph
    removed: list
    deficiency: Fraction


def _smallest_eligible_triangle(adj, heavy):
    heavy_idx = np.nonzero(heavy)[0]
    for a in heavy_idx.tolist():
        row_a = adj[a] & heavy
        bs = np.nonzero(row_a)[0]
        bs = bs[bs > a]
        for b in bs.tolist():
            cs = np.nonzero(row_a & adj[b])[0]
            cs = cs[cs > b]
            if cs.size:
                return a, b, int(cs[0])
    return None


def peel_heavy_triangles(g):
    """Iteratively strip the lexicographically smallest eligible triangle.

    Eligible means all three vertices currently have degree at least
    (1 - d) * n + 2 with d anchored to the original graph. The residual keeps
    minimum degree >= (1 - d) * n because every vertex a removal touches loses
    exactly two incident edges.
    """
    stats = degree_stats(g)
    deficiency = stats.deficiency
    threshold = (1 - deficiency) * g.n + 2
    min_eligible_degree = math.ceil(threshold)

    adj = g.adj.copy()
    degrees = g.degrees.copy()
    removed = []
    while True:
        heavy = degrees >= min_eligible_degree
        if int(heavy.sum()) < 3:
            break
        tri = _smallest_eligible_triangle(adj, heavy)
        if tri is None:
            break
        a, b, c = tri
        removed.append((a, b, c))
        for x, y in ((a, b), (a, c), (b, c)):
            adj[x, y] = False
            adj[y, x] = False
            degrees[x] -= 1
            degrees[y] -= 1

    eu, ev = np.nonzero(np.triu(adj, 1))
    residual = Graph(g.n, eu.astype(np.int32), ev.astype(np.int32))
    return PeelResult(residual, removed, deficiency)
