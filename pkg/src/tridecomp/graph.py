"""Dense immutable graphs with canonical edge ids and K4-link enumeration.

Vertices are 0..n-1. Edges are the canonical pairs (u, v) with u < v, sorted
lexicographically, and their position in that order is the edge id. Adjacency
is kept both as a boolean matrix and as packed 64-bit rows so common-neighbor
queries are word-parallel intersections.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from . import kernels
from .errors import GraphConstructionError, LinkLimitError

DEFAULT_MAX_LINKS = 50_000_000


class Graph:
    """Immutable simple undirected graph over vertices 0..n-1."""

    __slots__ = ("n", "adj", "bits", "edge_u", "edge_v", "eid", "degrees")

    def __init__(self, n, edge_u, edge_v):
        self.n = n
        self.edge_u = edge_u
        self.edge_v = edge_v
        adj = np.zeros((n, n), np.bool_)
        adj[edge_u, edge_v] = True
        adj[edge_v, edge_u] = True
        self.adj = adj
        eid = np.full((n, n), -1, np.int32)
        ids = np.arange(edge_u.shape[0], dtype=np.int32)
        eid[edge_u, edge_v] = ids
        eid[edge_v, edge_u] = ids
        self.eid = eid
        self.degrees = adj.sum(axis=1).astype(np.int64)
        nw = max(1, (n + 63) // 64)
        padded = np.zeros((n, nw * 64), np.bool_)
        padded[:, :n] = adj
        shifts = np.arange(64, dtype=np.uint64)
        words = np.left_shift(
            padded.reshape(n, nw, 64).astype(np.uint64), shifts
        )
        self.bits = np.bitwise_or.reduce(words, axis=2)
        for arr in (self.adj, self.bits, self.edge_u, self.edge_v, self.eid, self.degrees):
            arr.setflags(write=False)

    @property
    def m(self):
        return int(self.edge_u.shape[0])

    def has_edge(self, u, v):
        return bool(self.adj[u, v])

    def edge_id(self, u, v):
        e = int(self.eid[u, v])
        if e < 0:
            raise KeyError(f"({u},{v}) is not an edge")
        return e

    def endpoints(self, e):
        return int(self.edge_u[e]), int(self.edge_v[e])

    def neighbors(self, v):
        return np.nonzero(self.adj[v])[0]

    def edge_pairs(self):
        """Canonical (u, v) pairs in edge-id order."""
        return list(zip(self.edge_u.tolist(), self.edge_v.tolist()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def from_edge_list(pairs, n):
    """Build a Graph from vertex pairs; duplicates collapse, loops are rejected."""
    if n < 0:
        raise GraphConstructionError(f"vertex count {n} is negative")
    seen = set()
    for pair in pairs:
        u, v = pair
        u = int(u)
        v = int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphConstructionError(
                f"vertex pair ({u},{v}) out of range for n={n}", pair=(u, v)
            )
        if u == v:
            raise GraphConstructionError(f"self-loop ({u},{v}) rejected", pair=(u, v))
        seen.add((u, v) if u < v else (v, u))
    if seen:
        arr = np.array(sorted(seen), np.int32)
        edge_u, edge_v = arr[:, 0].copy(), arr[:, 1].copy()
    else:
        edge_u = np.empty(0, np.int32)
        edge_v = np.empty(0, np.int32)
    return Graph(n, edge_u, edge_v)


class DegreeStats(NamedTuple):
    min_degree: int
    degrees: np.ndarray
    deficiency: Fraction


def degree_stats(g):
    """Minimum degree, the per-vertex degrees, and the exact deficiency 1 - mindeg/n."""
    if g.n < 1:
        raise ValueError("degree statistics need at least one vertex")
    min_degree = int(g.degrees.min())
    return DegreeStats(min_degree, g.degrees, Fraction(g.n - min_degree, g.n))


def common_neighbors(g, e):
    """Vertices adjacent to both endpoints of edge e (the triangle partners of e)."""
    if not 0 <= e < g.m:
        raise KeyError(f"edge id {e} out of range")
    u, v = g.endpoints(e)
    return np.nonzero(g.adj[u] & g.adj[v])[0]


def enumerate_triangles(g):
    """Every triangle once, as an (t, 3) int32 array with rows (a, b, c), a<b<c,
    sorted lexicographically."""
    return kernels.enumerate_triangle_array(g.bits, g.adj, g.edge_u, g.edge_v)


class RootedK4Link(NamedTuple):
    """An unordered pair of disjoint edges spanning a K4, keyed e1 < e2."""

    e1: int
    e2: int


@dataclass(frozen=True)
class LinkSet:
    """All rooted-K4 links of a graph, canonically ordered by (e1, e2)."""

    graph: Graph
    e1: np.ndarray
    e2: np.ndarray

    def __len__(self):
        return int(self.e1.shape[0])

    def link(self, i):
        return RootedK4Link(int(self.e1[i]), int(self.e2[i]))

    def endpoint_vertices(self, i):
        """The four K4 vertices of link i as ((p,q), (r,s)) for e1=(p,q), e2=(r,s)."""
        g = self.graph
        return g.endpoints(int(self.e1[i])), g.endpoints(int(self.e2[i]))


def enumerate_rooted_k4_links(g, max_links=DEFAULT_MAX_LINKS):
    """One link per (K4, opposite-edge-pair); each K4 contributes exactly 3.

    Aborts with LinkLimitError instead of exhausting memory when the count
    would exceed `max_links` (link counts grow like n**4 on dense graphs).
    """
    result = kernels.enumerate_link_arrays(
        g.bits, g.adj, g.eid, g.edge_u, g.edge_v, g.n, max_links
    )
    if result is None:
        raise LinkLimitError(max_links)
    e1, e2 = result
    e1.setflags(write=False)
    e2.setflags(write=False)
    return LinkSet(g, e1, e2)


def triangle_edge_ids(g, triangles):
    """Edge ids (ab, ac, bc) for each triangle row, as an (t, 3) int32 array."""
    if triangles.shape[0] == 0:
        return np.empty((0, 3), np.int32)
    a, b, c = triangles[:, 0], triangles[:, 1], triangles[:, 2]
    out = np.empty(triangles.shape, np.int32)
    out[:, 0] = g.eid[a, b]
    out[:, 1] = g.eid[a, c]
    out[:, 2] = g.eid[b, c]
    return out


def triangles_per_edge(g, triangles=None):
    """T_e for every edge: the number of triangles containing it."""
    if triangles is None:
        triangles = enumerate_triangles(g)
    counts = np.zeros(g.m, np.int64)
    if triangles.shape[0]:
        ids = triangle_edge_ids(g, triangles)
        counts += np.bincount(ids.ravel(), minlength=g.m)
    return counts
