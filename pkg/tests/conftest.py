"""Shared fixtures and independent brute-force oracles.

The oracles here deliberately avoid the library's enumeration and flow code:
triangles and K4s come from itertools scans, min cuts from exhaustive subset
enumeration. Expected values in the tests are computed (or were frozen) from
these, never from the code under test.
"""

from fractions import Fraction
from itertools import combinations

import pytest

from tridecomp.graph import from_edge_list


def complete_pairs(n):
    return list(combinations(range(n), 2))


def make_graph(pairs, n):
    return from_edge_list(pairs, n)


def complete_graph(n):
    return make_graph(complete_pairs(n), n)


def complete_minus_edge(n, drop):
    pairs = [p for p in complete_pairs(n) if p != tuple(sorted(drop))]
    return make_graph(pairs, n)


def complete_minus_hamilton(n):
    cycle = {tuple(sorted((i, (i + 1) % n))) for i in range(n)}
    pairs = [p for p in complete_pairs(n) if p not in cycle]
    return make_graph(pairs, n)


def brute_triangles(g):
    """All triangles by cubic scan, sorted."""
    out = []
    for a, b, c in combinations(range(g.n), 3):
        if g.has_edge(a, b) and g.has_edge(a, c) and g.has_edge(b, c):
            out.append((a, b, c))
    return out


def brute_k4s(g):
    """All K4 vertex sets by quartic scan, sorted."""
    out = []
    for quad in combinations(range(g.n), 4):
        if all(g.has_edge(x, y) for x, y in combinations(quad, 2)):
            out.append(quad)
    return out


def brute_links(g):
    """Rooted-K4 links as sorted (e1, e2) edge-id pairs, from the K4 scan."""
    links = set()
    for a, b, c, d in brute_k4s(g):
        for (x1, y1), (x2, y2) in (((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))):
            i, j = g.edge_id(x1, y1), g.edge_id(x2, y2)
            links.add((min(i, j), max(i, j)))
    return sorted(links)


def brute_edge_triangle_count(g, u, v):
    return sum(
        1 for w in range(g.n) if w not in (u, v) and g.has_edge(u, w) and g.has_edge(v, w)
    )


def brute_min_cut(num_nodes, tails, heads, caps, source, sink):
    """Minimum s-t cut capacity by enumerating every source-side subset."""
    others = [v for v in range(num_nodes) if v not in (source, sink)]
    best = None
    for mask in range(1 << len(others)):
        side = {source}
        for i, v in enumerate(others):
            if mask >> i & 1:
                side.add(v)
        cap = sum(
            c for t, h, c in zip(tails, heads, caps) if t in side and h not in side
        )
        if best is None or cap < best:
            best = cap
    return best


def edge_weight_sums(g, entries):
    """Per-edge incident weight sums of a decomposition, computed directly."""
    sums = {e: Fraction(0) for e in range(g.m)}
    for (a, b, c), w in entries:
        for x, y in ((a, b), (a, c), (b, c)):
            sums[g.edge_id(x, y)] += w
    return sums


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile the jit kernels once so timed tests measure the algorithms."""
    from tridecomp import kernels
    from tridecomp.graph import enumerate_rooted_k4_links, enumerate_triangles

    g = complete_graph(5)
    enumerate_triangles(g)
    enumerate_rooted_k4_links(g)
    kernels.max_flow_int(2, 0, 1, [0], [1], [1])
    yield


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def k5():
    return complete_graph(5)


@pytest.fixture
def k5_minus_edge():
    return complete_minus_edge(5, (3, 4))


def random_bitmask_graph(n, seed):
    """Deterministic small random graph from a counter-based bit stream."""
    pairs = []
    state = (seed * 0x9E3779B97F4A7C15 + 0x123456789) & (1 << 64) - 1
    for u, v in combinations(range(n), 2):
        state ^= (state << 13) & (1 << 64) - 1
        state ^= state >> 7
        state ^= (state << 17) & (1 << 64) - 1
        if state & 1:
            pairs.append((u, v))
    return make_graph(pairs, n)
