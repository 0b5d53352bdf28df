"""Independent validation of claimed fractional triangle decompositions.

The verifier recomputes everything from the host graph and the raw entries:
it never trusts decomposer state. Duplicate triangle entries are summed
(weights are linear); entries that are not triangles of the host graph are
counted and their weight is excluded from the edge sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .decompose import FLOAT_EDGE_TOLERANCE, FLOAT_WEIGHT_FLOOR, Decomposition


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    worst_edge_deviation: object
    negative_weights: int
    invalid_triangles: int

    def __str__(self):
        status = "PASS" if self.ok else "FAIL"
        return (
            f"{status}: worst edge deviation {self.worst_edge_deviation}, "
            f"{self.negative_weights} negative weights, "
            f"{self.invalid_triangles} invalid triangles"
        )


def verify(g, decomposition, mode="exact"):
    """Check a decomposition against its host graph.

    Passes iff every entry is a triangle of g, every weight is non-negative,
    and the incident weights of every edge of g sum to exactly 1 (within
    1e-9, with a -1e-12 weight floor, in float mode).
    """
    entries = (
        decomposition.entries
        if isinstance(decomposition, Decomposition)
        else list(decomposition)
    )
    exact = mode == "exact"
    zero = Fraction(0) if exact else 0.0
    one = Fraction(1) if exact else 1.0
    weight_floor = zero if exact else FLOAT_WEIGHT_FLOOR

    invalid = 0
    negatives = 0
    sums = [zero] * g.m
    for (a, b, c), w in entries:
        if w < weight_floor:
            negatives += 1
        if not (0 <= a < b < c < g.n) or not (
            g.has_edge(a, b) and g.has_edge(a, c) and g.has_edge(b, c)
        ):
            invalid += 1
            continue
        for u, v in ((a, b), (a, c), (b, c)):
            sums[g.eid[u, v]] += w

    worst = zero
    for value in sums:
        deviation = abs(value - one)
        if deviation > worst:
            worst = deviation

    sums_ok = worst == 0 if exact else worst <= FLOAT_EDGE_TOLERANCE
    ok = invalid == 0 and negatives == 0 and sums_ok
    return VerifyReport(
        ok=ok,
        worst_edge_deviation=worst,
        negative_weights=negatives,
        invalid_triangles=invalid,
    )
