"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with:  pytest tests/test_acceptance.py -v -s

The corpus fixture below realizes the 200-instance grid (fractions 3/4, 4/5,
9/10; n in 8..14; seeds 0..9, first 200 in that order) with instrumented
pipeline runs, and is shared by the oracle-agreement, conservation, and
peeling criteria.
"""

import csv
import math
import time
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import pytest

from tridecomp.cli import main
from tridecomp.decompose import (
    CutCertificate,
    Decomposition,
    build_network,
    decompose,
    initial_weight,
    solve,
)
from tridecomp.errors import EdgeInNoTriangleError
from tridecomp.graph import (
    degree_stats,
    enumerate_rooted_k4_links,
    enumerate_triangles,
    triangles_per_edge,
)
from tridecomp.instances import GenSpec, generate, write_edge_list
from tridecomp.lp import lp_feasible
from tridecomp.maxflow import max_flow, verify_flow
from tridecomp.peeling import peel_heavy_triangles
from tridecomp.verify import verify

from conftest import (
    brute_min_cut,
    complete_graph,
    complete_minus_edge,
    complete_minus_hamilton,
)

CORPUS_FRACTIONS = (Fraction(3, 4), Fraction(4, 5), Fraction(9, 10))
CORPUS_SIZE = 200


@dataclass
class Trial:
    spec: GenSpec
    graph: object
    peel: object
    outcome: object          # Decomposition, CutCertificate, or None on error
    instrument_error: str | None
    flow_ok: bool
    merged_verifies: bool | None
    lp_feasible: bool
    lp_witness_verifies: bool | None


def _run_trial(spec):
    g = generate(spec)
    peel = peel_heavy_triangles(g)
    outcome = None
    instrument_error = None
    try:
        outcome = decompose(g, instrument=True)
    except EdgeInNoTriangleError:
        outcome = None
    except AssertionError as exc:
        instrument_error = str(exc)
    flow_ok = isinstance(outcome, Decomposition)
    merged = verify(g, outcome).ok if flow_ok else None
    verdict = lp_feasible(g)
    lp_ok = verdict.feasible
    lp_verifies = verify(g, verdict.decomposition).ok if lp_ok else None
    return Trial(spec, g, peel, outcome, instrument_error, flow_ok, merged, lp_ok, lp_verifies)


@pytest.fixture(scope="module")
def corpus():
    specs = [
        GenSpec("random-min-degree", n=n, fraction=frac, seed=seed)
        for frac in CORPUS_FRACTIONS
        for n in range(8, 15)
        for seed in range(10)
    ][:CORPUS_SIZE]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return [_run_trial(spec) for spec in specs]


def test_c1_complete_graph_exactness():
    for n in (4, 5, 7, 13, 31):
        g = complete_graph(n)
        stats = degree_stats(g)
        network = build_network(g, initial_weight(g), stats.deficiency)
        assert network.required_flow == 0
        arcnet, _ = network.to_arc_network()
        flow = max_flow(arcnet)
        assert flow.value == 0
        assert all(f == 0 for f in flow.flows_scaled)
        start = time.perf_counter()
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            d = decompose(g, instrument=True)
        elapsed = time.perf_counter() - start
        assert elapsed < 5.0, f"K{n} took {elapsed:.2f}s"
        assert isinstance(d, Decomposition)
        expected = Fraction(1, n - 2)
        assert all(w == expected for _, w in d.entries)
        assert verify(g, d).ok
    print("ACCEPTANCE PASS: complete-graph exactness (n in {4,5,7,13,31})")


def test_c2_flow_path_exercise():
    budgets = {20: 60.0, 30: 60.0, 50: 60.0}
    for n in (20, 30, 50):
        g = complete_minus_hamilton(n)
        stats = degree_stats(g)
        network = build_network(g, initial_weight(g), stats.deficiency)
        assert network.required_flow > 0
        start = time.perf_counter()
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            d = decompose(g, instrument=True)
        elapsed = time.perf_counter() - start
        assert elapsed < budgets[n], f"K{n}-Hamilton took {elapsed:.2f}s"
        assert isinstance(d, Decomposition)
        assert verify(g, d).ok
    print("ACCEPTANCE PASS: flow-path exercise (K_n minus Hamilton, n in {20,30,50})")


def test_c3_method_incompleteness_witness(tmp_path):
    g = complete_minus_edge(5, (3, 4))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        outcome = solve(g, degree_stats(g).deficiency)
    assert isinstance(outcome, CutCertificate)
    assert outcome.required_flow == Fraction(6, 7)
    assert outcome.cut_capacity < Fraction(6, 7)
    verdict = lp_feasible(g)
    assert verdict.feasible
    assert verify(g, verdict.decomposition).ok
    graph_path = tmp_path / "k5e.el"
    graph_path.write_text(write_edge_list(g))
    out_path = tmp_path / "out.txt"
    assert main(["decompose", "--input", str(graph_path), "--out", str(out_path)]) == 2
    assert (
        main(
            ["decompose", "--input", str(graph_path), "--out", str(out_path),
             "--fallback-lp"]
        )
        == 0
    )
    print("ACCEPTANCE PASS: method incompleteness witness (K5 minus an edge)")


def test_c4_oracle_agreement(corpus):
    assert len(corpus) == CORPUS_SIZE
    disagreements = 0
    for trial in corpus:
        if trial.flow_ok:
            if not (trial.lp_feasible and trial.merged_verifies and trial.lp_witness_verifies):
                disagreements += 1
    assert disagreements == 0
    successes = sum(t.flow_ok for t in corpus)
    print(
        f"ACCEPTANCE PASS: oracle agreement over {len(corpus)} instances "
        f"({successes} flow successes, 0 disagreements)"
    )


def test_c5_counting_invariants():
    violations = 0
    for seed in range(50):
        spec = GenSpec("random-min-degree", n=40, fraction=Fraction(9, 10), seed=seed)
        g = generate(spec)
        stats = degree_stats(g)
        assert stats.deficiency < Fraction(1, 2)
        triangles = enumerate_triangles(g)
        te = triangles_per_edge(g, triangles)
        if int(te.sum()) != 3 * triangles.shape[0]:
            violations += 1
        lower = g.n - 2 * stats.deficiency * g.n
        if any(Fraction(int(x)) < lower for x in te):
            violations += 1
        links = enumerate_rooted_k4_links(g)
        per_edge_k4 = np.bincount(np.concatenate([links.e1, links.e2]), minlength=g.m)
        dn = stats.deficiency * g.n
        for e in range(g.m):
            bound = Fraction(int(te[e])) * (Fraction(int(te[e])) - dn) / 2
            if Fraction(int(per_edge_k4[e])) < bound:
                violations += 1
                break
        quads = np.stack(
            [
                g.edge_u[links.e1],
                g.edge_v[links.e1],
                g.edge_u[links.e2],
                g.edge_v[links.e2],
            ],
            axis=1,
        )
        quads.sort(axis=1)
        _, counts = np.unique(quads, axis=0, return_counts=True)
        if not (counts == 3).all():
            violations += 1
    assert violations == 0
    print("ACCEPTANCE PASS: counting invariants on 50 seeded n=40 instances")


def test_c6_conservation_and_saturation(corpus):
    # decompose(instrument=True) asserts the total equals m/3 after transfers
    # and that every terminal arc is saturated whenever the flow meets M; a
    # violation surfaces as a recorded instrumentation error.
    errors = [t.instrument_error for t in corpus if t.instrument_error]
    assert errors == []
    for n in (4, 5, 7, 13, 31):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            decompose(complete_graph(n), instrument=True)
    for n in (20, 30, 50):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            decompose(complete_minus_hamilton(n), instrument=True)
    print("ACCEPTANCE PASS: conservation and terminal saturation, zero violations")


def test_c7_max_flow_against_enumeration():
    # 1000 random networks, <= 10 nodes, integer capacities <= 9.
    from tridecomp.maxflow import ArcNetwork
    from test_maxflow import random_network_cases

    checked = 0
    for num_nodes, arcs, source, sink in random_network_cases(1000, seed=0xACCE97):
        network = ArcNetwork.from_triples(num_nodes, arcs, source, sink)
        res = max_flow(network)
        expected = brute_min_cut(
            num_nodes,
            [a[0] for a in arcs],
            [a[1] for a in arcs],
            [a[2] for a in arcs],
            source,
            sink,
        )
        assert res.value == expected
        assert verify_flow(network, res)
        checked += 1
    assert checked == 1000
    print("ACCEPTANCE PASS: max-flow equals exhaustive min cut on 1000 networks")


def test_c8_empirical_threshold_scan(tmp_path, capsys):
    out_path = tmp_path / "scan.csv"
    code = main(
        [
            "scan",
            "--n",
            "40",
            "--fractions",
            "0.80,0.85,0.90,0.95",
            "--samples",
            "10",
            "--seed",
            "0",
            "--out",
            str(out_path),
        ]
    )
    captured = capsys.readouterr()
    assert code == 0
    with open(out_path) as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 40
    # Every successful trial was verified inside the scan itself; re-derive
    # the success rates here for the report (shape is reported, not asserted).
    rates = {}
    for row in rows:
        rates.setdefault(row["fraction"], []).append(int(row["flow_ok"]))
    summary = {frac: sum(v) / len(v) for frac, v in rates.items()}
    assert "flow successes" in captured.err
    print(f"ACCEPTANCE PASS: threshold scan completed; success rates {summary}")


def test_c9_peeling_postcondition(corpus):
    for trial in corpus:
        g = trial.graph
        peel = trial.peel
        threshold = (1 - peel.deficiency) * g.n + 2
        min_eligible = math.ceil(threshold)
        degrees = peel.residual.degrees
        for a, b, c in enumerate_triangles(peel.residual).tolist():
            assert min(degrees[a], degrees[b], degrees[c]) < min_eligible
        if trial.flow_ok:
            assert trial.merged_verifies
    print("ACCEPTANCE PASS: peeling postcondition and weight-1 merge-back")
