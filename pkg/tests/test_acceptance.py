"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines.  Everything is exact (zero tolerance); the Kronecker enumeration is
truncated at 100 pairs for the sign-coherence sweep and at 40 pairs for the
full brick sweep.
"""

import random
import time

import pytest

from oracle import count_pairs_bruteforce
from tautilt.bricks import brick_for_slot, x_matrix
from tautilt.explorer import analyze, export_json, find_long_brick, graph_payload
from tautilt.gc import c_vectors, c_matrix, g_matrix, is_sign_coherent, verify_ar_formula
from tautilt.pairs import exchange_graph, mutate
from tautilt.reps import (
    direct_sum,
    g_vector,
    is_isomorphic,
    projective,
    simple,
    tau,
)

KRONECKER_SIGN_PAIRS = 100
KRONECKER_BRICK_PAIRS = 40
AR_SAMPLES = 100


@pytest.fixture(scope="module")
def graphs(a1, a2, a3, d4, loop, square, kronecker):
    """Shared enumerations: closed graphs for the finite corpus, the truncated
    Kronecker graphs for the sweeps."""
    closed = {
        "a1": (a1, exchange_graph(a1)),
        "a2": (a2, exchange_graph(a2)),
        "a3": (a3, exchange_graph(a3)),
        "d4": (d4, exchange_graph(d4)),
        "loop": (loop, exchange_graph(loop)),
        "square": (square, exchange_graph(square)),
    }
    kron_sign = exchange_graph(kronecker, max_pairs=KRONECKER_SIGN_PAIRS)
    kron_brick = exchange_graph(kronecker, max_pairs=KRONECKER_BRICK_PAIRS)
    return closed, (kronecker, kron_sign), (kronecker, kron_brick)


def test_criterion_1_enumeration_counts(a1, a2, a3, d4):
    expected = {"a1": 2, "a2": 5, "a3": 14, "d4": 50}
    bounds = {"a1": (1,), "a2": (1, 1), "a3": (1, 1, 1), "d4": (1, 1, 1, 2)}
    algebras = {"a1": a1, "a2": a2, "a3": a3, "d4": d4}
    for name, alg in algebras.items():
        t0 = time.time()
        graph = exchange_graph(alg)
        assert graph.closed, f"{name}: graph did not close"
        assert len(graph.nodes) == expected[name], (
            f"{name}: {len(graph.nodes)} pairs != {expected[name]}")
        oracle_count = count_pairs_bruteforce(alg, bounds[name])
        assert oracle_count == expected[name], (
            f"{name}: oracle count {oracle_count} != {expected[name]}")
        elapsed = time.time() - t0
        assert elapsed < 30, f"{name}: took {elapsed:.1f}s (>= 30s)"
    if a2 is not None and len(exchange_graph(a2).edges) != 5:
        raise AssertionError("A2 exchange graph is not a 5-cycle")
    print("ACCEPTANCE 1: PASS - enumeration counts A1=2 A2=5(5-cycle) A3=14 D4=50 "
          "match the brute-force oracle, each run < 30s")


def test_criterion_2_definition_identity(graphs):
    closed, (kron, kron_sign), _ = graphs
    checked = 0
    for name, (alg, graph) in closed.items():
        for pair in graph.nodes.values():
            g = g_matrix(pair)
            c = c_matrix(pair)
            n = pair.rank
            for i in range(n):
                for j in range(n):
                    assert sum(g[i][k] * c[j][k] for k in range(n)) == (1 if i == j else 0)
            checked += 1
    for pair in kron_sign.nodes.values():
        g = g_matrix(pair)
        c = c_matrix(pair)
        for i in range(2):
            for j in range(2):
                assert sum(g[i][k] * c[j][k] for k in range(2)) == (1 if i == j else 0)
        checked += 1
    print(f"ACCEPTANCE 2: PASS - C = (G^-1)^T entrywise over Z for {checked} pairs, "
          "zero tolerance")


def test_criterion_3_sign_coherence(graphs):
    closed, (kron, kron_sign), _ = graphs
    assert len(kron_sign.nodes) == KRONECKER_SIGN_PAIRS
    checked = 0
    violations = 0
    corpora = [graph for _, graph in closed.values()] + [kron_sign]
    for graph in corpora:
        for pair in graph.nodes.values():
            for col in c_vectors(pair):
                checked += 1
                if not is_sign_coherent(col) or not any(col):
                    violations += 1
    assert violations == 0
    print(f"ACCEPTANCE 3: PASS - {checked} c-vectors sign-coherent and nonzero "
          f"across the corpus (Kronecker truncated at {KRONECKER_SIGN_PAIRS} pairs)")


def test_criterion_4_theorem_brick_certificates(graphs):
    closed, _, (kron, kron_brick) = graphs
    certs = 0
    for name, (alg, graph) in closed.items():
        for pair in graph.nodes.values():
            pair_certs = [brick_for_slot(pair, s) for s in range(1, pair.rank + 1)]
            x_matrix(pair, pair_certs)  # asserts G^T D X diagonal and D X = C D
            certs += len(pair_certs)
    for pair in kron_brick.nodes.values():
        pair_certs = [brick_for_slot(pair, s) for s in range(1, pair.rank + 1)]
        x_matrix(pair, pair_certs)
        certs += len(pair_certs)
    print(f"ACCEPTANCE 4: PASS - {certs} brick certificates verified "
          "(brickness, perpendicularity, D_A[B] = m c, X-matrix identities), "
          "zero failures")


def test_criterion_5_ar_formula_samples(a1, a2, a3, d4, loop, square, kronecker):
    total = 0
    for alg, max_pairs in [(a1, 10000), (a2, 10000), (a3, 10000), (d4, 10000),
                           (loop, 10000), (square, 10000), (kronecker, 12)]:
        graph = exchange_graph(alg, max_pairs=max_pairs)
        pool = []
        seen = set()
        for key in sorted(graph.nodes):
            for m in graph.nodes[key].modules:
                if g_vector(m) not in seen:
                    seen.add(g_vector(m))
                    pool.append(m)
        rng = random.Random(12345)
        for _ in range(AR_SAMPLES):
            parts_m = [pool[rng.randrange(len(pool))] for _ in range(rng.randint(1, 3))]
            parts_n = [pool[rng.randrange(len(pool))] for _ in range(rng.randint(1, 3))]
            m = parts_m[0] if len(parts_m) == 1 else direct_sum(parts_m)[0]
            n = parts_n[0] if len(parts_n) == 1 else direct_sum(parts_n)[0]
            res = verify_ar_formula(m, n)
            assert res["equal"], (
                f"AR formula failed on dims {m.dims}, {n.dims}: "
                f"{res['lhs']} != {res['rhs']}")
            total += 1
    print(f"ACCEPTANCE 5: PASS - {total} seeded random AR-formula checks "
          "(<g^M,[N]> = hom(M,N) - hom(N,tauM)), zero failures")


def test_criterion_6_long_brick_experiment(kronecker, a3):
    t0 = time.time()
    res = find_long_brick(kronecker, 10, max_pairs=200)
    elapsed = time.time() - t0
    assert res.found
    assert res.certificate.composition_length >= 10
    assert elapsed < 60, f"Kronecker target-10 took {elapsed:.1f}s (>= 60s)"
    res3 = find_long_brick(a3, 4)
    assert not res3.found
    assert res3.proof["closed"] is True
    assert res3.proof["pair_count"] == 14
    print(f"ACCEPTANCE 6: PASS - Kronecker target 10 found a brick of length "
          f"{res.certificate.composition_length} in {elapsed:.1f}s; A3 target 4 "
          f"returned not-found-with-proof after closing 14 pairs")


def test_criterion_7_tau_spot_checks(a2, a3, d4, loop, square):
    assert is_isomorphic(tau(simple(a2, 1)), simple(a2, 2))
    assert is_isomorphic(tau(simple(loop, 1)), simple(loop, 1))
    for alg in (a2, a3, d4, loop, square):
        for i in range(1, alg.n + 1):
            assert tau(projective(alg, i)).is_zero()
    print("ACCEPTANCE 7: PASS - tau S(1)=S(2) on A2, tau S(1)=S(1) on the loop "
          "algebra, tau P(i)=0 everywhere")


def test_criterion_8_determinism(a3):
    p1 = export_json(graph_payload(exchange_graph(a3, workers=1)))
    p2 = export_json(graph_payload(exchange_graph(a3, workers=1)))
    p4 = export_json(graph_payload(exchange_graph(a3, workers=4)))
    assert p1 == p2 == p4
    b1 = export_json(analyze(a3, ar_samples=20, workers=1))
    b2 = export_json(analyze(a3, ar_samples=20, workers=1))
    b4 = export_json(analyze(a3, ar_samples=20, workers=4))
    assert b1 == b2 == b4
    print("ACCEPTANCE 8: PASS - pairs and bricks JSON byte-identical across "
          "repeated runs and 1 vs 4 worker threads on A3")


def test_criterion_9_mutation_self_consistency(graphs):
    closed, _, _ = graphs
    edges = 0
    for name, (alg, graph) in closed.items():
        assert graph.closed
        assert graph.is_n_regular(), f"{name}: closed graph is not n-regular"
        assert graph.is_connected(), f"{name}: closed graph is not connected"
        for (lo, hi), (slo, shi) in graph.edges.items():
            plo, phi = graph.nodes[lo], graph.nodes[hi]
            assert mutate(plo, slo).key == hi
            assert mutate(phi, shi).key == lo
            assert len(plo.slot_identities() & phi.slot_identities()) == plo.rank - 1
            edges += 1
    print(f"ACCEPTANCE 9: PASS - involutivity and (n-1)-slot sharing on {edges} "
          "edges; all closed graphs n-regular and connected")
