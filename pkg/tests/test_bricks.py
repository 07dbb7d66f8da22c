
from tautilt.bricks import (
    brick_for_slot,
    edge_brick_consistent,
    trace_quotient,
    x_matrix,
)
from tautilt.endo import is_brick
from tautilt.pairs import exchange_graph, initial_pair, mutate
from tautilt.reps import (
    d_matrix,
    direct_sum,
    is_isomorphic,
    projective,
    simple,
)


def test_simples_are_bricks(a2, a3, loop):
    for alg in (a2, a3, loop):
        for i in range(1, alg.n + 1):
            assert is_brick(simple(alg, i))


def test_p1_is_brick(a2):
    assert is_brick(projective(a2, 1))


def test_sum_is_not_brick(a2):
    s1 = simple(a2, 1)
    total, _, _ = direct_sum([s1, s1])
    assert not is_brick(total)


def test_loop_projective_not_brick(loop):
    # End P(1) = Q[x]/(x^2) has a nonzero radical
    assert not is_brick(projective(loop, 1))


def test_trace_quotient_initial(a2):
    t = initial_pair(a2)
    b2 = trace_quotient(t, t.modules[1])  # Z = P(2): nothing maps in
    assert is_isomorphic(b2, simple(a2, 2))
    b1 = trace_quotient(t, t.modules[0])  # Z = P(1): socle killed
    assert is_isomorphic(b1, simple(a2, 1))


def test_trace_quotient_kills_radical_endos(loop):
    t = initial_pair(loop)
    b = trace_quotient(t, t.modules[0])
    assert is_isomorphic(b, simple(loop, 1))


def test_brick_for_slot_initial(a2):
    t = initial_pair(a2)
    cert = brick_for_slot(t, 2)
    assert is_isomorphic(cert.brick, simple(a2, 2))
    assert cert.multiplier == 1
    assert cert.c_vector == (0, 1)
    cert1 = brick_for_slot(t, 1)
    assert is_isomorphic(cert1.brick, simple(a2, 1))
    assert cert1.multiplier == 1


def test_brick_for_slot_empty_pair(a2):
    t = mutate(mutate(initial_pair(a2), 1), 1)  # (0, A)
    assert t.proj_slots == (1, 2)
    for s in (1, 2):
        cert = brick_for_slot(t, s)
        assert is_isomorphic(cert.brick, simple(a2, s))
        assert cert.multiplier == -1
        assert cert.c_vector == tuple(-1 if v == s else 0 for v in (1, 2))


def test_brick_for_slot_negative_c(a2):
    t = mutate(initial_pair(a2), 2)  # {P1, S1}; slot 2 = S1 with c = (0,-1)
    cert = brick_for_slot(t, 2)
    assert is_isomorphic(cert.brick, simple(a2, 2))
    assert cert.multiplier == -1
    assert cert.c_vector == (0, -1)


def test_brick_certificate_identity(a2, a3):
    for alg in (a2, a3):
        delta = d_matrix(alg)
        g = exchange_graph(alg)
        for pair in g.nodes.values():
            for s in range(1, alg.n + 1):
                cert = brick_for_slot(pair, s)
                da_b = tuple(d * x for d, x in zip(delta, cert.dim_vector))
                mc = tuple(cert.multiplier * c for c in cert.c_vector)
                assert da_b == mc
                assert cert.multiplier != 0
                # sign alignment: m > 0 iff the c-vector is nonnegative
                assert (cert.multiplier > 0) == all(x >= 0 for x in cert.c_vector)


def test_x_matrix_initial(a2):
    t = initial_pair(a2)
    x, diag = x_matrix(t)
    assert x == ((1, 0), (0, 1))
    assert diag == (1, 1)  # equals D_A here


def test_x_matrix_empty_pair(a2):
    t = mutate(mutate(initial_pair(a2), 1), 1)
    x, diag = x_matrix(t)
    assert x == ((1, 0), (0, 1))
    assert diag == (-1, -1)  # equals -D_A


def test_x_matrix_p1_s1(a2):
    t = mutate(initial_pair(a2), 2)  # {P1, S1}
    x, diag = x_matrix(t)
    assert x == ((1, 0), (1, 1))
    assert diag == (1, -1)


def test_edge_bricks_consistent(a2):
    g = exchange_graph(a2)
    for (lo, hi), (slo, shi) in g.edges.items():
        assert edge_brick_consistent(g.nodes[lo], slo, g.nodes[hi], shi)


def test_max_brick_length_a2(a2):
    g = exchange_graph(a2)
    lengths = []
    for pair in g.nodes.values():
        for s in (1, 2):
            lengths.append(brick_for_slot(pair, s).composition_length)
    assert max(lengths) == 2  # the brick P(1)


def test_brick_evidence_fields(a3):
    cert = brick_for_slot(initial_pair(a3), 1)
    assert cert.evidence["end_dim"] == 1
    assert cert.evidence["perp_checks"] == (True, True, True)
    assert cert.evidence["relation_check"] is True
