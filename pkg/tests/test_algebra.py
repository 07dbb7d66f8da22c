import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tautilt import (
    InvalidRelation,
    NotAdmissible,
    ParseError,
    build_algebra,
    parse_algebra,
)
from tautilt.reps import projective


def test_a2_basis(a2):
    assert a2.dim == 3
    assert a2.nilpotency_bound == 2
    # e1, e2, and the arrow
    lengths = sorted(len(p[1]) for p in a2.basis)
    assert lengths == [0, 0, 1]


def test_loop_basis(loop):
    assert loop.dim == 2
    assert loop.nilpotency_bound == 2


def test_free_loop_not_admissible():
    with pytest.raises(NotAdmissible):
        build_algebra(["1"], [("x", 1, 1)], [], max_bound=16)


def test_square_dim(square):
    # 4 trivial paths, 4 arrows, and one surviving length-2 path class
    assert square.dim == 9


def test_dim_equals_sum_of_projectives(a2, a3, d4, loop, square):
    for alg in (a2, a3, d4, loop, square):
        total = sum(projective(alg, i).total_dim for i in range(1, alg.n + 1))
        assert total == alg.dim


def test_basis_contains_trivials_and_arrows(square):
    for v in range(1, square.n + 1):
        assert (v, ()) in square.basis_index
    for a in range(len(square.quiver.arrows)):
        assert square.arrow_idx[a] in range(square.dim)


def test_multiplication_table_associative(a2, a3, loop, square):
    for alg in (a2, a3, loop, square):
        dim = alg.dim
        for i in range(dim):
            for j in range(dim):
                for k in range(dim):
                    ij = alg.multiply({i: Fraction(1)}, {j: Fraction(1)})
                    jk = alg.multiply({j: Fraction(1)}, {k: Fraction(1)})
                    left = alg.multiply(ij, {k: Fraction(1)})
                    right = alg.multiply({i: Fraction(1)}, jk)
                    assert left == right


def test_relation_products_vanish(loop, square):
    for alg in (loop, square):
        for rel in alg.relations:
            for u in alg.basis:
                for v in alg.basis:
                    acc = {}
                    for coef, arrows in rel.terms:
                        if alg.basis_target[alg.basis_index[u]] != alg.quiver.arrows[arrows[0]].source:
                            continue
                        if alg.quiver.arrows[arrows[-1]].target != v[0]:
                            continue
                        nf = alg.normal_form(u[0], u[1] + arrows + v[1])
                        for b, c in nf.items():
                            acc[b] = acc.get(b, Fraction(0)) + coef * c
                    assert all(c == 0 for c in acc.values())


def test_normal_form_idempotent_on_basis(square, loop):
    for alg in (square, loop):
        for idx, path in enumerate(alg.basis):
            nf = alg.normal_form(path[0], path[1])
            assert nf == {idx: Fraction(1)}


@given(st.integers(min_value=0, max_value=200), st.integers(min_value=1, max_value=6))
@settings(max_examples=40, deadline=None)
def test_normal_form_idempotent_random_paths(seed, length):
    import random

    alg = build_algebra(
        ["1", "2", "3", "4"],
        [("a", 1, 2), ("b", 1, 3), ("c", 2, 4), ("d", 3, 4)],
        [[(1, ("a", "c")), (-1, ("b", "d"))]],
    )
    rng = random.Random(seed)
    start = rng.randint(1, 4)
    arrows = []
    v = start
    for _ in range(length):
        outs = alg.quiver.arrows_from(v)
        if not outs:
            break
        a = rng.choice(outs)
        arrows.append(a)
        v = alg.quiver.arrows[a].target
    nf = alg.normal_form(start, tuple(arrows))
    # re-reducing each normal-form term reproduces the same combination
    again = {}
    for idx, coef in nf.items():
        p = alg.basis[idx]
        for idx2, c2 in alg.normal_form(p[0], p[1]).items():
            again[idx2] = again.get(idx2, Fraction(0)) + coef * c2
    assert {k: v for k, v in again.items() if v} == nf


def test_mixed_degree_relation_reductions():
    # x^2 = x^3 alone is not admissible (x^2 never dies) ...
    with pytest.raises(NotAdmissible):
        build_algebra(["1"], [("x", 1, 1)],
                      [[(1, ("x", "x")), (-1, ("x", "x", "x"))]], max_bound=12)
    # ... but together with x^4 = 0 it collapses to dim 2
    alg = build_algebra(["1"], [("x", 1, 1)],
                        [[(1, ("x", "x")), (-1, ("x", "x", "x"))],
                         [(1, ("x", "x", "x", "x"))]])
    assert alg.dim == 2


def test_opposite_roundtrip(a3, square):
    for alg in (a3, square):
        op = alg.opposite()
        assert op.dim == alg.dim
        assert op.opposite() is alg
        for arr, oarr in zip(alg.quiver.arrows, op.quiver.arrows):
            assert (arr.source, arr.target) == (oarr.target, oarr.source)


def test_parse_rejects_unknown_keys():
    doc = {"vertices": ["1"], "arrows": [], "relations": [], "extra": 1}
    with pytest.raises(ParseError):
        parse_algebra(json.dumps(doc))


def test_parse_rejects_bad_arrow():
    doc = {"vertices": ["1"], "arrows": [{"name": "a", "from": "1", "to": "9"}]}
    with pytest.raises(ParseError):
        parse_algebra(json.dumps(doc))


def test_parse_rejects_malformed_json():
    with pytest.raises(ParseError):
        parse_algebra("{not json")


def test_parse_rational_coefficients():
    doc = {
        "vertices": ["1"],
        "arrows": [{"name": "x", "from": "1", "to": "1"}],
        "relations": [{"terms": [{"coef": "-1/2", "path": ["x", "x"]}]}],
    }
    alg = parse_algebra(json.dumps(doc))
    assert alg.dim == 2


def test_relation_validation():
    with pytest.raises(InvalidRelation):
        build_algebra(["1", "2"], [("a", 1, 2)], [[(1, ("a",))]])  # length < 2
    with pytest.raises(InvalidRelation):
        # cancelling terms leave no nonzero coefficient
        build_algebra(["1"], [("x", 1, 1)],
                      [[(1, ("x", "x")), (-1, ("x", "x"))]])
    with pytest.raises(InvalidRelation):
        # non-parallel terms
        build_algebra(["1", "2", "3"], [("a", 1, 2), ("b", 2, 3)],
                      [[(1, ("a", "b")), (1, ("b",))]])


def test_vertex_order_fixes_indices():
    doc = {"vertices": ["u", "w"], "arrows": [{"name": "a", "from": "w", "to": "u"}]}
    alg = parse_algebra(json.dumps(doc))
    assert alg.quiver.arrows[0].source == 2
    assert alg.quiver.arrows[0].target == 1
