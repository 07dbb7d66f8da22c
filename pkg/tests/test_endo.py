from fractions import Fraction

from tautilt.endo import EndoAlgebra, split_indecomposables
from tautilt.reps import direct_sum, hom_dim, is_isomorphic, projective, simple


def test_endo_dim_of_projectives(a2, loop):
    assert EndoAlgebra(projective(a2, 1)).dim == 1
    end = EndoAlgebra(projective(loop, 1))
    assert end.dim == 2
    assert end.radical_dim == 1
    assert end.quotient_dim == 1


def test_endo_matrix_algebra(a2):
    s1 = simple(a2, 1)
    total, _, _ = direct_sum([s1, s1])
    end = EndoAlgebra(total)
    assert end.dim == 4
    assert end.radical_dim == 0
    assert not end.is_commutative()
    e = end.find_idempotent()
    assert e is not None
    assert end.multiply(e, e) == e
    assert e != end.identity and any(e)


def test_min_poly_of_identity(a2):
    end = EndoAlgebra(projective(a2, 1))
    mp = end.min_poly(end.identity)
    assert mp.degree() == 1


def test_min_poly_nilpotent(loop):
    end = EndoAlgebra(projective(loop, 1))
    # the radical element squares to zero
    (rad,) = end.radical()
    mp = end.min_poly(rad)
    assert mp.degree() == 2
    assert end.multiply(rad, rad) == tuple(Fraction(0) for _ in range(2))


def test_split_mixed_sum(a2):
    total, _, _ = direct_sum([projective(a2, 1), simple(a2, 2), simple(a2, 2)])
    parts = split_indecomposables(total)
    assert len(parts) == 3
    dims = sorted(p.dims for p in parts)
    assert dims == [(0, 1), (0, 1), (1, 1)]


def test_split_respects_local_nonsplit_end(loop):
    # End P(1) = Q[x]/(x^2) is local with a radical: no splitting
    parts = split_indecomposables(projective(loop, 1))
    assert len(parts) == 1


def test_split_preserves_iso_class(a3):
    mods = [simple(a3, 1), projective(a3, 2), simple(a3, 1)]
    total, _, _ = direct_sum(mods)
    parts = split_indecomposables(total)
    assert len(parts) == 3
    assert sum(1 for p in parts if is_isomorphic(p, simple(a3, 1))) == 2


def test_idempotent_splits_big_power(a2):
    s = simple(a2, 1)
    total, _, _ = direct_sum([s, s, s])
    parts = split_indecomposables(total)
    assert len(parts) == 3
    assert all(hom_dim(p, p) == 1 for p in parts)
