"""Endomorphism-algebra analysis: radicals, idempotents, locality, brickness.

The radical is computed with the trace form (valid in characteristic zero):
J(E) = {x : trace(L_{xy}) = 0 for all y}.  Idempotents are found by factoring
minimal polynomials of basis elements and bounded random combinations over Q;
a coprime factor split yields an idempotent in the semisimple quotient which
is lifted J-adically by e -> 3e^2 - 2e^3.
"""

from __future__ import annotations

import random
from fractions import Fraction

import sympy

from .errors import BrickTestInconclusive, DecompositionInconclusive
from .linalg import RatMat, sparse_nullspace, sparse_rank, sparse_rref
from .reps import ModuleMap, Representation, hom_dim, hom_space, identity_map, image

RANDOM_TRIALS = 32
_X = sympy.Symbol("x")


def _vectorize(f: ModuleMap):
    out = []
    for b in f.blocks:
        for row in b.data:
            out.extend(row)
    return tuple(out)


class EndoAlgebra:
    """End(M) with multiplication table in a fixed Hom basis."""

    def __init__(self, m: Representation):
        self.module = m
        self.basis = hom_space(m, m)
        self.dim = len(self.basis)
        vecs = [_vectorize(f) for f in self.basis]
        ncoords = len(vecs[0]) if vecs else 0
        rows = [{j: v for j, v in enumerate(vec) if v} for vec in vecs]
        rref = sparse_rref(rows, ncoords)
        self._pivot_cols = [c for c, _ in rref]
        bp = RatMat(self.dim, self.dim,
                    [[vecs[k][c] for c in self._pivot_cols] for k in range(self.dim)])
        from .linalg import inverse
        self._bp_inv = inverse(bp)
        if self.dim and self._bp_inv is None:
            raise ValueError("hom basis is not linearly independent")
        self.identity = self.coords(identity_map(m))
        self._structure = None
        self._radical = None

    def coords(self, f: ModuleMap):
        vec = _vectorize(f)
        row = RatMat(1, self.dim, [[vec[c] for c in self._pivot_cols]])
        return tuple((row @ self._bp_inv).data[0])

    def as_map(self, coords) -> ModuleMap:
        f = None
        for c, b in zip(coords, self.basis):
            if c:
                f = b.scale(c) if f is None else f + b.scale(c)
        if f is None:
            m = self.module
            return ModuleMap(m, m, [RatMat.zeros(d, d) for d in m.dims], check=False)
        return f

    def structure(self):
        """Structure constants: structure()[i][j] = coords(b_i o b_j)."""
        if self._structure is None:
            comp = []
            for bi in self.basis:
                rowi = []
                for bj in self.basis:
                    rowi.append(self.coords(bi.compose(bj)))
                comp.append(rowi)
            self._structure = comp
        return self._structure

    def multiply(self, x, y):
        st = self.structure()
        out = [Fraction(0)] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, v in enumerate(st[i][j]):
                    if v:
                        out[k] += c * v
        return tuple(out)

    def radical(self):
        """Coordinate basis of J(E) from the trace form."""
        if self._radical is None:
            st = self.structure()
            # trace of left multiplication by each basis element
            ltr = []
            for i in range(self.dim):
                ltr.append(sum(st[i][k][k] for k in range(self.dim)))
            gram = []
            for i in range(self.dim):
                row = {}
                for j in range(self.dim):
                    v = sum(st[i][j][k] * ltr[k] for k in range(self.dim) if st[i][j][k])
                    if v:
                        row[j] = v
                gram.append(row)
            self._radical = tuple(tuple(vec.get(j, Fraction(0)) for j in range(self.dim))
                                  for vec in sparse_nullspace(gram, self.dim))
        return self._radical

    @property
    def radical_dim(self) -> int:
        return len(self.radical())

    @property
    def quotient_dim(self) -> int:
        return self.dim - self.radical_dim

    def is_commutative(self) -> bool:
        st = self.structure()
        return all(st[i][j] == st[j][i] for i in range(self.dim) for j in range(self.dim))

    def min_poly(self, x):
        """Minimal polynomial of x acting in E, as a sympy Poly over QQ."""
        powers = [tuple(self.identity)]
        rows = [{j: v for j, v in enumerate(powers[0]) if v}]
        cur = powers[0]
        while True:
            if sparse_rank(rows, self.dim) < len(rows):
                break
            cur = self.multiply(cur, x)
            powers.append(cur)
            rows.append({j: v for j, v in enumerate(cur) if v})
        # the last power is a combination of the previous ones:
        # solve sum c_i x^i = x^deg exactly
        deg = len(powers) - 1
        sys_rows = []
        for j in range(self.dim):
            row = {i: powers[i][j] for i in range(deg) if powers[i][j]}
            row[deg] = powers[deg][j]
            sys_rows.append(row)
        sol = {}
        for c, row in sparse_rref(sys_rows, deg + 1, pivot_limit=deg):
            if c >= deg:
                raise ValueError("minimal polynomial solve failed")
            sol[c] = row.get(deg, Fraction(0))
        coeffs = [Fraction(1)]
        for i in range(deg - 1, -1, -1):
            coeffs.append(-sol.get(i, Fraction(0)))
        return sympy.Poly(coeffs, _X, domain="QQ")

    def poly_eval(self, poly, x):
        out = tuple(Fraction(0) for _ in range(self.dim))
        for coef in poly.all_coeffs():
            out = self.multiply(out, x)
            c = Fraction(coef.p, coef.q)
            if c:
                out = tuple(o + c * e for o, e in zip(out, self.identity))
        return out

    def _element_pool(self, rng):
        for b in range(self.dim):
            vec = [Fraction(0)] * self.dim
            vec[b] = Fraction(1)
            yield tuple(vec)
        for trial in range(RANDOM_TRIALS):
            bound = 1 + trial // 8
            yield tuple(Fraction(rng.randint(-bound, bound)) for _ in range(self.dim))

    def find_idempotent(self, seed: int = 0xD1CE):
        """A nontrivial exact idempotent of E, or None when the budget runs out.

        A coprime factorization of an exact minimal polynomial gives an exact
        idempotent directly; factorizations found only modulo the radical are
        lifted by the Newton iteration e -> 3e^2 - 2e^3.
        """
        rng = random.Random(seed)
        for x in self._element_pool(rng):
            e = self._idempotent_from(x)
            if e is not None:
                return e
        return None

    def _idempotent_from(self, x):
        mp = self.min_poly(x)
        factors = sympy.factor_list(mp)[1]
        if len(factors) < 2:
            return None
        f = sympy.Poly(factors[0][0] ** factors[0][1], _X, domain="QQ")
        g = mp.div(f)[0]
        s, _, one = sympy.gcdex(f.as_expr(), g.as_expr(), _X)
        if sympy.simplify(one) != 1:
            return None
        e_poly = sympy.Poly(sympy.expand(s * f.as_expr()), _X, domain="QQ")
        e = self.poly_eval(e_poly, x)
        e = self._lift_idempotent(e)
        if e is None:
            return None
        if not any(e) or e == self.identity:
            return None
        return e

    def _lift_idempotent(self, e):
        for _ in range(self.dim + 4):
            e2 = self.multiply(e, e)
            if e2 == e:
                return e
            # 3e^2 - 2e^3, converges radical-adically
            e3 = self.multiply(e2, e)
            e = tuple(3 * a - 2 * b for a, b in zip(e2, e3))
        return None

    def has_field_certificate(self, seed: int = 0xF1E1D) -> bool | None:
        """For commutative semisimple E: True once a primitive element has an
        irreducible minimal polynomial, False once any minimal polynomial
        splits, None when the budget is exhausted."""
        rng = random.Random(seed)
        for x in self._element_pool(rng):
            mp = self.min_poly(x)
            factors = sympy.factor_list(mp)[1]
            if len(factors) >= 2 or any(e > 1 for _, e in factors):
                return False
            if mp.degree() == self.dim:
                return True
        return None

    def is_invertible(self, coords) -> bool:
        f = self.as_map(coords)
        return _invertible(f)


def _invertible(f: ModuleMap) -> bool:
    from .linalg import rank

    for b in f.blocks:
        if b.rows != b.cols:
            return False
        if b.rows and rank(b) != b.rows:
            return False
    return True


def split_indecomposables(m: Representation):
    """Split M into indecomposable summands (with repetitions, unordered)."""
    if m.is_zero():
        return []
    if hom_dim(m, m) == 1:
        return [m]
    end = EndoAlgebra(m)
    if end.dim == 1 or end.quotient_dim == 1:
        return [m]
    e = end.find_idempotent()
    if e is None:
        if end.is_commutative() and end.radical_dim == 0:
            cert = end.has_field_certificate()
            if cert:
                return [m]
        raise DecompositionInconclusive(
            f"could not certify locality of End (dim {end.dim}, "
            f"dim mod radical {end.quotient_dim})")
    one_minus = tuple(i - v for i, v in zip(end.identity, e))
    part1, _ = image(end.as_map(e))
    part2, _ = image(end.as_map(one_minus))
    return split_indecomposables(part1) + split_indecomposables(part2)


def is_brick(m: Representation) -> bool:
    """True iff End(M) is a division ring.

    Fast path: one-dimensional End.  General path: nonzero radical or a
    nonzero singular element certifies failure; a commutative semisimple End
    with an irreducible primitive minimal polynomial certifies success.
    """
    if m.is_zero():
        raise ValueError("the zero module is not a brick candidate")
    if hom_dim(m, m) == 1:
        return True
    end = EndoAlgebra(m)
    if end.radical_dim > 0:
        return False
    if end.is_commutative():
        cert = end.has_field_certificate()
        if cert is None:
            raise BrickTestInconclusive("no primitive element found within budget")
        return cert
    if end.find_idempotent() is not None:
        return False
    rng = random.Random(0xB41C)
    for x in end._element_pool(rng):
        if any(x) and not end.is_invertible(x):
            return False
    raise BrickTestInconclusive(
        "semisimple noncommutative End with no certificate within budget")
