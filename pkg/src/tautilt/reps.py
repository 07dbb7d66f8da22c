"""Finite-dimensional right modules over an algebra presentation.

A representation assigns to each vertex a rational vector space and to each
arrow a matrix from the source space to the target space.  Everything here
is exact and immutable; Hom spaces are solved from the intertwining linear
system, and the Auslander-Reiten translate is the kernel of the Nakayama
functor applied to the minimal projective presentation.
"""

from __future__ import annotations

import itertools
import random
import threading
from fractions import Fraction

from .algebra import AlgebraPresentation
from .errors import NotProjective
from .linalg import (
    RatMat,
    column_space,
    nullspace,
    solve,
    sparse_nullspace,
    sparse_rank,
    sparse_rref,
)

_token_counter = itertools.count(1)
_cache_lock = threading.Lock()


class Representation:
    """Immutable module: one vector space per vertex, one matrix per arrow."""

    def __init__(self, algebra: AlgebraPresentation, dims, actions, *, check=True,
                 basis_labels=None, proj_vertices=None, inj_vertices=None):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        self.actions = tuple(actions)
        self.basis_labels = basis_labels
        self.proj_vertices = proj_vertices
        self.inj_vertices = inj_vertices
        self.token = next(_token_counter)
        if len(self.dims) != algebra.n:
            raise ValueError("dimension vector length mismatch")
        if len(self.actions) != len(algebra.quiver.arrows):
            raise ValueError("one action matrix per arrow required")
        for a, mat in enumerate(self.actions):
            arr = algebra.quiver.arrows[a]
            if (mat.rows, mat.cols) != (self.dims[arr.target - 1], self.dims[arr.source - 1]):
                raise ValueError(f"action matrix for arrow {arr.name} has wrong shape")
        if check:
            self._check_relations()

    def _check_relations(self):
        for rel in self.algebra.relations:
            acc = None
            for coef, arrows in rel.terms:
                m = path_action(self, self.algebra.quiver.arrows[arrows[0]].source, arrows)
                m = m.scale(coef)
                acc = m if acc is None else acc + m
            if acc is not None and not acc.is_zero():
                raise ValueError("relation does not vanish on the representation")

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def __repr__(self):
        return f"Representation(dims={self.dims})"


class ModuleMap:
    """Morphism of representations: one block per vertex, intertwining all arrows."""

    def __init__(self, source: Representation, target: Representation, blocks, *, check=True):
        self.source = source
        self.target = target
        self.blocks = tuple(blocks)
        if source.algebra is not target.algebra:
            raise ValueError("maps require a common algebra")
        for v in range(source.algebra.n):
            b = self.blocks[v]
            if (b.rows, b.cols) != (target.dims[v], source.dims[v]):
                raise ValueError(f"block at vertex {v + 1} has wrong shape")
        if check:
            self._check_intertwining()

    def _check_intertwining(self):
        alg = self.source.algebra
        for a, arr in enumerate(alg.quiver.arrows):
            s, t = arr.source - 1, arr.target - 1
            lhs = self.target.actions[a] @ self.blocks[s]
            rhs = self.blocks[t] @ self.source.actions[a]
            if lhs != rhs:
                raise ValueError(f"map does not intertwine arrow {arr.name}")

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self o other (first other, then self)."""
        if other.target is not self.source and other.target.dims != self.source.dims:
            raise ValueError("composition mismatch")
        blocks = [self.blocks[v] @ other.blocks[v] for v in range(len(self.blocks))]
        return ModuleMap(other.source, self.target, blocks, check=False)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target,
                         [a + b for a, b in zip(self.blocks, other.blocks)], check=False)

    def scale(self, c) -> "ModuleMap":
        return ModuleMap(self.source, self.target,
                         [b.scale(c) for b in self.blocks], check=False)

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)

    def __repr__(self):
        return f"ModuleMap({self.source.dims} -> {self.target.dims})"


def identity_map(m: Representation) -> ModuleMap:
    return ModuleMap(m, m, [RatMat.identity(d) for d in m.dims], check=False)


def zero_map(m: Representation, n: Representation) -> ModuleMap:
    return ModuleMap(m, n, [RatMat.zeros(n.dims[v], m.dims[v]) for v in range(len(m.dims))],
                     check=False)


def path_action(m: Representation, start: int, arrows) -> RatMat:
    """Matrix of the right action of a raw path, M_start -> M_target."""
    alg = m.algebra
    acc = RatMat.identity(m.dims[start - 1])
    for a in arrows:
        acc = m.actions[a] @ acc
    return acc


def _algebra_cache(alg: AlgebraPresentation, key, builder):
    with _cache_lock:
        if key in alg._caches:
            return alg._caches[key]
    value = builder()
    with _cache_lock:
        return alg._caches.setdefault(key, value)


def zero_rep(alg: AlgebraPresentation) -> Representation:
    return _algebra_cache(alg, "zero", lambda: Representation(
        alg, [0] * alg.n, [RatMat.zeros(0, 0) for _ in alg.quiver.arrows], check=False))


def proj_sum(alg: AlgebraPresentation, vertices) -> Representation:
    """Direct sum of indecomposable projectives P(i), with path-labelled bases.

    The basis at vertex v consists of pairs (copy, basis path i_copy -> v);
    arrows act by path concatenation followed by reduction to normal form.
    """
    vertices = tuple(int(v) for v in vertices)

    def build():
        labels = []
        for v in range(1, alg.n + 1):
            lab = []
            for c, i in enumerate(vertices):
                for bidx in alg.basis_by_pair.get((i, v), ()):
                    lab.append((c, bidx))
            labels.append(tuple(lab))
        dims = [len(l) for l in labels]
        pos = [{lb: k for k, lb in enumerate(l)} for l in labels]
        actions = []
        for a, arr in enumerate(alg.quiver.arrows):
            s, t = arr.source - 1, arr.target - 1
            data = [[Fraction(0)] * dims[s] for _ in range(dims[t])]
            for col, (c, bidx) in enumerate(labels[s]):
                p = alg.basis[bidx]
                nf = alg.normal_form(p[0], p[1] + (a,))
                for b2, coef in nf.items():
                    data[pos[t][(c, b2)]][col] = coef
            actions.append(RatMat(dims[t], dims[s], data))
        return Representation(alg, dims, actions, check=False,
                              basis_labels=tuple(labels), proj_vertices=vertices)

    return _algebra_cache(alg, ("projsum", vertices), build)


def inj_sum(alg: AlgebraPresentation, vertices) -> Representation:
    """Direct sum of indecomposable injectives I(i) = D(A e_i).

    The basis at vertex v is dual to the basis paths v -> i_copy; arrow
    actions are the transposes of left multiplication on those paths.
    """
    vertices = tuple(int(v) for v in vertices)

    def build():
        labels = []
        for v in range(1, alg.n + 1):
            lab = []
            for c, i in enumerate(vertices):
                for bidx in alg.basis_by_pair.get((v, i), ()):
                    lab.append((c, bidx))
            labels.append(tuple(lab))
        dims = [len(l) for l in labels]
        pos = [{lb: k for k, lb in enumerate(l)} for l in labels]
        actions = []
        for a, arr in enumerate(alg.quiver.arrows):
            s, t = arr.source - 1, arr.target - 1
            data = [[Fraction(0)] * dims[s] for _ in range(dims[t])]
            # entry[(c,x), (c,w)] = coefficient of w in a*x, x a path t -> i_c
            for row, (c, xidx) in enumerate(labels[t]):
                x = alg.basis[xidx]
                nf = alg.normal_form(arr.source, (a,) + x[1])
                for widx, coef in nf.items():
                    data[row][pos[s][(c, widx)]] = coef
            actions.append(RatMat(dims[t], dims[s], data))
        return Representation(alg, dims, actions, check=False,
                              basis_labels=tuple(labels), inj_vertices=vertices)

    return _algebra_cache(alg, ("injsum", vertices), build)


def projective(alg: AlgebraPresentation, i: int) -> Representation:
    """The indecomposable projective P(i) = e_i A."""
    return proj_sum(alg, (i,))


def simple(alg: AlgebraPresentation, i: int) -> Representation:
    """The simple S(i): one-dimensional at vertex i, all arrows act by zero."""
    def build():
        dims = [1 if v == i else 0 for v in range(1, alg.n + 1)]
        actions = []
        for arr in alg.quiver.arrows:
            actions.append(RatMat.zeros(dims[arr.target - 1], dims[arr.source - 1]))
        return Representation(alg, dims, actions, check=False)
    return _algebra_cache(alg, ("simple", i), build)


def injective(alg: AlgebraPresentation, i: int) -> Representation:
    """The indecomposable injective I(i)."""
    return inj_sum(alg, (i,))


def direct_sum(reps):
    """Direct sum with canonical inclusion and projection maps."""
    reps = list(reps)
    if not reps:
        raise ValueError("direct_sum of an empty family is the zero module; use zero_rep")
    alg = reps[0].algebra
    n = alg.n
    dims = [sum(r.dims[v] for r in reps) for v in range(n)]
    offsets = []
    off = [0] * n
    for r in reps:
        offsets.append(tuple(off))
        off = [off[v] + r.dims[v] for v in range(n)]
    actions = []
    for a, arr in enumerate(alg.quiver.arrows):
        s, t = arr.source - 1, arr.target - 1
        data = [[Fraction(0)] * dims[s] for _ in range(dims[t])]
        for k, r in enumerate(reps):
            block = r.actions[a]
            ro, co = offsets[k][t], offsets[k][s]
            for i in range(block.rows):
                for j in range(block.cols):
                    if block.data[i][j]:
                        data[ro + i][co + j] = block.data[i][j]
        actions.append(RatMat(dims[t], dims[s], data))
    total = Representation(alg, dims, actions, check=False)
    inclusions, projections = [], []
    for k, r in enumerate(reps):
        inc, prj = [], []
        for v in range(n):
            m = RatMat.zeros(dims[v], r.dims[v])
            p = RatMat.zeros(r.dims[v], dims[v])
            md = [list(row) for row in m.data]
            pd = [list(row) for row in p.data]
            for i in range(r.dims[v]):
                md[offsets[k][v] + i][i] = Fraction(1)
                pd[i][offsets[k][v] + i] = Fraction(1)
            inc.append(RatMat(dims[v], r.dims[v], md))
            prj.append(RatMat(r.dims[v], dims[v], pd))
        inclusions.append(ModuleMap(r, total, inc, check=False))
        projections.append(ModuleMap(total, r, prj, check=False))
    return total, inclusions, projections


# -- Hom spaces --------------------------------------------------------------


def _hom_system(m: Representation, n: Representation):
    """Sparse rows of the intertwining system; unknowns are vec(f_v) blocks."""
    nv = m.algebra.n
    offsets = []
    off = 0
    for v in range(nv):
        offsets.append(off)
        off += n.dims[v] * m.dims[v]
    rows = []
    for a, arr in enumerate(m.algebra.quiver.arrows):
        s, t = arr.source - 1, arr.target - 1
        na, ma = n.actions[a], m.actions[a]
        for r in range(n.dims[t]):
            narow = na.data[r]
            for c in range(m.dims[s]):
                row = {}
                for k in range(n.dims[s]):
                    if narow[k]:
                        row[offsets[s] + k * m.dims[s] + c] = narow[k]
                for k in range(m.dims[t]):
                    v = ma.data[k][c]
                    if v:
                        key = offsets[t] + r * m.dims[t] + k
                        row[key] = row.get(key, Fraction(0)) - v
                if row:
                    rows.append(row)
    return rows, off, offsets


def _structural_proj_hom(p: Representation, n: Representation):
    """Hom(P, N) for a labelled projective sum: each copy at vertex i contributes
    one basis map per basis vector of N_i (the image of the generator)."""
    alg = p.algebra
    maps = []
    for c, i in enumerate(p.proj_vertices):
        path_mats = {}
        for b in range(n.dims[i - 1]):
            blocks = []
            for v in range(alg.n):
                data = [[Fraction(0)] * p.dims[v] for _ in range(n.dims[v])]
                for col, (c2, bidx) in enumerate(p.basis_labels[v]):
                    if c2 != c:
                        continue
                    if bidx not in path_mats:
                        path = alg.basis[bidx]
                        path_mats[bidx] = path_action(n, path[0], path[1])
                    vec = path_mats[bidx].column(b)
                    for rix in range(n.dims[v]):
                        if vec[rix]:
                            data[rix][col] = vec[rix]
                blocks.append(RatMat(n.dims[v], p.dims[v], data))
            maps.append(ModuleMap(p, n, blocks, check=False))
    return tuple(maps)


def hom_space(m: Representation, n: Representation):
    """A basis of Hom(M, N), solved exactly from the intertwining system."""
    if m.algebra is not n.algebra:
        raise ValueError("hom_space requires a common algebra")
    alg = m.algebra

    def build():
        if m.is_zero() or n.is_zero():
            return ()
        if m.proj_vertices is not None:
            return _structural_proj_hom(m, n)
        rows, nunk, offsets = _hom_system(m, n)
        basis = sparse_nullspace(rows, nunk)
        maps = []
        for vec in basis:
            blocks = []
            for v in range(alg.n):
                data = [[Fraction(0)] * m.dims[v] for _ in range(n.dims[v])]
                for key, val in vec.items():
                    if offsets[v] <= key < offsets[v] + n.dims[v] * m.dims[v]:
                        k = key - offsets[v]
                        data[k // m.dims[v]][k % m.dims[v]] = val
                blocks.append(RatMat(n.dims[v], m.dims[v], data))
            maps.append(ModuleMap(m, n, blocks, check=False))
        return tuple(maps)

    return _algebra_cache(alg, ("homsp", m.token, n.token), build)


def hom_dim(m: Representation, n: Representation) -> int:
    """dim Hom(M, N), via the rank of the intertwining system."""
    alg = m.algebra

    def build():
        if m.is_zero() or n.is_zero():
            return 0
        if m.proj_vertices is not None:
            return sum(n.dims[i - 1] for i in m.proj_vertices)
        key = ("homsp", m.token, n.token)
        with _cache_lock:
            if key in alg._caches:
                return len(alg._caches[key])
        rows, nunk, _ = _hom_system(m, n)
        return nunk - sparse_rank(rows, nunk)

    return _algebra_cache(alg, ("homdim", m.token, n.token), build)


# -- kernels, cokernels, images ----------------------------------------------


def _induced_action_on_sub(parent: Representation, cols):
    """Arrow actions in the coordinates of a vertex-wise column basis."""
    alg = parent.algebra
    actions = []
    for a, arr in enumerate(alg.quiver.arrows):
        s, t = arr.source - 1, arr.target - 1
        rhs = parent.actions[a] @ cols[s]
        x = solve(cols[t], rhs)
        if x is None:
            raise ValueError("subspace family is not closed under the actions")
        actions.append(x)
    return actions


def kernel(f: ModuleMap):
    """Kernel as a representation plus its inclusion into the source."""
    src = f.source
    cols = [nullspace(f.blocks[v]) for v in range(src.algebra.n)]
    dims = [c.cols for c in cols]
    actions = _induced_action_on_sub(src, cols)
    ker = Representation(src.algebra, dims, actions, check=False)
    incl = ModuleMap(ker, src, cols, check=False)
    return ker, incl


def image(f: ModuleMap):
    """Image as a subrepresentation of the target plus its inclusion."""
    tgt = f.target
    cols = [column_space(f.blocks[v]) for v in range(tgt.algebra.n)]
    dims = [c.cols for c in cols]
    actions = _induced_action_on_sub(tgt, cols)
    img = Representation(tgt.algebra, dims, actions, check=False)
    incl = ModuleMap(img, tgt, cols, check=False)
    return img, incl


def _quotient_by_columns(parent: Representation, cols):
    """Quotient of parent by the subrepresentation spanned by `cols`.

    Returns (quotient, projection).  Coordinates are the non-pivot positions
    of the column space, so the projection is deterministic.
    """
    alg = parent.algebra
    projs = []
    frees = []
    for v in range(alg.n):
        mat = cols[v]
        rows = [{j: mat.data[j][k] for j in range(mat.rows) if mat.data[j][k]}
                for k in range(mat.cols)]
        rref = sparse_rref(rows, mat.rows)
        pivots = [c for c, _ in rref]
        pivot_set = set(pivots)
        free = [j for j in range(parent.dims[v]) if j not in pivot_set]
        data = [[Fraction(0)] * parent.dims[v] for _ in range(len(free))]
        for r, j in enumerate(free):
            data[r][j] = Fraction(1)
            for c, row in rref:
                coef = row.get(j)
                if coef:
                    data[r][c] = -coef
        projs.append(RatMat(len(free), parent.dims[v], data))
        frees.append(free)
    dims = [len(fr) for fr in frees]
    actions = []
    for a, arr in enumerate(alg.quiver.arrows):
        s, t = arr.source - 1, arr.target - 1
        # section: free coordinate j -> e_j
        sec = RatMat.zeros(parent.dims[s], dims[s])
        sd = [list(r) for r in sec.data]
        for k, j in enumerate(frees[s]):
            sd[j][k] = Fraction(1)
        sec = RatMat(parent.dims[s], dims[s], sd)
        actions.append(projs[t] @ parent.actions[a] @ sec)
    quot = Representation(alg, dims, actions, check=False)
    proj = ModuleMap(parent, quot, projs, check=False)
    return quot, proj


def cokernel(f: ModuleMap):
    """Cokernel as a quotient of the target plus the projection map."""
    cols = [column_space(f.blocks[v]) for v in range(f.target.algebra.n)]
    return _quotient_by_columns(f.target, cols)


def radical(m: Representation):
    """rad M = M * (arrow ideal): the sum of the images of all arrow actions."""
    alg = m.algebra
    cols = []
    for v in range(alg.n):
        stacked = None
        for a, arr in enumerate(alg.quiver.arrows):
            if arr.target - 1 != v:
                continue
            stacked = m.actions[a] if stacked is None else stacked.hstack(m.actions[a])
        if stacked is None:
            cols.append(RatMat.zeros(m.dims[v], 0))
        else:
            cols.append(column_space(stacked))
    dims = [c.cols for c in cols]
    actions = _induced_action_on_sub(m, cols)
    rad = Representation(alg, dims, actions, check=False)
    incl = ModuleMap(rad, m, cols, check=False)
    return rad, incl


def top(m: Representation):
    """M / rad M, semisimple, with the quotient projection."""
    _, incl = radical(m)
    return _quotient_by_columns(m, incl.blocks)


# -- projective presentations -------------------------------------------------


class Presentation2Term:
    """Minimal projective presentation P1 -> P0 -> M -> 0.

    `p1_vertices`/`p0_vertices` list the projective copies; `pmap` is the map
    P1 -> P0; `cover` the epimorphism P0 -> M; `u` the matrix of algebra
    elements describing pmap on generators (u[alpha][beta] in e_{j_alpha} A
    e_{i_beta}).
    """

    def __init__(self, p1_vertices, p0_vertices, pmap, cover, u):
        self.p1_vertices = tuple(p1_vertices)
        self.p0_vertices = tuple(p0_vertices)
        self.pmap = pmap
        self.cover = cover
        self.u = u

    def multiplicities(self):
        alg = self.cover.target.algebra
        a0 = [0] * alg.n
        a1 = [0] * alg.n
        for i in self.p0_vertices:
            a0[i - 1] += 1
        for i in self.p1_vertices:
            a1[i - 1] += 1
        return tuple(a0), tuple(a1)


def projective_cover(m: Representation):
    """Projective cover q: P0 -> M, built by lifting a basis of top(M)."""
    alg = m.algebra
    _, rad_incl = radical(m)
    verts = []
    gens = []
    for v in range(alg.n):
        mat = rad_incl.blocks[v]
        rows = [{j: mat.data[j][k] for j in range(mat.rows) if mat.data[j][k]}
                for k in range(mat.cols)]
        pivots = {c for c, _ in sparse_rref(rows, mat.rows)}
        for j in range(m.dims[v]):
            if j not in pivots:
                verts.append(v + 1)
                gens.append((v + 1, j))
    p0 = proj_sum(alg, verts)
    blocks = []
    for v in range(alg.n):
        data = [[Fraction(0)] * p0.dims[v] for _ in range(m.dims[v])]
        for col, (c, bidx) in enumerate(p0.basis_labels[v]):
            gv, gj = gens[c]
            path = alg.basis[bidx]
            vec = path_action(m, path[0], path[1]).column(gj)
            for r in range(m.dims[v]):
                if vec[r]:
                    data[r][col] = vec[r]
        blocks.append(RatMat(m.dims[v], p0.dims[v], data))
    cover = ModuleMap(p0, m, blocks, check=False)
    return p0, cover, tuple(verts)


def min_proj_presentation(m: Representation) -> Presentation2Term:
    """Minimal two-term presentation, cached per module.

    Minimality is structural: first cover top(M), then cover the top of the
    kernel; no post-hoc cancellation is ever applied.
    """
    cached = getattr(m, "_minpres", None)
    if cached is not None:
        return cached
    alg = m.algebra
    p0, cover, verts0 = projective_cover(m)
    ker, incl = kernel(cover)
    p1, cover1, verts1 = projective_cover(ker)
    pmap = incl.compose(cover1)
    # read off the algebra-element matrix from the generators of P1
    u = []
    for alpha in range(len(verts0)):
        u.append([])
    for beta, i in enumerate(verts1):
        gen_col = None
        for col, (c, bidx) in enumerate(p1.basis_labels[i - 1]):
            if c == beta and alg.basis[bidx][1] == ():
                gen_col = col
                break
        vec = pmap.blocks[i - 1].column(gen_col) if gen_col is not None else ()
        for alpha in range(len(verts0)):
            u[alpha].append({})
        for row, val in enumerate(vec):
            if val:
                c0, bidx0 = p0.basis_labels[i - 1][row]
                u[c0][beta][bidx0] = val
    pres = Presentation2Term(verts1, verts0, pmap, cover, u)
    m._minpres = pres
    return pres


def g_vector(m: Representation):
    """Projective multiplicity differences of the minimal presentation."""
    cached = getattr(m, "_gvec", None)
    if cached is not None:
        return cached
    pres = min_proj_presentation(m)
    a0, a1 = pres.multiplicities()
    g = tuple(a0[i] - a1[i] for i in range(m.algebra.n))
    m._gvec = g
    return g


def realize_proj_map(alg: AlgebraPresentation, src_vertices, dst_vertices, u) -> ModuleMap:
    """Module map between projective sums from a matrix of algebra elements."""
    src = proj_sum(alg, src_vertices)
    dst = proj_sum(alg, dst_vertices)
    blocks = []
    for v in range(alg.n):
        pos = {lb: k for k, lb in enumerate(dst.basis_labels[v])}
        data = [[Fraction(0)] * src.dims[v] for _ in range(dst.dims[v])]
        for col, (beta, bidx) in enumerate(src.basis_labels[v]):
            q_elem = {bidx: Fraction(1)}
            for alpha in range(len(dst_vertices)):
                prod = alg.multiply(u[alpha][beta], q_elem)
                for k, coef in prod.items():
                    data[pos[(alpha, k)]][col] += coef
        blocks.append(RatMat(dst.dims[v], src.dims[v], data))
    return ModuleMap(src, dst, blocks, check=False)


def star_u_matrix(alg: AlgebraPresentation, u, n_rows, n_cols):
    """Transport u under Hom(-, A): transpose and reverse every path."""
    op = alg.opposite()
    out = [[None] * n_rows for _ in range(n_cols)]
    for alpha in range(n_rows):
        for beta in range(n_cols):
            elem = u[alpha][beta]
            rev = {}
            for bidx, coef in elem.items():
                path = alg.basis[bidx]
                start_op = alg.basis_target[bidx]
                nf = op.normal_form(start_op, tuple(reversed(path[1])))
                for k, c2 in nf.items():
                    rev[k] = rev.get(k, Fraction(0)) + coef * c2
            out[beta][alpha] = {k: c for k, c in rev.items() if c}
    return out


def nakayama(p: Representation) -> Representation:
    """nu(P) for a direct sum of indecomposable projectives."""
    verts = _projective_vertices(p)
    if verts is None:
        raise NotProjective("nakayama requires a direct sum of projectives")
    return inj_sum(p.algebra, verts)


def _projective_vertices(p: Representation):
    if p.is_zero():
        return ()
    if p.proj_vertices is not None:
        return p.proj_vertices
    # generic check: P covers its top with zero kernel
    p0, cover, verts = projective_cover(p)
    ker, _ = kernel(cover)
    if ker.is_zero():
        return verts
    return None


def nakayama_map(alg: AlgebraPresentation, src_vertices, dst_vertices, u) -> ModuleMap:
    """nu(f) for a map between projective sums given by algebra elements.

    On the entry u in e_j A e_i the value at vertex v is the transpose of
    right multiplication by u from (paths v -> j) to (paths v -> i).
    """
    src = inj_sum(alg, src_vertices)
    dst = inj_sum(alg, dst_vertices)
    blocks = []
    for v in range(alg.n):
        src_pos = {lb: k for k, lb in enumerate(src.basis_labels[v])}
        data = [[Fraction(0)] * src.dims[v] for _ in range(dst.dims[v])]
        for row, (alpha, widx) in enumerate(dst.basis_labels[v]):
            # w is a path v -> j_alpha; w*u is a combination of paths v -> i_beta
            w = alg.basis[widx]
            for beta in range(len(src_vertices)):
                elem = u[alpha][beta]
                for bidx, coef in elem.items():
                    path = alg.basis[bidx]
                    prod = alg.normal_form(w[0], w[1] + path[1])
                    for k, c2 in prod.items():
                        data[row][src_pos[(beta, k)]] += coef * c2
        blocks.append(RatMat(dst.dims[v], src.dims[v], data))
    return ModuleMap(src, dst, blocks, check=False)


def tau(m: Representation) -> Representation:
    """Auslander-Reiten translate: kernel of nu applied to the presentation."""
    cached = getattr(m, "_tau", None)
    if cached is not None:
        return cached
    pres = min_proj_presentation(m)
    if not pres.p1_vertices:
        t = zero_rep(m.algebra)
    else:
        nu_p = nakayama_map(m.algebra, pres.p1_vertices, pres.p0_vertices, pres.u)
        t, _ = kernel(nu_p)
    m._tau = t
    return t


def transpose_rep(m: Representation) -> Representation:
    """Tr M over the opposite algebra: cokernel of the dualized presentation."""
    cached = getattr(m, "_transpose", None)
    if cached is not None:
        return cached
    alg = m.algebra
    pres = min_proj_presentation(m)
    op = alg.opposite()
    if not pres.p1_vertices:
        t = zero_rep(op)
    else:
        u_star = star_u_matrix(alg, pres.u, len(pres.p0_vertices), len(pres.p1_vertices))
        f = realize_proj_map(op, pres.p0_vertices, pres.p1_vertices, u_star)
        t, _ = cokernel(f)
    m._transpose = t
    return t


def dimension_vector(m: Representation):
    """[M]_i = dim Hom(P(i), M) / delta_i, an exact integer."""
    alg = m.algebra
    delta = d_matrix(alg)
    out = []
    for i in range(1, alg.n + 1):
        h = hom_dim(projective(alg, i), m)
        if h % delta[i - 1]:
            raise ValueError("dimension vector is not integral; delta mismatch")
        out.append(h // delta[i - 1])
    return tuple(out)


def composition_length(m: Representation) -> int:
    return sum(dimension_vector(m))


def d_matrix(alg: AlgebraPresentation):
    """Diagonal of endomorphism dimensions of the simples, delta_i = dim End S(i)."""
    return _algebra_cache(alg, "dmatrix", lambda: tuple(
        hom_dim(simple(alg, i), simple(alg, i)) for i in range(1, alg.n + 1)))


# -- traces, Fac and Sub -------------------------------------------------------


def trace_from(sources, x: Representation):
    """tr_{add U}(X): the sum of the images of all maps U_j -> X."""
    alg = x.algebra
    stacked = [None] * alg.n
    for u in sources:
        for f in hom_space(u, x):
            for v in range(alg.n):
                b = f.blocks[v]
                stacked[v] = b if stacked[v] is None else stacked[v].hstack(b)
    cols = []
    for v in range(alg.n):
        if stacked[v] is None:
            cols.append(RatMat.zeros(x.dims[v], 0))
        else:
            cols.append(column_space(stacked[v]))
    dims = [c.cols for c in cols]
    actions = _induced_action_on_sub(x, cols)
    tr = Representation(alg, dims, actions, check=False)
    return tr, ModuleMap(tr, x, cols, check=False)


def fac_contains(sources, x: Representation) -> bool:
    """X in Fac(U): the trace of add(U) in X is all of X."""
    if x.is_zero():
        return True
    tr, _ = trace_from(sources, x)
    return tr.dims == x.dims


def cotrace_kernel(sources, x: Representation):
    """Intersection of the kernels of all maps X -> U_j (the Sub-dual of trace)."""
    alg = x.algebra
    stacked = [None] * alg.n
    for u in sources:
        for f in hom_space(x, u):
            for v in range(alg.n):
                b = f.blocks[v]
                stacked[v] = b if stacked[v] is None else stacked[v].vstack(b)
    cols = []
    for v in range(alg.n):
        if stacked[v] is None:
            cols.append(RatMat.identity(x.dims[v]))
        else:
            cols.append(nullspace(stacked[v]))
    dims = [c.cols for c in cols]
    actions = _induced_action_on_sub(x, cols)
    ker = Representation(alg, dims, actions, check=False)
    return ker, ModuleMap(ker, x, cols, check=False)


def sub_contains(sources, x: Representation) -> bool:
    """X in Sub(U): X embeds into a finite sum of copies of U."""
    if x.is_zero():
        return True
    ker, _ = cotrace_kernel(sources, x)
    return ker.is_zero()


# -- isomorphism and decomposition ---------------------------------------------


def _invertible_blocks(f: ModuleMap):
    from .linalg import inverse

    inv = []
    for v in range(len(f.blocks)):
        b = f.blocks[v]
        if b.rows != b.cols:
            return None
        if b.rows == 0:
            inv.append(b)
            continue
        bi = inverse(b)
        if bi is None:
            return None
        inv.append(bi)
    return inv


def is_isomorphic(m: Representation, n: Representation) -> bool:
    """Exact isomorphism test: exhibits an invertible intertwiner and its inverse.

    Searches single Hom-basis elements, then seeded random combinations; a
    found isomorphism is certified by constructing the inverse map.
    """
    if m is n:
        return True
    if m.dims != n.dims:
        return False
    if m.is_zero():
        return True
    basis = hom_space(m, n)
    if not basis:
        return False
    candidates = list(basis)
    rng = random.Random(0x5EED)
    for trial in range(32):
        bound = 1 + trial // 4
        coeffs = [rng.randint(-bound, bound) for _ in basis]
        f = None
        for c, b in zip(coeffs, basis):
            if c:
                f = b.scale(c) if f is None else f + b.scale(c)
        if f is not None:
            candidates.append(f)
    for f in candidates:
        inv = _invertible_blocks(f)
        if inv is not None:
            ModuleMap(n, m, inv)  # certification: inverse intertwines
            return True
    return False


def canonical_order_key(m: Representation):
    """(total dimension, dimension vector, g-vector): the canonical summand order."""
    return (m.total_dim, dimension_vector(m), g_vector(m))


def decompose(m: Representation):
    """Krull-Schmidt decomposition into (indecomposable, multiplicity) pairs.

    Summands are grouped by isomorphism and returned in the canonical order.
    Raises DecompositionInconclusive when the idempotent search budget runs
    out without certifying locality.
    """
    from .endo import split_indecomposables

    if m.is_zero():
        return ()
    parts = split_indecomposables(m)
    groups = []
    for p in parts:
        for g in groups:
            if g[0].dims == p.dims and is_isomorphic(g[0], p):
                g[1] += 1
                break
        else:
            groups.append([p, 1])
    if len(groups) > 1:
        groups.sort(key=lambda g: canonical_order_key(g[0]))
    return tuple((g[0], g[1]) for g in groups)
