"""Bricks attached to c-vectors, with full certificate verification.

Each exchange edge carries one brick.  The candidate is constructed at the
upper pair of the edge (the one whose module part generates the larger
quotient-closed class) as a trace quotient of the exchanged summand, then
verified against every defining condition: the endomorphism algebra is a
division ring, the three perpendicularity conditions against the remaining
slots hold, and D_A [B] = m c exactly with a nonzero integer multiplier.
Any failed check raises BrickVerificationFailed with diagnostics; candidates
are never patched silently.
"""

from __future__ import annotations

from .endo import EndoAlgebra, is_brick
from .errors import BrickVerificationFailed
from .gc import c_vectors, g_matrix, inner_product, is_sign_coherent
from .linalg import RatMat, column_space
from .pairs import TauTiltingPair, exchanged_slot, mutate
from .reps import (
    Representation,
    _quotient_by_columns,
    d_matrix,
    dimension_vector,
    fac_contains,
    hom_dim,
    hom_space,
    is_isomorphic,
    projective,
    tau,
)


class BrickCertificate:
    """A verified brick B with its multiplier m for one (pair, slot)."""

    def __init__(self, brick, multiplier, pair_key, slot, c_vector, evidence):
        self.brick = brick
        self.multiplier = multiplier
        self.pair_key = pair_key
        self.slot = slot
        self.c_vector = c_vector
        self.evidence = evidence

    @property
    def dim_vector(self):
        return dimension_vector(self.brick)

    @property
    def composition_length(self) -> int:
        return sum(self.dim_vector)

    def __repr__(self):
        return (f"BrickCertificate(slot={self.slot}, dims={self.brick.dims}, "
                f"m={self.multiplier}, c={self.c_vector})")


def trace_quotient(upper: TauTiltingPair, z: Representation) -> Representation:
    """Candidate brick: Z modulo the trace of the other summands and of rad End Z.

    Quotients Z by the sum of the images of all maps U_j -> Z (U_j the other
    module summands of the upper pair) and of all radical endomorphisms of Z.
    Returned unverified.
    """
    alg = upper.algebra
    stacked = [None] * alg.n
    for u in upper.modules:
        if u is z:
            continue
        for f in hom_space(u, z):
            for v in range(alg.n):
                b = f.blocks[v]
                stacked[v] = b if stacked[v] is None else stacked[v].hstack(b)
    end = EndoAlgebra(z)
    for coords in end.radical():
        f = end.as_map(coords)
        for v in range(alg.n):
            b = f.blocks[v]
            stacked[v] = b if stacked[v] is None else stacked[v].hstack(b)
    cols = []
    for v in range(alg.n):
        if stacked[v] is None:
            cols.append(RatMat.zeros(z.dims[v], 0))
        else:
            cols.append(column_space(stacked[v]))
    quot, _ = _quotient_by_columns(z, cols)
    return quot


def _orient_edge(pair: TauTiltingPair, other: TauTiltingPair):
    """(upper, lower): the lower module part lies in Fac of the upper one."""
    a_in_b = all(fac_contains(other.modules, m) for m in pair.modules)
    b_in_a = all(fac_contains(pair.modules, m) for m in other.modules)
    if a_in_b == b_in_a:
        raise BrickVerificationFailed(
            "could not orient the exchange edge by the Fac test",
            pair_key=pair.key)
    return (other, pair) if a_in_b else (pair, other)


def brick_for_slot(pair: TauTiltingPair, slot: int) -> BrickCertificate:
    """Construct and certify the brick labelling the given slot's c-vector.

    Mutates at the slot, orients the edge by the Fac test, builds the trace
    quotient of the exchanged summand of the upper pair, and verifies every
    certificate invariant before returning.  Certificates are cached per
    (pair key, slot).
    """
    alg = pair.algebra
    cache_key = ("brick", pair.key, slot)
    cached = alg._caches.get(cache_key)
    if cached is not None:
        return cached
    cert = _brick_for_slot(pair, slot)
    alg._caches[cache_key] = cert
    return cert


def _brick_for_slot(pair: TauTiltingPair, slot: int) -> BrickCertificate:
    alg = pair.algebra

    def fail(msg, check, dims=None):
        raise BrickVerificationFailed(
            f"pair {pair.key} slot {slot}: {msg}",
            pair_key=pair.key, slot=slot, dim_vector=dims, check=check)

    other = mutate(pair, slot)
    upper, lower = _orient_edge(pair, other)
    ex_slot = slot if upper is pair else exchanged_slot(upper, lower)
    kind, content = upper.slots()[ex_slot - 1][0], upper.slots()[ex_slot - 1][1]
    if kind != "module":
        fail("exchanged slot of the upper pair is not a module", "orientation")
    brick = trace_quotient(upper, content)
    if brick.is_zero():
        fail("trace quotient vanished", "construction")

    delta = d_matrix(alg)
    dim_b = dimension_vector(brick)
    g_slot = pair.slot_g[slot - 1]
    m = inner_product(g_slot, dim_b, delta)
    c = c_vectors(pair)[slot - 1]

    end_dim = hom_dim(brick, brick)
    if not is_brick(brick):
        fail("candidate is not a brick", "brick", dim_b)

    # perpendicularity against the remaining slots of the queried pair
    hat_modules = [mm for i, mm in enumerate(pair.modules) if i != slot - 1]
    hat_projs = [p for i, p in enumerate(pair.proj_slots)
                 if i + len(pair.modules) != slot - 1]
    perp_hom = all(hom_dim(mm, brick) == 0 for mm in hat_modules)
    perp_tau = True
    for mm in hat_modules:
        t = tau(mm)
        if not t.is_zero() and hom_dim(brick, t):
            perp_tau = False
            break
    perp_proj = all(hom_dim(projective(alg, p), brick) == 0 for p in hat_projs)
    if not perp_hom:
        fail("Hom(M_hat, B) != 0", "perp_hom", dim_b)
    if not perp_tau:
        fail("Hom(B, tau M_hat) != 0", "perp_tau", dim_b)
    if not perp_proj:
        fail("Hom(P_hat, B) != 0", "perp_proj", dim_b)

    if m == 0:
        fail("multiplier vanished", "multiplier", dim_b)
    relation = tuple(delta[i] * dim_b[i] for i in range(alg.n)) == \
        tuple(m * c[i] for i in range(alg.n))
    if not relation:
        fail(f"D_A[B] != m*c (D_A[B]={tuple(d * x for d, x in zip(delta, dim_b))}, "
             f"m={m}, c={c})", "relation", dim_b)
    if not is_sign_coherent(c):
        fail("c-vector is not sign-coherent", "sign_coherence", dim_b)
    if (m > 0) != all(x >= 0 for x in c):
        fail("multiplier sign does not align with the c-vector sign", "sign", dim_b)

    evidence = {
        "end_dim": end_dim,
        "perp_checks": (perp_hom, perp_tau, perp_proj),
        "relation_check": relation,
    }
    return BrickCertificate(brick, m, pair.key, slot, c, evidence)


def x_matrix(pair: TauTiltingPair, certificates=None):
    """Matrix of brick classes and its diagonal witness.

    Column i is the class [B_i].  Asserts that G^T D_A X is diagonal with the
    multipliers on the diagonal and that D_A X = C D entrywise.
    """
    alg = pair.algebra
    n = pair.rank
    if certificates is None:
        certificates = [brick_for_slot(pair, s) for s in range(1, n + 1)]
    delta = d_matrix(alg)
    x = tuple(tuple(dimension_vector(certificates[j].brick)[i] for j in range(n))
              for i in range(n))
    g = g_matrix(pair)
    diag = tuple(cert.multiplier for cert in certificates)
    # G^T D_A X
    gtdx = [[sum(g[k][i] * delta[k] * x[k][j] for k in range(n))
             for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            want = diag[i] if i == j else 0
            if gtdx[i][j] != want:
                raise BrickVerificationFailed(
                    f"G^T D X is not the diagonal of multipliers at ({i},{j}): "
                    f"{gtdx[i][j]} != {want}", pair_key=pair.key)
    from .gc import c_matrix as _cmat
    c = _cmat(pair)
    for i in range(n):
        for j in range(n):
            if delta[i] * x[i][j] != c[i][j] * diag[j]:
                raise BrickVerificationFailed(
                    f"D_A X != C D at ({i},{j})", pair_key=pair.key)
    return x, diag


def edge_brick_consistent(pair: TauTiltingPair, slot: int,
                          other: TauTiltingPair, other_slot: int) -> bool:
    """The two pairs incident to one edge label it with isomorphic bricks."""
    b1 = brick_for_slot(pair, slot).brick
    b2 = brick_for_slot(other, other_slot).brick
    return is_isomorphic(b1, b2)
