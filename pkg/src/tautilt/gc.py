"""G-matrices, c-matrices, the weighted inner product, and the AR formula."""

from __future__ import annotations

from .errors import NonIntegral
from .linalg import int_matrix_inverse_transpose
from .pairs import TauTiltingPair
from .reps import Representation, d_matrix, dimension_vector, g_vector, hom_dim, tau


def g_matrix(pair: TauTiltingPair):
    """Integer matrix whose column j is the g-vector of slot j."""
    n = pair.rank
    return tuple(tuple(pair.slot_g[j][i] for j in range(n)) for i in range(n))


def c_matrix(pair: TauTiltingPair):
    """Exact inverse-transpose of the g-matrix; its columns are the c-vectors.

    Non-integrality signals an upstream bug (the slot g-vectors failed to be
    a Z-basis) and raises NonIntegral rather than rounding.
    """
    g = g_matrix(pair)
    try:
        return int_matrix_inverse_transpose(g)
    except ValueError as exc:
        raise NonIntegral(f"c-matrix of pair {pair.key}: {exc}") from exc


def c_vectors(pair: TauTiltingPair):
    """The c-vectors of the pair, one per slot, preserving slot order."""
    c = c_matrix(pair)
    n = pair.rank
    return tuple(tuple(c[i][j] for i in range(n)) for j in range(n))


def inner_product(v, w, delta) -> int:
    """<v, w> = sum_i delta_i v_i w_i."""
    if not (len(v) == len(w) == len(delta)):
        raise ValueError("length mismatch in inner product")
    return sum(d * a * b for d, a, b in zip(delta, v, w))


def is_sign_coherent(vec) -> bool:
    """True iff the entries are all >= 0 or all <= 0."""
    return all(x >= 0 for x in vec) or all(x <= 0 for x in vec)


def verify_ar_formula(m: Representation, n: Representation) -> dict:
    """Check <g^M, [N]> = dim Hom(M, N) - dim Hom(N, tau M), both sides exact.

    The left side uses the presentation data, the right side two independent
    Hom solves; the result reports both values and their equality.
    """
    if m.algebra is not n.algebra:
        raise ValueError("modules over different algebras")
    delta = d_matrix(m.algebra)
    lhs = inner_product(g_vector(m), dimension_vector(n), delta)
    t = tau(m)
    rhs = hom_dim(m, n) - (0 if t.is_zero() else hom_dim(n, t))
    return {"lhs": lhs, "rhs": rhs, "equal": lhs == rhs}
