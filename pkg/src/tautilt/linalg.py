"""Exact rational linear algebra.

All computations run over arbitrary-precision rationals; no floating point
anywhere.  The workhorse is a sparse integer row reduction with content
stripping, which keeps the large but very sparse intertwining systems that
arise from Hom-space computations tractable.  Reduced row echelon forms are
unique, so every derived basis (null spaces, column spaces) is canonical and
independent of pivot choices.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd

_ZERO = Fraction(0)
_ONE = Fraction(1)


class RatMat:
    """Immutable dense matrix over the rationals with explicit shape."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data):
        self.rows = rows
        self.cols = cols
        self.data = tuple(
            tuple(x if type(x) is Fraction else Fraction(x) for x in row) for row in data)
        if len(self.data) != rows or any(len(r) != cols for r in self.data):
            raise ValueError("shape mismatch")

    @classmethod
    def _make(cls, rows: int, cols: int, data) -> "RatMat":
        """Internal constructor: entries are already Fractions, rows are tuples."""
        self = cls.__new__(cls)
        self.rows = rows
        self.cols = cols
        self.data = data
        return self

    @staticmethod
    def from_rows(data) -> "RatMat":
        data = [list(r) for r in data]
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return RatMat(rows, cols, data)

    @staticmethod
    def zeros(rows: int, cols: int) -> "RatMat":
        return RatMat._make(rows, cols, tuple(((_ZERO,) * cols) for _ in range(rows)))

    @staticmethod
    def identity(n: int) -> "RatMat":
        return RatMat._make(n, n, tuple(
            tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n)))

    def __eq__(self, other):
        return (
            isinstance(other, RatMat)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        return f"RatMat({self.rows}x{self.cols}, {[[str(x) for x in r] for r in self.data]})"

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def transpose(self) -> "RatMat":
        return RatMat._make(self.cols, self.rows,
                            tuple(zip(*self.data)) if self.rows and self.cols
                            else tuple(() for _ in range(self.cols)) if self.rows == 0
                            else tuple((_ZERO,) * self.rows for _ in range(self.cols)))

    def __add__(self, other: "RatMat") -> "RatMat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in add")
        return RatMat._make(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.data, other.data)))

    def __sub__(self, other: "RatMat") -> "RatMat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in sub")
        return RatMat._make(self.rows, self.cols, tuple(
            tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.data, other.data)))

    def scale(self, c) -> "RatMat":
        c = Fraction(c)
        return RatMat._make(self.rows, self.cols,
                            tuple(tuple(c * x for x in row) for row in self.data))

    def __matmul__(self, other: "RatMat") -> "RatMat":
        # Zero-skipping multiply: the action matrices are mostly sparse 0/1.
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matmul")
        out = [[_ZERO] * other.cols for _ in range(self.rows)]
        odata = other.data
        for i, row in enumerate(self.data):
            acc = out[i]
            for k, a in enumerate(row):
                if a:
                    orow = odata[k]
                    for j, b in enumerate(orow):
                        if b:
                            acc[j] += a * b
        return RatMat._make(self.rows, other.cols, tuple(tuple(r) for r in out))

    def column(self, j: int):
        return tuple(row[j] for row in self.data)

    def hstack(self, other: "RatMat") -> "RatMat":
        if self.rows != other.rows:
            raise ValueError("shape mismatch in hstack")
        return RatMat._make(self.rows, self.cols + other.cols,
                            tuple(r1 + r2 for r1, r2 in zip(self.data, other.data)))

    def vstack(self, other: "RatMat") -> "RatMat":
        if self.cols != other.cols:
            raise ValueError("shape mismatch in vstack")
        return RatMat._make(self.rows + other.rows, self.cols, self.data + other.data)


def _strip_content(row: dict) -> None:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return
    if g > 1:
        for k in row:
            row[k] //= g


def _integer_rows(rows, ncols):
    """Clear denominators and drop zero entries; rows become dict[col] -> int."""
    out = []
    for row in rows:
        if isinstance(row, dict):
            items = list(row.items())
        else:
            items = [(j, v) for j, v in enumerate(row) if v]
        den = 1
        cleaned = []
        for j, v in items:
            if not v:
                continue
            if not (0 <= j < ncols):
                raise ValueError("column index out of range")
            if type(v) is int:
                cleaned.append((j, v, 1))
            else:
                f = v if type(v) is Fraction else Fraction(v)
                d = f.denominator
                cleaned.append((j, f.numerator, d))
                if d != 1:
                    den = den * d // gcd(den, d)
        if not cleaned:
            continue
        if den == 1:
            irow = {j: num for j, num, _ in cleaned}
        else:
            irow = {j: num * (den // d) for j, num, d in cleaned}
        _strip_content(irow)
        out.append(irow)
    return out


def _forward_eliminate(rows, ncols, pivot_limit=None):
    """Fraction-free forward elimination on sparse integer rows.

    Returns the list of (pivot_col, row_dict) in elimination order.  Pivots
    are chosen Markowitz-style (sparsest column, then sparsest row, then
    smallest |entry|) to limit fill-in; the resulting echelon set spans the
    same row space for any choice, and the fixed heuristic makes the outcome
    deterministic.  Columns >= pivot_limit are pivoted only once no smaller
    column remains (used to detect inconsistent augmented systems).
    """
    if pivot_limit is None:
        pivot_limit = ncols
    active = {i: r for i, r in enumerate(rows)}
    col_rows: dict[int, set] = {}
    for i, r in active.items():
        for c in r:
            col_rows.setdefault(c, set()).add(i)
    heap = [(c >= pivot_limit, len(s), c) for c, s in col_rows.items()]
    heapq.heapify(heap)
    pivots = []

    while heap:
        tier, cnt, c = heapq.heappop(heap)
        s = col_rows.get(c)
        if not s:
            continue
        if len(s) != cnt:
            heapq.heappush(heap, (tier, len(s), c))
            continue
        # Pivot row: fewest entries, then smallest |value| (1s are cheapest), then id.
        pid = min(s, key=lambda i: (len(active[i]), abs(active[i][c]) != 1, i))
        prow = active.pop(pid)
        pval = prow[c]
        for cc in prow:
            col_rows[cc].discard(pid)
        pivots.append((c, prow))
        for rid in list(col_rows.get(c, ())):
            row = active[rid]
            rval = row.pop(c)
            col_rows[c].discard(rid)
            if pval != 1:
                for cc in row:
                    row[cc] *= pval
            for cc, v in prow.items():
                if cc == c:
                    continue
                nv = row.get(cc, 0) - rval * v
                if nv:
                    if cc not in row:
                        col_rows.setdefault(cc, set()).add(rid)
                        heapq.heappush(heap, (cc >= pivot_limit, len(col_rows[cc]), cc))
                    row[cc] = nv
                elif cc in row:
                    del row[cc]
                    col_rows[cc].discard(rid)
                    heapq.heappush(heap, (cc >= pivot_limit, len(col_rows[cc]), cc))
            if row:
                _strip_content(row)
            else:
                del active[rid]
    return pivots


def sparse_rref(rows, ncols, pivot_limit=None):
    """Deterministic reduced form of a sparse rational row family.

    Accepts rows as dicts or sequences; returns a list of (pivot_col, row)
    pairs sorted by pivot column, where each row has entry 1 at its pivot and
    every pivot column is cleared from all other rows.  The pivot set follows
    a fixed fill-reducing heuristic, so results are reproducible.
    """
    pivots = _forward_eliminate(_integer_rows(rows, ncols), ncols, pivot_limit)
    pivots.sort(key=lambda pc: pc[0])
    frac_rows = [(c, {k: Fraction(v) for k, v in row.items()}) for c, row in pivots]
    # Gauss-Jordan: clear every pivot column from all other rows.
    for idx, (c, row) in enumerate(frac_rows):
        pval = row[c]
        if pval != 1:
            row = {k: v / pval for k, v in row.items()}
            frac_rows[idx] = (c, row)
        for jdx, (_, other) in enumerate(frac_rows):
            if jdx == idx:
                continue
            coef = other.get(c)
            if coef:
                del other[c]
                for k, v in row.items():
                    if k == c:
                        continue
                    nv = other.get(k, _ZERO) - coef * v
                    if nv:
                        other[k] = nv
                    elif k in other:
                        del other[k]
    return frac_rows


def sparse_rank(rows, ncols) -> int:
    return len(_forward_eliminate(_integer_rows(rows, ncols), ncols))


def sparse_nullspace(rows, ncols):
    """Basis of the right null space, as dict[col] -> Fraction vectors.

    One basis vector per free column, with value 1 at that column and zeros
    at the other free columns; this basis is unique given the pivot set, and
    the pivot choice is deterministic.  Back-substitution runs directly on
    the echelon rows (each pivot row only involves later pivots and free
    columns), so the cost scales with the nullity rather than the rank.
    """
    pivots = _forward_eliminate(_integer_rows(rows, ncols), ncols)
    pivot_set = {c for c, _ in pivots}
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec = {f: _ONE}
        for c, row in reversed(pivots):
            s = 0
            for j, v in row.items():
                if j != c:
                    xj = vec.get(j)
                    if xj is not None:
                        s += v * xj
            if s:
                vec[c] = Fraction(-s) / row[c] if type(s) is int else -s / row[c]
        basis.append(vec)
    return basis


def _mat_rows(mat: RatMat):
    return [{j: v for j, v in enumerate(row) if v} for row in mat.data]


def rank(mat: RatMat) -> int:
    return sparse_rank(_mat_rows(mat), mat.cols)


def nullspace(mat: RatMat) -> RatMat:
    """Matrix whose columns form the canonical basis of ker(mat)."""
    basis = sparse_nullspace(_mat_rows(mat), mat.cols)
    out = [[_ZERO] * len(basis) for _ in range(mat.cols)]
    for k, vec in enumerate(basis):
        for j, v in vec.items():
            out[j][k] = v
    return RatMat(mat.cols, len(basis), out)


def column_space(mat: RatMat) -> RatMat:
    """Matrix whose columns are the canonical (RREF) basis of the column space."""
    rows = [{j: row[j] for j in range(mat.rows) if row[j]} for row in zip(*mat.data)] if mat.rows else []
    rref = sparse_rref(rows, mat.rows)
    out = [[_ZERO] * len(rref) for _ in range(mat.rows)]
    for k, (_, vec) in enumerate(rref):
        for j, v in vec.items():
            out[j][k] = v
    return RatMat(mat.rows, len(rref), out)


def solve(a: RatMat, b: RatMat):
    """Solve a @ x = b exactly; returns None when inconsistent.

    When the system is underdetermined, free coordinates are set to zero;
    the answer is deterministic because the pivot choice is.
    """
    if a.rows != b.rows:
        raise ValueError("shape mismatch in solve")
    n = a.cols
    rows = []
    for i in range(a.rows):
        row = {j: v for j, v in enumerate(a.data[i]) if v}
        for k in range(b.cols):
            v = b.data[i][k]
            if v:
                row[n + k] = v
        rows.append(row)
    pivots = _forward_eliminate(_integer_rows(rows, n + b.cols), n + b.cols, pivot_limit=n)
    for c, _ in pivots:
        if c >= n:
            return None  # a pivot in the rhs block: inconsistent
    out = [[_ZERO] * b.cols for _ in range(n)]
    # Each echelon row involves only its pivot, later pivots, and free cols.
    for c, row in reversed(pivots):
        for k in range(b.cols):
            s = row.get(n + k, 0)
            for j, v in row.items():
                if j < n and j != c:
                    xj = out[j][k]
                    if xj:
                        s -= v * xj
            if s:
                out[c][k] = Fraction(s) / row[c] if type(s) is int else s / row[c]
    return RatMat(n, b.cols, out)


def det(mat: RatMat) -> Fraction:
    """Determinant via fraction-free (Bareiss) elimination."""
    if mat.rows != mat.cols:
        raise ValueError("determinant of non-square matrix")
    n = mat.rows
    if n == 0:
        return _ONE
    den = 1
    m = []
    for row in mat.data:
        l = 1
        for x in row:
            l = l * x.denominator // gcd(l, x.denominator)
        den *= l
        m.append([int(x * l) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return _ZERO
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return Fraction(sign * m[n - 1][n - 1], den)


def inverse(mat: RatMat):
    """Exact inverse, or None if singular."""
    if mat.rows != mat.cols:
        raise ValueError("inverse of non-square matrix")
    x = solve(mat, RatMat.identity(mat.rows))
    if x is None:
        return None
    if not (mat @ x == RatMat.identity(mat.rows)):
        return None
    return x


def int_matrix_inverse_transpose(rows):
    """Inverse-transpose of an integer matrix, entries asserted integral.

    Returns a tuple-of-tuples of Python ints, or raises ValueError when the
    matrix is singular or the inverse is not integral.  Used for c-matrices,
    where non-integrality signals an upstream bug rather than noise.
    """
    n = len(rows)
    mat = RatMat.from_rows(rows)
    d = det(mat)
    if d == 0:
        raise ValueError("singular matrix")
    inv = inverse(mat)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            v = inv.data[j][i]
            if v.denominator != 1:
                raise ValueError(f"non-integral entry {v} at ({i},{j})")
            row.append(int(v))
        out.append(tuple(row))
    return tuple(out)
