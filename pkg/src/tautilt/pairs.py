"""Tau-tilting pairs, slot mutation, and exchange-graph enumeration.

A pair holds k indecomposable module summands and n-k projective slots; the
slot g-vectors form a Z-basis and the sorted multiset of them is the
canonical key used for deduplication.

Mutation replaces one slot by the unique other completion of the remaining
n-1 summands.  The direction is decided by a Fac test: when the removed
summand X is not in Fac(U) the new summand is the cokernel of a minimal left
add(U)-approximation of X (with a support drop when the cokernel vanishes);
when X is in Fac(U) it is the kernel of a minimal right add(U)-approximation.
Projective slots are mutated through the opposite algebra via the transpose
duality, which turns them into module slots.  Every call verifies the
universal postconditions: the result is a valid pair, shares exactly n-1
slots with the input, differs from it, and mutating back returns the input.
Uniqueness of the second completion makes these checks a full certificate,
so any failure raises MutationVerificationFailed instead of returning.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor

from .algebra import AlgebraPresentation
from .errors import DecompositionInconclusive, MutationVerificationFailed
from .linalg import RatMat, det, sparse_rank
from .reps import (
    ModuleMap,
    Representation,
    decompose,
    direct_sum,
    fac_contains,
    g_vector,
    hom_dim,
    hom_space,
    kernel,
    cokernel,
    projective,
    tau,
    transpose_rep,
    zero_rep,
)


class TauTiltingPair:
    """Immutable tau-tilting pair with cached slot g-vectors.

    Module slots come first, ordered by g-vector descending (so the initial
    pair lists P(1)..P(n) in vertex order); projective slots follow, ordered
    by vertex.  Slot indices are 1-based.
    """

    def __init__(self, algebra: AlgebraPresentation, modules, proj_slots, *, validate=True):
        self.algebra = algebra
        mods = sorted(modules, key=g_vector, reverse=True)
        self.modules = tuple(mods)
        self.proj_slots = tuple(sorted(int(p) for p in proj_slots))
        self.slot_g = tuple(
            [g_vector(m) for m in self.modules]
            + [tuple(-1 if v == p else 0 for v in range(1, algebra.n + 1))
               for p in self.proj_slots]
        )
        self.key = tuple(sorted(self.slot_g))
        if validate:
            self._validate()

    @property
    def n(self) -> int:
        return self.algebra.n

    @property
    def rank(self) -> int:
        return len(self.slot_g)

    def _validate(self):
        alg = self.algebra
        if len(self.slot_g) != alg.n:
            raise ValueError(f"pair has {len(self.slot_g)} slots, expected {alg.n}")
        if len(set(self.slot_g)) != alg.n:
            raise ValueError("slot g-vectors are not distinct")
        if len(set(self.proj_slots)) != len(self.proj_slots):
            raise ValueError("repeated projective slot")
        taus = [tau(m) for m in self.modules]
        for i, m in enumerate(self.modules):
            for j, t in enumerate(taus):
                if not t.is_zero() and hom_dim(m, t):
                    raise ValueError(
                        f"Hom(M_{i + 1}, tau M_{j + 1}) != 0: pair is not tau-rigid")
        for p in self.proj_slots:
            for m in self.modules:
                if hom_dim(projective(alg, p), m):
                    raise ValueError(f"Hom(P({p}), M) != 0: pair is not tau-rigid")
        g = RatMat.from_rows([[self.slot_g[j][i] for j in range(alg.n)]
                              for i in range(alg.n)])
        d = det(g)
        if abs(d) != 1:
            raise ValueError(f"slot g-vectors are not a Z-basis (det {d})")

    def slots(self):
        """List of ('module', rep) / ('proj', vertex) in slot order."""
        return [("module", m) for m in self.modules] + \
               [("proj", p) for p in self.proj_slots]

    def slot_identity(self, slot: int):
        """Hashable identity of a slot: module g-vector or projective vertex."""
        if slot <= len(self.modules):
            return ("m", self.slot_g[slot - 1])
        return ("p", self.proj_slots[slot - 1 - len(self.modules)])

    def slot_identities(self):
        return frozenset(self.slot_identity(s) for s in range(1, self.rank + 1))

    def module_part(self):
        return list(self.modules)

    def __repr__(self):
        return f"TauTiltingPair(g={self.slot_g})"


def is_tau_rigid_pair(m: Representation, proj_slots) -> bool:
    """Both vanishing conditions, checked exactly: Hom(M, tau M) = 0 and
    Hom(P(p), M) = 0 for every projective slot p."""
    if not m.is_zero():
        t = tau(m)
        if not t.is_zero() and hom_dim(m, t):
            return False
        for p in proj_slots:
            if hom_dim(projective(m.algebra, p), m):
                return False
    return True


def initial_pair(alg: AlgebraPresentation) -> TauTiltingPair:
    """(A, 0): the indecomposable projectives with no projective slots."""
    return TauTiltingPair(alg, [projective(alg, i) for i in range(1, alg.n + 1)], [])


def _intern_module(alg: AlgebraPresentation, m: Representation) -> Representation:
    """Canonicalize tau-rigid summands by g-vector so caches can share work."""
    key = ("intern", g_vector(m), m.dims)
    with _intern_lock:
        existing = alg._caches.get(key)
        if existing is not None:
            return existing
        alg._caches[key] = m
        return m


_intern_lock = threading.Lock()


def _vectorize_map(f: ModuleMap):
    out = []
    for b in f.blocks:
        for row in b.data:
            out.extend(row)
    return out


def _span_dim(maps):
    rows = []
    for f in maps:
        vec = _vectorize_map(f)
        row = {j: v for j, v in enumerate(vec) if v}
        if row:
            rows.append(row)
    if not rows:
        return 0
    return sparse_rank(rows, max(max(r) for r in rows) + 1)


def _minimal_left_approximation(x: Representation, targets):
    """Minimal left add(U)-approximation f: X -> U'.

    Starts from the universal map assembled from Hom bases and greedily
    deletes copies while Hom(U', U_j) -> Hom(X, U_j) stays surjective for
    every j; the deletion order is fixed by the slot order, so the result is
    deterministic.  Returns (summand list, component maps).
    """
    comps = []
    for u in targets:
        for h in hom_space(x, u):
            comps.append((u, h))

    def is_approximation(active):
        for u in targets:
            want = hom_dim(x, u)
            if not want:
                continue
            through = []
            for k in active:
                part, f = comps[k]
                for psi in hom_space(part, u):
                    through.append(psi.compose(f))
            if _span_dim(through) < want:
                return False
        return True

    active = list(range(len(comps)))
    for k in range(len(comps)):
        trial = [i for i in active if i != k]
        if is_approximation(trial):
            active = trial
    return [comps[k] for k in active]


def _minimal_right_approximation(x: Representation, sources):
    """Minimal right add(U)-approximation g: U'' -> X (dual construction)."""
    comps = []
    for u in sources:
        for h in hom_space(u, x):
            comps.append((u, h))

    def is_approximation(active):
        for u in sources:
            want = hom_dim(u, x)
            if not want:
                continue
            through = []
            for k in active:
                part, f = comps[k]
                for psi in hom_space(u, part):
                    through.append(f.compose(psi))
            if _span_dim(through) < want:
                return False
        return True

    active = list(range(len(comps)))
    for k in range(len(comps)):
        trial = [i for i in active if i != k]
        if is_approximation(trial):
            active = trial
    return [comps[k] for k in active]


def _assemble_left(x, chosen):
    """Map X -> direct sum of the chosen targets."""
    parts = [u for u, _ in chosen]
    if not parts:
        z = zero_rep(x.algebra)
        return z, ModuleMap(x, z, [RatMat.zeros(0, d) for d in x.dims], check=False)
    total, incs, _ = direct_sum(parts)
    blocks = []
    for v in range(x.algebra.n):
        acc = None
        for (_, f) in chosen:
            b = f.blocks[v]
            acc = b if acc is None else acc.vstack(b)
        blocks.append(acc)
    return total, ModuleMap(x, total, blocks, check=False)


def _assemble_right(x, chosen):
    """Map from the direct sum of the chosen sources -> X."""
    parts = [u for u, _ in chosen]
    if not parts:
        z = zero_rep(x.algebra)
        return z, ModuleMap(z, x, [RatMat.zeros(d, 0) for d in x.dims], check=False)
    total, _, _ = direct_sum(parts)
    blocks = []
    for v in range(x.algebra.n):
        acc = None
        for (_, f) in chosen:
            b = f.blocks[v]
            acc = b if acc is None else acc.hstack(b)
        blocks.append(acc)
    return total, ModuleMap(total, x, blocks, check=False)


def _single_class(alg, y: Representation, context: str) -> Representation:
    """The single indecomposable underlying an exchange (co)kernel.

    Exchange (co)kernels are tau-rigid, and g-vectors identify tau-rigid
    modules up to isomorphism, so a registry hit on (g-vector, dims) resolves
    the class without re-running the decomposition machinery.
    """
    key = ("intern", g_vector(y), y.dims)
    with _intern_lock:
        hit = alg._caches.get(key)
    if hit is not None:
        return hit
    groups = decompose(y)
    if len(groups) != 1:
        raise MutationVerificationFailed(
            f"{context}: expected all summands isomorphic to one module, "
            f"got {len(groups)} classes with dims {[g[0].dims for g in groups]}")
    return _intern_module(alg, groups[0][0])


def _mutate_down_module(pair: TauTiltingPair, x: Representation):
    """Downward exchange X -> U' -> Y -> 0; a vanishing Y drops the support."""
    alg = pair.algebra
    others = [m for m in pair.modules if m is not x]
    chosen = _minimal_left_approximation(x, others)
    _, f = _assemble_left(x, chosen)
    y, _ = cokernel(f)
    if y.is_zero():
        candidates = [j for j in range(1, alg.n + 1)
                      if j not in pair.proj_slots
                      and all(m.dims[j - 1] == 0 for m in others)]
        if len(candidates) != 1:
            raise MutationVerificationFailed(
                f"support drop expected exactly one vertex, got {candidates}")
        return TauTiltingPair(alg, others, pair.proj_slots + (candidates[0],))
    znew = _single_class(alg, y, "down-mutation cokernel")
    return TauTiltingPair(alg, others + [znew], pair.proj_slots)


def _accepted(pair: TauTiltingPair, candidate: TauTiltingPair) -> bool:
    """A valid candidate sharing n-1 slots and differing from the input IS the
    unique second completion, so these checks certify the fast path."""
    shared = pair.slot_identities() & candidate.slot_identities()
    return len(shared) == pair.rank - 1 and candidate.key != pair.key


def _mutate_up_module(pair: TauTiltingPair, x: Representation):
    """Upward exchange at a module slot X in Fac(U).

    The kernel of a minimal right add(U)-approximation is tried first; when
    it passes the completion certificate it is the answer.  Otherwise the
    mutation is performed as a downward one over the opposite algebra via
    the transpose duality, which reverses the Fac order.
    """
    alg = pair.algebra
    others = [m for m in pair.modules if m is not x]
    try:
        chosen = _minimal_right_approximation(x, others)
        _, g = _assemble_right(x, chosen)
        z, _ = kernel(g)
        if not z.is_zero():
            znew = _single_class(alg, z, "up-mutation kernel")
            cand = TauTiltingPair(alg, others + [znew], pair.proj_slots)
            if _accepted(pair, cand):
                return cand
    except (ValueError, MutationVerificationFailed, DecompositionInconclusive):
        pass
    return _mutate_via_dual(pair, ("m", g_vector(x)))


def _mutate_module_slot(pair: TauTiltingPair, x: Representation, *, allow_dual=True):
    others = [m for m in pair.modules if m is not x]
    if fac_contains(others, x):
        if not allow_dual:
            raise MutationVerificationFailed(
                "dual-route mutation dispatched upward again; order reversal failed")
        return _mutate_up_module(pair, x)
    return _mutate_down_module(pair, x)


def _is_unit_g(g):
    return sum(abs(v) for v in g) == 1 and any(v == 1 for v in g)


def _dual_pair(pair: TauTiltingPair):
    """Transpose duality: tau-tilting pairs over A <-> pairs over A^op.

    Non-projective module summands become their transposes, projective module
    summands P(i) become projective slots i, and projective slots p become
    the projective modules P^op(p).  The bijection reverses the Fac order, so
    upward mutations dualize to downward ones.  Returns the dual pair and the
    slot-identity mapping.
    """
    alg = pair.algebra
    op = alg.opposite()
    modules = []
    proj_slots = []
    mapping = {}
    for m in pair.modules:
        g = g_vector(m)
        if _is_unit_g(g):
            k = g.index(1) + 1
            proj_slots.append(k)
            mapping[("m", g)] = ("p", k)
        else:
            tr = _intern_module(op, transpose_rep(m))
            modules.append(tr)
            mapping[("m", g)] = ("m", g_vector(tr))
    for p in pair.proj_slots:
        modules.append(projective(op, p))
        mapping[("p", p)] = ("m", g_vector(projective(op, p)))
    return TauTiltingPair(op, modules, proj_slots), mapping


def _mutate_via_dual(pair: TauTiltingPair, slot_id):
    """Perform a mutation as a downward mutation over the opposite algebra."""
    dual, mapping = _dual_pair(pair)
    dslot = mapping.get(slot_id)
    if dslot is None or dslot[0] != "m":
        raise MutationVerificationFailed(
            f"slot {slot_id} has no module image in the dual pair")
    x_op = None
    for m in dual.modules:
        if g_vector(m) == dslot[1]:
            x_op = m
            break
    if x_op is None:
        raise MutationVerificationFailed(
            f"dual pair lost the module for slot {slot_id}")
    result_op = _mutate_module_slot(dual, x_op, allow_dual=False)
    back, _ = _dual_pair(result_op)
    # match unchanged module summands back to the original objects
    orig = {g_vector(m): m for m in pair.modules}
    modules = [orig.get(g_vector(m), m) for m in back.modules]
    return TauTiltingPair(pair.algebra, modules, back.proj_slots)


def mutate(pair: TauTiltingPair, slot: int, *, _verify=True) -> TauTiltingPair:
    """Exchange the content of one slot; see the module docstring.

    Raises MutationVerificationFailed when any universal postcondition fails.
    """
    if not (1 <= slot <= pair.rank):
        raise ValueError(f"slot must be in 1..{pair.rank}")
    try:
        if slot <= len(pair.modules):
            result = _mutate_module_slot(pair, pair.modules[slot - 1])
        else:
            result = _mutate_via_dual(pair, pair.slot_identity(slot))
    except ValueError as exc:
        raise MutationVerificationFailed(f"mutation produced an invalid pair: {exc}") from exc

    shared = pair.slot_identities() & result.slot_identities()
    if len(shared) != pair.rank - 1:
        raise MutationVerificationFailed(
            f"result shares {len(shared)} slots with the input, expected {pair.rank - 1}")
    if result.key == pair.key:
        raise MutationVerificationFailed("mutation returned the same pair")
    if _verify:
        back_slot = exchanged_slot(result, pair)
        back = mutate(result, back_slot, _verify=False)
        if back.key != pair.key:
            raise MutationVerificationFailed("mutation is not involutive at this slot")
    return result


def exchanged_slot(pair: TauTiltingPair, other: TauTiltingPair) -> int:
    """The 1-based slot of `pair` whose content is not a slot of `other`."""
    other_ids = other.slot_identities()
    found = [s for s in range(1, pair.rank + 1)
             if pair.slot_identity(s) not in other_ids]
    if len(found) != 1:
        raise MutationVerificationFailed(
            f"pairs do not lie on a common exchange edge ({len(found)} fresh slots)")
    return found[0]


class ExchangeGraph:
    """BFS-enumerated exchange graph with deterministic node and edge sets."""

    def __init__(self, nodes, edges, status, cutoff_reason=None):
        self.nodes = nodes              # key -> TauTiltingPair
        self.edges = edges              # (key_lo, key_hi) -> (slot_in_lo, slot_in_hi)
        self.status = status            # "closed" | "cutoff"
        self.cutoff_reason = cutoff_reason

    @property
    def closed(self) -> bool:
        return self.status == "closed"

    def neighbor_keys(self, key):
        out = []
        for (a, b) in self.edges:
            if a == key:
                out.append(b)
            elif b == key:
                out.append(a)
        return out

    def is_n_regular(self) -> bool:
        n = next(iter(self.nodes.values())).rank if self.nodes else 0
        return all(len(self.neighbor_keys(k)) == n for k in self.nodes)

    def is_connected(self) -> bool:
        if not self.nodes:
            return True
        seen = set()
        stack = [next(iter(sorted(self.nodes)))]
        while stack:
            k = stack.pop()
            if k in seen:
                continue
            seen.add(k)
            stack.extend(kk for kk in self.neighbor_keys(k) if kk not in seen)
        return len(seen) == len(self.nodes)


def exchange_graph(alg: AlgebraPresentation, max_pairs: int = 10000,
                   max_depth: int = 64, workers: int = 1) -> ExchangeGraph:
    """Breadth-first enumeration from the initial pair, mutating every slot.

    Layers are expanded in canonical key order and merged deterministically,
    so the node and edge sets are identical for any worker count.  status is
    "closed" iff the frontier exhausts within the limits.
    """
    if max_pairs <= 0 or max_depth <= 0:
        raise ValueError("limits must be positive")
    start = initial_pair(alg)
    nodes = {start.key: start}
    edges = {}
    frontier = [start]
    status, reason = "closed", None
    depth = 0
    while frontier:
        if depth >= max_depth:
            status, reason = "cutoff", "max_depth"
            break
        frontier.sort(key=lambda p: p.key)
        tasks = [(p, s) for p in frontier for s in range(1, alg.n + 1)]
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(lambda t: mutate(t[0], t[1]), tasks))
        else:
            results = [mutate(p, s) for p, s in tasks]
        new = []
        truncated = False
        for (p, s), res in zip(tasks, results):
            if res.key not in nodes:
                if len(nodes) >= max_pairs:
                    truncated = True
                    continue
                nodes[res.key] = res
                new.append(res)
            res = nodes[res.key]
            lo, hi = sorted([p.key, res.key])
            if (lo, hi) not in edges:
                if p.key == lo:
                    edges[(lo, hi)] = (s, exchanged_slot(res, p))
                else:
                    edges[(lo, hi)] = (exchanged_slot(res, p), s)
        if truncated:
            status, reason = "cutoff", "max_pairs"
            break
        frontier = new
        depth += 1
    return ExchangeGraph(nodes, edges, status, reason)
