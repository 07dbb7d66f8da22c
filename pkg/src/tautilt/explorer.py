"""Whole-algebra analyses: enumeration sweeps, the long-brick experiment,
and serialization to JSON reports and DOT exchange graphs.

Reports are deterministic: pairs are processed in canonical key order, all
randomized sampling is seeded, and the JSON serializer rejects anything that
is not an exact integer, string, boolean, or container thereof.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ThreadPoolExecutor

from .algebra import AlgebraPresentation
from .bricks import brick_for_slot, x_matrix
from .errors import (
    BrickVerificationFailed,
    CutoffReached,
    MutationVerificationFailed,
    NonIntegral,
)
from .gc import c_vectors, g_matrix, c_matrix, is_sign_coherent, verify_ar_formula
from .pairs import ExchangeGraph, exchange_graph, initial_pair, mutate
from .reps import (
    d_matrix,
    dimension_vector,
    direct_sum,
    g_vector,
    injective,
    is_isomorphic,
    projective,
    simple,
)

DEFAULT_MAX_PAIRS = 10000
DEFAULT_MAX_DEPTH = 64
DEFAULT_AR_SAMPLES = 100
DEFAULT_SEED = 0


class AnalysisReport:
    """Everything `analyze` computed, with a fixed-order dict rendering."""

    def __init__(self, data: dict):
        self.data = data

    @property
    def ok(self) -> bool:
        return not self.data["verification"]["failures"]

    @property
    def pair_count(self) -> int:
        return self.data["graph"]["pair_count"]

    @property
    def max_brick_length(self):
        return self.data["max_brick_length"]

    def to_dict(self) -> dict:
        return self.data


class LongBrickSearch:
    """Outcome of the pigeonhole search for a brick of composition length >= t."""

    def __init__(self, status, target, certificate=None, proof=None):
        self.status = status  # "found" | "not_found"
        self.target = target
        self.certificate = certificate
        self.proof = proof

    @property
    def found(self) -> bool:
        return self.status == "found"


def _pair_payload(pair, certs, cert_errors):
    slots = []
    for kind, content in pair.slots():
        if kind == "module":
            slots.append({"type": "module",
                          "dim_vector": list(dimension_vector(content)),
                          "g": list(g_vector(content))})
        else:
            slots.append({"type": "projective", "vertex": content})
    payload = {
        "key": [list(g) for g in pair.key],
        "slots": slots,
        "g_matrix": [list(r) for r in g_matrix(pair)],
        "c_matrix": [list(r) for r in c_matrix(pair)],
        "bricks": [],
    }
    for s, cert in enumerate(certs, start=1):
        if cert is None:
            payload["bricks"].append({"slot": s, "error": cert_errors.get(s, "unavailable")})
            continue
        payload["bricks"].append({
            "slot": s,
            "c_vector": list(cert.c_vector),
            "dim_vector": list(cert.dim_vector),
            "multiplier": cert.multiplier,
            "length": cert.composition_length,
            "end_dim": cert.evidence["end_dim"],
            "perp_checks": list(cert.evidence["perp_checks"]),
            "relation_check": cert.evidence["relation_check"],
        })
    return payload


def _analyze_pair(pair):
    """Per-pair verification work; returns (payload, failures, certs)."""
    failures = []
    n = pair.rank
    g = g_matrix(pair)
    try:
        c = c_matrix(pair)
    except NonIntegral as exc:
        return None, [f"pair {pair.key}: {exc}"], [None] * n
    # Definition identity: G * C^T must be the identity, entry-exact.
    for i in range(n):
        for j in range(n):
            v = sum(g[i][k] * c[j][k] for k in range(n))
            if v != (1 if i == j else 0):
                failures.append(f"pair {pair.key}: G*C^T != I at ({i},{j})")
    for j in range(n):
        col = tuple(c[i][j] for i in range(n))
        if not is_sign_coherent(col):
            failures.append(f"pair {pair.key} slot {j + 1}: c-vector {col} not sign-coherent")
        if not any(col):
            failures.append(f"pair {pair.key} slot {j + 1}: zero c-vector")
    certs = []
    cert_errors = {}
    for s in range(1, n + 1):
        try:
            certs.append(brick_for_slot(pair, s))
        except (BrickVerificationFailed, MutationVerificationFailed) as exc:
            certs.append(None)
            cert_errors[s] = str(exc)
            failures.append(f"pair {pair.key} slot {s}: {exc}")
    if all(c is not None for c in certs):
        try:
            x_matrix(pair, certs)
        except BrickVerificationFailed as exc:
            failures.append(f"pair {pair.key}: {exc}")
    payload = _pair_payload(pair, certs, cert_errors)
    return payload, failures, certs


def analyze(alg: AlgebraPresentation, max_pairs: int = DEFAULT_MAX_PAIRS,
            max_depth: int = DEFAULT_MAX_DEPTH, ar_samples: int = DEFAULT_AR_SAMPLES,
            seed: int = DEFAULT_SEED, workers: int = 1) -> AnalysisReport:
    """Enumerate the exchange graph and run every verification sweep.

    Produces a deterministic report: byte-identical JSON for repeated runs
    and for any worker count.
    """
    delta = d_matrix(alg)
    graph = exchange_graph(alg, max_pairs=max_pairs, max_depth=max_depth, workers=workers)
    keys = sorted(graph.nodes)
    pairs = [graph.nodes[k] for k in keys]

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_analyze_pair, pairs))
    else:
        results = [_analyze_pair(p) for p in pairs]

    failures = []
    payloads = []
    certs_by_key = {}
    for pair, (payload, fails, certs) in zip(pairs, results):
        failures.extend(fails)
        if payload is not None:
            payloads.append(payload)
        certs_by_key[pair.key] = certs

    # edge consistency: both incident pairs must label the edge with the same brick
    edge_checked = 0
    edge_payload = []
    for (lo, hi), (slo, shi) in sorted(graph.edges.items()):
        c1 = certs_by_key.get(lo, [None])[slo - 1] if lo in certs_by_key else None
        c2 = certs_by_key.get(hi, [None])[shi - 1] if hi in certs_by_key else None
        if c1 is None or c2 is None:
            continue
        edge_checked += 1
        if not is_isomorphic(c1.brick, c2.brick):
            failures.append(f"edge {lo} -- {hi}: incident bricks are not isomorphic")
        edge_payload.append({
            "a": [list(g) for g in lo],
            "b": [list(g) for g in hi],
            "slot_a": slo,
            "slot_b": shi,
            "brick_dim_vector": list(c1.dim_vector),
        })

    # seeded AR-formula sweep over sums of enumerated indecomposables
    pool_mods = _ar_pool(alg, pairs)
    rng = random.Random(seed)
    ar_failures = 0
    for _ in range(ar_samples):
        m = _random_sum(rng, pool_mods)
        n_mod = _random_sum(rng, pool_mods)
        res = verify_ar_formula(m, n_mod)
        if not res["equal"]:
            ar_failures += 1
            failures.append(
                f"AR formula failed: dims {m.dims} vs {n_mod.dims}: "
                f"{res['lhs']} != {res['rhs']}")

    lengths = [b["length"] for p in payloads for b in p["bricks"] if "length" in b]
    brick_checks = sum(1 for p in payloads for b in p["bricks"] if "length" in b)
    sign_checked = sum(len(p["c_matrix"]) for p in payloads)

    data = {
        "algebra": {**alg.describe(), "d_matrix": list(delta), "delta_max": max(delta)},
        "graph": {
            "status": graph.status,
            "cutoff_reason": graph.cutoff_reason,
            "pair_count": len(graph.nodes),
            "edge_count": len(graph.edges),
            "tau_tilting_finite": True if graph.closed else None,
        },
        "pairs": payloads,
        "edges": edge_payload,
        "verification": {
            "definition_identity_pairs": len(payloads),
            "sign_coherence_checked": sign_checked,
            "brick_checks": brick_checks,
            "edge_consistency_checked": edge_checked,
            "ar_samples": ar_samples,
            "ar_failures": ar_failures,
            "failures": failures,
        },
        "max_brick_length": max(lengths) if lengths else None,
    }
    return AnalysisReport(data)


def _ar_pool(alg, pairs):
    pool = []
    seen = set()
    for pair in pairs:
        for m in pair.modules:
            if g_vector(m) not in seen:
                seen.add(g_vector(m))
                pool.append(m)
    for i in range(1, alg.n + 1):
        for m in (simple(alg, i), projective(alg, i), injective(alg, i)):
            key = ("sp", m.token)
            if key not in seen:
                seen.add(key)
                pool.append(m)
    return pool


def _random_sum(rng, pool):
    k = rng.randint(1, 3)
    parts = [pool[rng.randrange(len(pool))] for _ in range(k)]
    if len(parts) == 1:
        return parts[0]
    total, _, _ = direct_sum(parts)
    return total


def find_long_brick(alg: AlgebraPresentation, target: int,
                    max_pairs: int = DEFAULT_MAX_PAIRS,
                    max_depth: int = DEFAULT_MAX_DEPTH) -> LongBrickSearch:
    """Pigeonhole search: scan c-vectors in BFS order until one has
    |sum c_i| >= delta_max * target, then certify the brick at that slot.

    On a closed graph with no hit, returns a not-found result carrying the
    proof (the algebra is tau-tilting finite and the bound is unattainable).
    Raises CutoffReached when the limits are hit on an open graph.
    """
    if target < 1:
        raise ValueError("target length must be >= 1")
    delta = d_matrix(alg)
    threshold = max(delta) * target

    def scan(pair):
        for s, col in enumerate(c_vectors(pair), start=1):
            if sum(abs(x) for x in col) >= threshold:
                cert = brick_for_slot(pair, s)
                if cert.composition_length < target:
                    raise BrickVerificationFailed(
                        f"certified brick shorter than the bound promises "
                        f"({cert.composition_length} < {target})",
                        pair_key=pair.key, slot=s)
                return cert
        return None

    start = initial_pair(alg)
    seen = {start.key}
    frontier = [start]
    max_sum = 0
    depth = 0
    truncated = False
    cert = scan(start)
    if cert is not None:
        return LongBrickSearch("found", target, certificate=cert)
    while frontier:
        if depth >= max_depth:
            truncated = True
            break
        frontier.sort(key=lambda p: p.key)
        new = []
        for pair in frontier:
            for s in range(1, alg.n + 1):
                res = mutate(pair, s)
                if res.key in seen:
                    continue
                if len(seen) >= max_pairs:
                    truncated = True
                    continue
                seen.add(res.key)
                cert = scan(res)
                if cert is not None:
                    return LongBrickSearch("found", target, certificate=cert)
                for col in c_vectors(res):
                    max_sum = max(max_sum, sum(abs(x) for x in col))
                new.append(res)
        if truncated:
            break
        frontier = new
        depth += 1
    if truncated:
        raise CutoffReached(
            f"no brick of length >= {target} within max_pairs={max_pairs}, "
            f"max_depth={max_depth} (graph still open)")
    for col in c_vectors(start):
        max_sum = max(max_sum, sum(abs(x) for x in col))
    return LongBrickSearch("not_found", target, proof={
        "closed": True,
        "pair_count": len(seen),
        "max_abs_c_sum": max_sum,
        "threshold": threshold,
    })


# -- serialization -------------------------------------------------------------


def _check_json_types(obj, path="$"):
    if obj is None or isinstance(obj, (bool, str)):
        return
    if isinstance(obj, int):
        return
    if isinstance(obj, list):
        for i, v in enumerate(obj):
            _check_json_types(v, f"{path}[{i}]")
        return
    if isinstance(obj, dict):
        for k, v in obj.items():
            if not isinstance(k, str):
                raise NonIntegral(f"non-string key {k!r} at {path}")
            _check_json_types(v, f"{path}.{k}")
        return
    raise NonIntegral(f"non-integer value {obj!r} of type {type(obj).__name__} at {path}")


def export_json(report) -> str:
    """Byte-stable JSON rendering; rejects any non-integer numeric leak."""
    data = report.to_dict() if hasattr(report, "to_dict") else report
    _check_json_types(data)
    return json.dumps(data, indent=2, ensure_ascii=True) + "\n"


def graph_payload(graph: ExchangeGraph) -> dict:
    nodes = []
    for key in sorted(graph.nodes):
        pair = graph.nodes[key]
        slots = []
        for kind, content in pair.slots():
            if kind == "module":
                slots.append({"type": "module",
                              "dim_vector": list(dimension_vector(content)),
                              "g": list(g_vector(content))})
            else:
                slots.append({"type": "projective", "vertex": content})
        nodes.append({"key": [list(g) for g in key], "slots": slots})
    edges = []
    for (lo, hi), (slo, shi) in sorted(graph.edges.items()):
        edges.append({"a": [list(g) for g in lo], "b": [list(g) for g in hi],
                      "slot_a": slo, "slot_b": shi})
    return {
        "status": graph.status,
        "cutoff_reason": graph.cutoff_reason,
        "pair_count": len(graph.nodes),
        "edge_count": len(graph.edges),
        "nodes": nodes,
        "edges": edges,
    }


def export_dot(graph: ExchangeGraph, certificates=None) -> str:
    """DOT rendering: nodes labelled by sorted g-vectors, edges by the brick
    dimension vector when certificates are supplied."""
    keys = sorted(graph.nodes)
    index = {k: i for i, k in enumerate(keys)}
    lines = ["graph exchange {", "  node [shape=box];"]
    for k in keys:
        label = str([list(g) for g in k]).replace(" ", "")
        lines.append(f'  n{index[k]} [label="{label}"];')
    for (lo, hi), (slo, shi) in sorted(graph.edges.items()):
        attr = ""
        if certificates and (lo, hi) in certificates:
            cert = certificates[(lo, hi)]
            dims = cert.dim_vector if hasattr(cert, "dim_vector") else cert
            label = str(list(dims)).replace(" ", "")
            attr = f' [label="{label}"]'
        lines.append(f"  n{index[lo]} -- n{index[hi]}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def edge_certificates(graph: ExchangeGraph):
    """Brick certificate per edge, computed from the lexicographically
    smaller endpoint."""
    out = {}
    for (lo, hi), (slo, shi) in sorted(graph.edges.items()):
        out[(lo, hi)] = brick_for_slot(graph.nodes[lo], slo)
    return out
