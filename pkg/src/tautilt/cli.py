"""Command-line interface.

Exit codes: 0 all checks pass; 2 verification failure; 3 cutoff without an
answer; 4 input error.
"""

from __future__ import annotations

import argparse
import sys

from .algebra import parse_algebra
from .errors import (
    BrickTestInconclusive,
    BrickVerificationFailed,
    CutoffReached,
    DecompositionInconclusive,
    MutationVerificationFailed,
    NonIntegral,
    ParseError,
    TautiltError,
)
from .explorer import (
    analyze,
    edge_certificates,
    export_dot,
    export_json,
    find_long_brick,
    graph_payload,
)
from .gc import c_matrix, g_matrix
from .pairs import exchange_graph
from .reps import d_matrix

EXIT_OK = 0
EXIT_VERIFICATION = 2
EXIT_CUTOFF = 3
EXIT_INPUT = 4


def _load(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_algebra(text)


def _write(path, text):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def cmd_check(args) -> int:
    alg = _load(args.algebra)
    info = alg.describe()
    delta = d_matrix(alg)
    print(f"vertices: {info['vertices']}")
    print(f"dim A = {info['dim']}  (nilpotency bound {info['nilpotency_bound']})")
    print(f"D_A = diag{tuple(delta)}")
    print("basis sizes by (source->target):")
    for k, v in info["basis_sizes"].items():
        print(f"  {k}: {v}")
    return EXIT_OK


def cmd_pairs(args) -> int:
    alg = _load(args.algebra)
    graph = exchange_graph(alg, max_pairs=args.max_pairs, max_depth=args.max_depth,
                           workers=args.workers)
    print(f"pairs: {len(graph.nodes)}  edges: {len(graph.edges)}  status: {graph.status}"
          + (f" ({graph.cutoff_reason})" if graph.cutoff_reason else ""))
    if args.json:
        _write(args.json, export_json(graph_payload(graph)))
        print(f"wrote {args.json}")
    if args.dot:
        certs = edge_certificates(graph)
        _write(args.dot, export_dot(graph, certs))
        print(f"wrote {args.dot}")
    return EXIT_OK


def cmd_cvectors(args) -> int:
    alg = _load(args.algebra)
    graph = exchange_graph(alg, max_pairs=args.max_pairs, max_depth=args.max_depth,
                           workers=args.workers)
    failures = []
    payload = []
    for key in sorted(graph.nodes):
        pair = graph.nodes[key]
        g = g_matrix(pair)
        try:
            c = c_matrix(pair)
        except NonIntegral as exc:
            failures.append(str(exc))
            continue
        n = pair.rank
        identity_ok = all(
            sum(g[i][k] * c[j][k] for k in range(n)) == (1 if i == j else 0)
            for i in range(n) for j in range(n))
        coherent = all(
            (all(c[i][j] >= 0 for i in range(n)) or all(c[i][j] <= 0 for i in range(n)))
            and any(c[i][j] for i in range(n))
            for j in range(n))
        if not identity_ok:
            failures.append(f"pair {key}: C != (G^-1)^T")
        if not coherent:
            failures.append(f"pair {key}: sign-incoherent or zero c-vector")
        payload.append({
            "key": [list(x) for x in key],
            "g_matrix": [list(r) for r in g],
            "c_matrix": [list(r) for r in c],
            "identity_ok": identity_ok,
            "sign_coherent": coherent,
        })
    print(f"pairs: {len(graph.nodes)}  status: {graph.status}")
    print(f"identity and sign-coherence failures: {len(failures)}")
    for f in failures:
        print(f"  FAIL {f}")
    if args.json:
        doc = {"status": graph.status, "pair_count": len(graph.nodes),
               "pairs": payload, "failures": failures}
        _write(args.json, export_json(doc))
        print(f"wrote {args.json}")
    return EXIT_VERIFICATION if failures else EXIT_OK


def _run_analysis(args):
    alg = _load(args.algebra)
    return analyze(alg, max_pairs=args.max_pairs, max_depth=args.max_depth,
                   ar_samples=getattr(args, "samples", 100), seed=args.seed,
                   workers=args.workers)


def cmd_bricks(args) -> int:
    report = _run_analysis(args)
    data = report.to_dict()
    ver = data["verification"]
    print(f"pairs: {data['graph']['pair_count']}  status: {data['graph']['status']}")
    print(f"brick certificates verified: {ver['brick_checks']}")
    print(f"max brick composition length: {data['max_brick_length']}")
    print(f"failures: {len(ver['failures'])}")
    for f in ver["failures"]:
        print(f"  FAIL {f}")
    if args.json:
        _write(args.json, export_json(report))
        print(f"wrote {args.json}")
    return EXIT_VERIFICATION if ver["failures"] else EXIT_OK


def cmd_bt1(args) -> int:
    alg = _load(args.algebra)
    result = find_long_brick(alg, args.target_length, max_pairs=args.max_pairs,
                             max_depth=args.max_depth)
    if result.found:
        cert = result.certificate
        print(f"found a brick with {cert.composition_length} composition factors "
              f"(target {args.target_length})")
        print(f"  dimension vector: {list(cert.dim_vector)}")
        print(f"  witnessing c-vector: {list(cert.c_vector)} (slot {cert.slot})")
        print(f"  multiplier: {cert.multiplier}")
        print(f"  pair key: {[list(g) for g in cert.pair_key]}")
        return EXIT_OK
    proof = result.proof
    print(f"no brick of length >= {args.target_length}: exchange graph closed after "
          f"{proof['pair_count']} pairs; max sum |c_i| = {proof['max_abs_c_sum']} "
          f"< threshold {proof['threshold']}")
    print("the algebra is tau-tilting finite and the bound is unattainable")
    return EXIT_OK


def cmd_verify(args) -> int:
    report = _run_analysis(args)
    data = report.to_dict()
    ver = data["verification"]
    print(f"pairs: {data['graph']['pair_count']}  status: {data['graph']['status']}")
    print(f"definition identity pairs checked: {ver['definition_identity_pairs']}")
    print(f"sign-coherence columns checked: {ver['sign_coherence_checked']}")
    print(f"brick certificates verified: {ver['brick_checks']}")
    print(f"edge consistency checked: {ver['edge_consistency_checked']}")
    print(f"AR-formula samples: {ver['ar_samples']}  failures: {ver['ar_failures']}")
    print(f"total failures: {len(ver['failures'])}")
    for f in ver["failures"]:
        print(f"  FAIL {f}")
    if args.json:
        _write(args.json, export_json(report))
        print(f"wrote {args.json}")
    return EXIT_VERIFICATION if ver["failures"] else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tautilt",
        description="Exact tau-tilting pairs, g/c-matrices and brick labels "
                    "for quiver algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, samples=False, dot=False, json_out=True):
        p.add_argument("algebra", help="path to the algebra presentation (JSON)")
        p.add_argument("--max-pairs", type=int, default=10000)
        p.add_argument("--max-depth", type=int, default=64)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--seed", type=int, default=0)
        if json_out:
            p.add_argument("--json", help="write a JSON report to this path")
        if dot:
            p.add_argument("--dot", help="write a DOT exchange graph to this path")
        if samples:
            p.add_argument("--samples", type=int, default=100,
                           help="number of random AR-formula checks")

    p = sub.add_parser("check", help="validate a presentation and print its digest")
    p.add_argument("algebra")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("pairs", help="enumerate the exchange graph")
    common(p, dot=True)
    p.set_defaults(func=cmd_pairs)

    p = sub.add_parser("cvectors", help="G/C matrices per pair with identity checks")
    common(p)
    p.set_defaults(func=cmd_cvectors)

    p = sub.add_parser("bricks", help="brick certificates and verification sweep")
    common(p, samples=True)
    p.set_defaults(func=cmd_bricks)

    p = sub.add_parser("bt1", help="search for a brick with many composition factors")
    common(p, json_out=False)
    p.add_argument("--target-length", type=int, required=True)
    p.set_defaults(func=cmd_bt1)

    p = sub.add_parser("verify", help="full invariant suite incl. random AR checks")
    common(p, samples=True)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CutoffReached as exc:
        print(f"cutoff: {exc}", file=sys.stderr)
        return EXIT_CUTOFF
    except (MutationVerificationFailed, BrickVerificationFailed, NonIntegral,
            DecompositionInconclusive, BrickTestInconclusive) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    except TautiltError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
