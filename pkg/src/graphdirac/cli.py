"""Command-line front end.

Verbs: gen, spectral, check, connes, connes-matrix, truncation.  Results go
to stdout as JSON/CSV (or to --out), diagnostics to stderr; the exit code is
0 only when every requested computation passed or was certified, 2 for usage
and input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import connes, graph, operators, spectral


def _load_graph(path):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise SystemExit(f"error: cannot read {path}: {exc}")
    try:
        return graph.parse_graph(data)
    except graph.GraphParseError as exc:
        raise SystemExit(f"error: {path}: {exc}")


def _emit(text, out):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _cmd_gen(args):
    try:
        if args.family == "path":
            g = graph.build_path(_require(args.n, "--n"))
        elif args.family == "cycle":
            g = graph.build_cycle(_require(args.n, "--n"))
        elif args.family == "tree":
            g = graph.build_binary_tree(_require(args.depth, "--depth"))
        else:
            g = graph.build_random(_require(args.n, "--n"),
                                   _require(args.p, "--p"), args.seed)
    except (ValueError, graph.GenerationError) as exc:
        raise SystemExit(f"error: {exc}")
    payload = graph.serialize_graph(g, fmt=args.format).decode("utf-8")
    _emit(payload, args.out)
    return 0


def _require(value, flag):
    if value is None:
        raise SystemExit(f"error: {flag} is required for this family")
    return value


def _cmd_spectral(args):
    g = _load_graph(args.graph)
    bounds = spectral.adjacency_norm_bounds(g)
    _emit(json.dumps(asdict(bounds)), args.out)
    return 0


def _identity_checks(g):
    d = operators.coboundary_map(g)
    d1, d2 = operators.d1_map(g), operators.d2_map(g)
    A, V = operators.adjacency_map(g), operators.degree_map(g)
    lap = operators.laplacian_map(g)
    B = operators.incidence_map(g)
    D = operators.dirac_operator(g)
    chi = operators.chirality_map(g)
    rng = np.random.default_rng(0)
    f = rng.standard_normal(g.node_count)
    e_antisym = np.asarray(operators.apply_d(g, f))
    checks = [
        ("d*d = -2Δ", (d.adjoint() @ d).entrywise_equal(-2 * lap)),
        ("d1*d1 = V", (d1.adjoint() @ d1).entrywise_equal(V)),
        ("d2*d2 = V", (d2.adjoint() @ d2).entrywise_equal(V)),
        ("d1*d2 = A", (d1.adjoint() @ d2).entrywise_equal(A)),
        ("B·Bᵗ = V - A", (B @ B.adjoint()).entrywise_equal(V - A)),
        ("d = d1 - d2", d.entrywise_equal(d1 - d2)),
        ("d* = δ1 - δ2", d.adjoint().entrywise_equal(
            operators.delta1_map(g) - operators.delta2_map(g))),
        ("d* = 2δ on H1a", bool(np.allclose(
            d.adjoint().apply(e_antisym), 2.0 * operators.apply_delta1(g, e_antisym),
            atol=1e-12))),
        ("χD + Dχ = 0", ((chi @ D.assembled) + (D.assembled @ chi)).entrywise_equal(
            operators.LinearMap(0 * chi.matrix, "H", "H"))),
        ("‖df‖² = (f|-2Δf)", bool(abs(
            float(np.sum(np.asarray(operators.apply_d(g, f)) ** 2))
            - float(f @ ((-2 * lap).apply(f)))) <= 1e-9)),
    ]
    return checks


def _cmd_check(args):
    g = _load_graph(args.graph)
    checks = _identity_checks(g)
    all_ok = True
    lines = []
    for name, ok in checks:
        lines.append(f"{name}: {'PASS' if ok else 'FAIL'}")
        all_ok = all_ok and ok
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if all_ok else 1


def _cmd_connes(args):
    g = _load_graph(args.graph)
    try:
        result = connes.connes_distance(g, args.src, args.dst, tol=args.tol)
    except ValueError as exc:
        raise SystemExit(f"error: {exc}")
    _emit(result.to_json(), args.out)
    if not result.certified:
        print(f"warning: solve not certified (kkt residual {result.kkt_residual:.3g})",
              file=sys.stderr)
        return 1
    return 0


def _cmd_connes_matrix(args):
    g = _load_graph(args.graph)
    lines = ["i,j,distance"]
    all_certified = True
    for i in range(g.node_count):
        for j in range(i + 1, g.node_count):
            result = connes.connes_distance(g, i, j, tol=args.tol)
            all_certified = all_certified and result.certified
            lines.append(f"{i},{j},{result.distance:.12g}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if all_certified else 1


def _cmd_truncation(args):
    depths = list(range(1, args.max_depth + 1))
    if args.family in ("path", "cycle"):
        depths = [d for d in depths if d >= (2 if args.family == "path" else 3)]
    try:
        report = spectral.truncation_norm_sequence(args.family, depths)
    except ValueError as exc:
        raise SystemExit(f"error: {exc}")
    _emit(report.to_csv(), args.out)
    return 0 if report.monotone else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="graphdirac",
        description="Graph calculus, spectral bounds and Connes distances")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("gen", help="generate a graph file")
    p.add_argument("--family", required=True, choices=["path", "cycle", "tree", "random"])
    p.add_argument("--n", type=int)
    p.add_argument("--depth", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--format", choices=["edgelist", "json"], default="edgelist")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("spectral", help="adjacency norm bounds as JSON")
    p.add_argument("--graph", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_spectral)

    p = sub.add_parser("check", help="run the operator identity suite")
    p.add_argument("--graph", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("connes", help="distance between two nodes as JSON")
    p.add_argument("--graph", required=True)
    p.add_argument("--from", dest="src", type=int, required=True)
    p.add_argument("--to", dest="dst", type=int, required=True)
    p.add_argument("--tol", type=float, default=connes.DEFAULT_TOL)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_connes)

    p = sub.add_parser("connes-matrix", help="all-pairs distances as CSV")
    p.add_argument("--graph", required=True)
    p.add_argument("--tol", type=float, default=connes.DEFAULT_TOL)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_connes_matrix)

    p = sub.add_parser("truncation", help="norms of nested truncations as CSV")
    p.add_argument("--family", default="tree", choices=["tree", "binary_tree", "path", "cycle"])
    p.add_argument("--max-depth", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_truncation)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return 2
        raise


if __name__ == "__main__":
    sys.exit(main())
