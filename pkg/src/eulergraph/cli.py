"""Command-line interface.

Every subcommand reads one graph (``--graph FILE`` or ``--generate SPEC``)
where it needs one, honours ``--seed`` for randomised work and writes
json, csv or plain text. Exit codes: 0 success, 1 input error, 2 domain
error, 3 capacity error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import einstein, extremal, geodesic, level_surface, morse, random_er, topology
from .errors import EulerGraphError, InputError
from .graph import Graph, as_probability, generate_from_spec, parse_graph, serialize_graph


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _frac(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _load_graph(args) -> Graph:
    if args.graph and args.generate:
        raise InputError("give exactly one of --graph and --generate")
    if args.generate:
        return generate_from_spec(args.generate)
    if args.graph:
        fmt = args.graph_format or ("json" if args.graph.endswith(".json") else "edge_list")
        try:
            with open(args.graph, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.graph}: {exc.strerror}") from None
        return parse_graph(text, fmt)
    raise InputError("a graph is required: --graph FILE or --generate SPEC")


def _emit(args, text_lines, payload, rows=None):
    out = sys.stdout
    if args.format == "json":
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    elif args.format == "csv":
        if rows is None:
            raise InputError("this subcommand has no csv output")
        w = csv.writer(out, lineterminator="\n")
        for row in rows:
            w.writerow(row)
    else:
        for line in text_lines:
            out.write(f"{line}\n")


def cmd_chi(args):
    g = _load_graph(args)
    if args.engine == "clique":
        chi = topology.euler_characteristic(g)
    else:
        chi = topology.euler_characteristic_ph(g, seed=args.seed if args.random_order else None)
    _emit(args, [chi], {"chi": chi}, [["chi"], [chi]])


def cmd_curvature(args):
    g = _load_graph(args)
    if args.samples:
        if args.vertex is None:
            raise InputError("--samples needs --vertex")
        mean, err = morse.curvature_expectation(g, args.vertex, args.samples, args.seed)
        exact = morse.exact_index_expectation(g, args.vertex)
        _emit(
            args,
            [f"{mean:.12g} +- {err:.3g} (exact {_frac(exact)})"],
            {"vertex": args.vertex, "estimate": mean, "stderr": err, "exact": _frac(exact)},
            [["vertex", "estimate", "stderr", "exact"], [args.vertex, mean, err, _frac(exact)]],
        )
        return
    report = morse.curvature_report(g)
    verts = range(g.n) if args.vertex is None else [args.vertex]
    lines = [f"{v} {_frac(report.per_vertex[v])}" for v in verts] + [f"total {_frac(report.total)}"]
    payload = {"curvature": [_frac(report.per_vertex[v]) for v in verts], "total": _frac(report.total)}
    rows = [["vertex", "curvature"]] + [[v, _frac(report.per_vertex[v])] for v in verts]
    _emit(args, lines, payload, rows)


def _load_function(args, g):
    if args.function:
        try:
            with open(args.function, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.function}: {exc.strerror}") from None
        try:
            return morse.as_function(g, morse.VertexFunction.from_json(text))
        except json.JSONDecodeError as exc:
            raise InputError(f"bad function json: {exc.msg}") from None
    return morse.sample_function(g, args.seed)


def cmd_index(args):
    g = _load_graph(args)
    f = _load_function(args, g)
    idx = [morse.index(g, f, x) for x in g.vertices]
    sym = [morse.symmetric_index(g, f, x) for x in g.vertices]
    total = morse.poincare_hopf_sum(g, f)
    lines = [f"{x} {idx[x]} {_frac(sym[x])}" for x in g.vertices] + [f"sum {total}"]
    payload = {"function": list(f.values), "index": idx, "symmetric_index": [_frac(s) for s in sym], "sum": total}
    rows = [["vertex", "index", "symmetric_index"]] + [[x, idx[x], _frac(sym[x])] for x in g.vertices]
    _emit(args, lines, payload, rows)


def cmd_levelset(args):
    g = _load_graph(args)
    f = _load_function(args, g)
    if args.threshold is not None:
        try:
            threshold = float(Fraction(args.threshold))
        except ValueError:
            raise InputError(f"bad threshold {args.threshold!r}") from None
        surf = level_surface.hypersurface(g, f, threshold)
        chi = topology.euler_characteristic(surf.graph)
        payload = {
            "n": surf.graph.n,
            "edges": [list(e) for e in surf.graph.edges],
            "surface_vertices": [list(e) for e in surf.surface_vertices],
            "chi": chi,
        }
        _emit(args, [serialize_graph(surf.graph).rstrip(), f"chi {chi}"], payload)
        return
    verts = list(g.vertices) if args.vertex is None else [args.vertex]
    payload = []
    lines = []
    for x in verts:
        surf = level_surface.center_surface(g, f, x, mode=args.completion)
        entry = json.loads(surf.to_json())
        entry["vertex"] = x
        entry["chi"] = topology.euler_characteristic(surf.graph)
        if args.dimension is not None:
            rep = level_surface.genus_lemma_check(g, f, x, args.dimension)
            entry["symmetric_index"] = _frac(rep.symmetric_index)
            entry["lemma_holds"] = rep.holds
        payload.append(entry)
        extra = f" lemma {'ok' if entry.get('lemma_holds') else 'FAILED'}" if args.dimension is not None else ""
        lines.append(f"{x} vertices {surf.graph.n} edges {surf.graph.edge_count} chi {entry['chi']}{extra}")
    _emit(args, lines, payload)


def cmd_einstein(args):
    g = _load_graph(args)
    report = einstein.is_einstein(g, args.max_length)
    lines = [f"ricci {u} {v} {_frac(q)}" for (u, v), q in sorted(report.ricci.items())]
    lines += [f"scalar {v} {_frac(q)}" for v, q in sorted(report.scalar.items())]
    lines.append(f"einstein {str(report.is_einstein).lower()}")
    _emit(args, lines, json.loads(report.to_json()))


def cmd_er_expect(args):
    p = as_probability(args.p)
    if args.samples:
        mean, err = random_er.expected_chi_mc(args.n, p, args.samples, args.seed, max_n=args.max_n)
        exact = random_er.expected_chi_exact(args.n, p)
        payload = {"n": args.n, "p": _frac(p), "mean": mean, "stderr": err, "exact": _frac(exact.value)}
        _emit(args, [f"{mean:.12g} +- {err:.3g}", f"exact {_frac(exact.value)}"], payload)
        return
    e = random_er.expected_chi_exact(args.n, p)
    dec = format(e.decimal, ".15g")
    payload = {"n": args.n, "p": _frac(p), "expected_chi": _frac(e.value), "decimal": dec, "log_pm": random_er.log_pm(e.value)}
    _emit(args, [_frac(e.value), dec], payload, [["n", "p", "expected_chi", "decimal"], [args.n, _frac(p), _frac(e.value), dec]])


def cmd_er_sweep(args):
    if args.p:
        ps = [as_probability(p) for p in args.p.split(",")]
    else:
        ps = random_er.evenly_spaced_probabilities(args.p_count)
    rows = random_er.sweep(args.n_max, ps)
    text = random_er.sweep_csv(rows)
    if args.format == "json":
        payload = [{"n": r.n, "p": _frac(r.p), "expected_chi": _frac(r.value), "log_pm": r.log_pm} for r in rows]
        sys.stdout.write(json.dumps(payload) + "\n")
    else:
        sys.stdout.write(text)


def _anneal_job(job):
    return extremal.anneal_extremal(**job)


def cmd_extremal(args):
    modes = ["min", "max"] if args.mode == "both" else [args.mode]
    results = []
    if args.method == "exhaustive":
        lo, hi = extremal.exhaustive_extremal(args.n, args.connected)
        results = [r for r in (lo, hi) if r.mode in modes]
    else:
        jobs = [
            dict(n=args.n, mode=m, steps=args.steps, t0=args.t0, t1=args.t1, connected_only=args.connected, seed=args.seed + k)
            for m in modes
            for k in range(args.chains)
        ]
        if args.threads > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(args.threads) as pool:
                runs = list(pool.map(_anneal_job, jobs))
        else:
            runs = [_anneal_job(j) for j in jobs]
        for m in modes:
            mine = [r for r in runs if r.mode == m]
            results.append(min(mine, key=lambda r: r.best_value if m == "min" else -r.best_value))
    payload = []
    lines = []
    for r in results:
        entry = r.to_dict()
        if args.einstein:
            entry["einstein"] = list(extremal.einstein_filter(r).einstein)
        payload.append(entry)
        lines.append(f"{r.mode} {r.best_value}")
        for w in r.witnesses:
            lines.append("  " + " ".join(f"{u}-{v}" for u, v in w))
    _emit(args, lines, payload)


def _metric(spec: str) -> geodesic.PathMetricConfig:
    name, _, param = spec.partition(":")
    if name == "hop":
        return geodesic.PathMetricConfig.hop()
    try:
        value = Fraction(param or "0")
    except ValueError:
        raise InputError(f"bad metric parameter {param!r}") from None
    return geodesic.PathMetricConfig(name, value)


def cmd_geodesic(args):
    g = _load_graph(args)
    config = _metric(args.metric)
    if args.radius:
        if args.source is None:
            raise InputError("--radius needs --from")
        r = geodesic.injectivity_radius(g, args.source, config)
        _emit(args, [r], {"vertex": args.source, "injectivity_radius": r})
        return
    if args.source is None or args.target is None:
        raise InputError("geodesic needs --from and --to")
    d = geodesic.distance(g, args.source, args.target, config)
    paths = geodesic.minimal_geodesics(g, args.source, args.target, config, limit=args.limit)
    lines = [f"distance {_frac(d)}"] + [" ".join(map(str, p)) for p in paths]
    _emit(args, lines, {"distance": _frac(d), "geodesics": [list(p) for p in paths]})


def cmd_generate(args):
    g = _load_graph(args)
    fmt = "json" if args.format == "json" else "edge_list"
    sys.stdout.write(serialize_graph(g, fmt) + ("\n" if fmt == "json" else ""))


BENCH_CORPUS = [
    "erdos_renyi(40,3/10,0)",
    "erdos_renyi(40,3/10,1)",
    "erdos_renyi(30,2/5,2)",
    "erdos_renyi(25,1/2,3)",
    "icosahedron",
    "cross_polytope(4)",
    "torus_triangulation(6,6)",
    "complete(12)",
    "complete_multipartite(3,3,3,3)",
]


def _best_time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t)
    return value, best


def run_bench(specs, repeat=5):
    rows = []
    for spec in specs:
        g = generate_from_spec(spec)
        chi_c, tc = _best_time(lambda: topology.euler_characteristic(g), repeat)
        chi_p, tp = _best_time(lambda: topology.euler_characteristic_ph(g), repeat)
        if chi_c != chi_p:
            raise EulerGraphError(f"engines disagree on {spec}: {chi_c} vs {chi_p}")
        rows.append([spec, g.n, g.edge_count, chi_c, f"{tc:.6g}", f"{tp:.6g}", f"{tc / tp:.3f}"])
    return rows


def cmd_bench(args):
    specs = [args.generate] if args.generate else BENCH_CORPUS
    rows = run_bench(specs, args.repeat)
    header = ["graph", "n", "edges", "chi", "clique_seconds", "ph_seconds", "speedup"]
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows([header] + rows)
    if args.format == "json":
        sys.stdout.write(json.dumps([dict(zip(header, r)) for r in rows]) + "\n")
    else:
        sys.stdout.write(buf.getvalue())


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--graph", metavar="FILE", help="read the graph from FILE")
    common.add_argument("--graph-format", choices=["edge_list", "json"])
    common.add_argument("--generate", metavar="SPEC", help="generator spec, e.g. cross_polytope(4)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--threads", type=int, default=1)

    parser = _Parser(prog="eulergraph", description="Curvature, indices and Euler characteristic of finite simple graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.set_defaults(func=fn)
        return p

    p = add("chi", cmd_chi, "Euler characteristic (topology.euler_characteristic / euler_characteristic_ph).")
    p.add_argument("--engine", choices=["clique", "ph"], default="clique")
    p.add_argument("--random-order", action="store_true", help="Poincare-Hopf with a seeded random vertex order")

    p = add("curvature", cmd_curvature, "Curvature as exact index expectation (morse.curvature_report, morse.curvature_expectation).")
    p.add_argument("--vertex", type=int)
    p.add_argument("--samples", type=int, default=0, help="Monte Carlo estimate instead of the exact value")

    p = add("index", cmd_index, "Poincare-Hopf and symmetric indices (morse.index, morse.symmetric_index, morse.poincare_hopf_sum).")
    p.add_argument("--function", metavar="FILE", help="json array of vertex values; default: sampled from --seed")

    p = add("levelset", cmd_levelset, "Level surfaces (level_surface.hypersurface, center_surface, genus_lemma_check).")
    p.add_argument("--function", metavar="FILE")
    p.add_argument("--vertex", type=int)
    p.add_argument("--threshold", help="cut the whole graph at this value instead")
    p.add_argument("--completion", choices=["stellation", "chord"], default="stellation")
    p.add_argument("--dimension", type=int, help="also run the genus lemma check for this dimension")

    p = add("einstein", cmd_einstein, "Ricci, scalar curvature and Einstein tensor (einstein.is_einstein).")
    p.add_argument("--max-length", type=int, help="cap wheel rim length (report becomes approximate)")

    p = add("er-expect", cmd_er_expect, "Expected chi of Erdos-Renyi graphs (random_er.expected_chi_exact, expected_chi_mc).")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", required=True, help="rational probability, e.g. 1/2 or 0.9")
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--max-n", type=int, default=random_er.MC_MAX_N)

    p = add("er-sweep", cmd_er_sweep, "Table of expected chi and log+- over n and p (random_er.sweep).")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--p", help="comma separated probabilities")
    p.add_argument("--p-count", type=int, default=50, help="evenly spaced probabilities when --p is absent")

    p = add("extremal", cmd_extremal, "Extremal chi search (extremal.exhaustive_extremal, anneal_extremal, einstein_filter).")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=["min", "max", "both"], default="both")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--connected", dest="connected", action="store_true", default=True)
    group.add_argument("--all", dest="connected", action="store_false", help="include disconnected graphs")
    p.add_argument("--method", choices=["exhaustive", "anneal"])
    p.add_argument("--steps", type=int, default=100_000)
    p.add_argument("--t0", type=float, default=2.0)
    p.add_argument("--t1", type=float, default=0.05)
    p.add_argument("--chains", type=int, default=1)
    p.add_argument("--einstein", action="store_true", help="flag Einstein witnesses")

    p = add("geodesic", cmd_geodesic, "Distances and minimal geodesics (geodesic.distance, minimal_geodesics, injectivity_radius).")
    p.add_argument("--from", dest="source", type=int)
    p.add_argument("--to", dest="target", type=int)
    p.add_argument("--metric", default="hop", help="hop | curvature2d:C | genus4d:EPS")
    p.add_argument("--radius", action="store_true", help="print the injectivity radius at --from")
    p.add_argument("--limit", type=int)

    add("generate", cmd_generate, "Print a generated graph (graph.generate, serialize_graph).")

    p = add("bench", cmd_bench, "Time the clique and Poincare-Hopf chi engines.")
    p.add_argument("--repeat", type=int, default=5)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "method", "x") is None:
        args.method = "exhaustive" if args.n <= extremal.EXHAUSTIVE_MAX_N else "anneal"
    try:
        args.func(args)
    except EulerGraphError as exc:
        sys.stderr.write(f"eulergraph: {exc}\n")
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
