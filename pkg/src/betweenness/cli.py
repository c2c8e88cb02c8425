"""Command line entry point: ``betweenness {compute,verify,gen,bench}``.

Exit codes: 0 ok, 1 unreadable/malformed input, 2 method cannot run on
this graph, 3 path-count overflow, 4 oracle cap exceeded, 5 verification
mismatch, 6 sampling rounds exhausted.  Every invocation writes one JSON
run report on stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import algebraic, brandes, oracle, parallel
from .errors import (
    CountOverflowError,
    DisconnectedGraphError,
    GraphFormatError,
    InconsistentApspError,
    OracleCapError,
    SamplingExhaustedError,
    UnsupportedGraphError,
)
from .generators import GenSpec
from .graph import Graph, from_edge_list, is_connected, to_edge_list
from .workers import WorkCounters, default_workers

METHODS = ("brandes", "algebraic", "parallel-pairwise", "parallel-wavefront", "oracle")
TOLERANCE = 1e-9

EXIT_OK, EXIT_PARSE, EXIT_INCOMPATIBLE, EXIT_OVERFLOW, EXIT_ORACLE_CAP, EXIT_MISMATCH, EXIT_SAMPLING = range(7)


@dataclass
class RunReport:
    command: str
    method: str | None = None
    wall_ms: float = 0.0
    threads: int = 1
    rounds: int | None = None
    overflow: bool = False
    infeasible: bool = False
    output: str | None = None
    exit_code: int = 0
    error: str | None = None

    def emit(self) -> None:
        print(json.dumps(asdict(self), sort_keys=True), file=sys.stderr)


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def run_method(g: Graph, method: str, *, threads: int = 1, seed: int = 0, sample_c: float = 3.0,
               normalized: bool = True, counters: WorkCounters | None = None) -> list[float]:
    cfg = parallel.SampleConfig(c=sample_c, seed=seed)
    if method == "brandes":
        return brandes.brandes_bc(g, normalized, threads, counters)
    if method == "algebraic":
        return algebraic.algebraic_bc(g, normalized, counters)
    if method == "parallel-pairwise":
        return parallel.parallel_pairwise_bc(g, cfg, threads, normalized, counters)
    if method == "parallel-wavefront":
        return parallel.parallel_wavefront_bc(g, cfg, threads, normalized, counters)
    if method == "oracle":
        return oracle.oracle_bc(g, normalized)[1]
    raise CliError(EXIT_INCOMPATIBLE, f"unknown method {method!r}")


def format_table(bc) -> str:
    return "vertex\tbc\n" + "".join(f"{v}\t{x:.9f}\n" for v, x in enumerate(bc))


def checksum(bc) -> str:
    return hashlib.sha256(format_table(bc).encode()).hexdigest()[:16]


def _load(path: str) -> Graph:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as e:
        raise CliError(EXIT_PARSE, str(e)) from None
    return from_edge_list(text)


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _deviation(a, b) -> tuple[float, bool]:
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    diff = np.abs(a - b)
    tol = np.maximum(TOLERANCE, TOLERANCE * np.maximum(np.abs(a), np.abs(b)))
    return (float(diff.max()) if diff.size else 0.0), bool(np.all(diff <= tol))


def cmd_compute(args, report: RunReport) -> int:
    g = _load(args.graph)
    report.method = args.method
    counters = WorkCounters()
    bc = run_method(g, args.method, threads=args.threads, seed=args.seed, sample_c=args.sample_c,
                    normalized=not args.no_normalize, counters=counters)
    if args.method.startswith("parallel") and g.unit_weights:
        report.rounds = counters.rounds
    _write(format_table(bc), args.out)
    report.output = args.out or "-"
    return EXIT_OK


def _applicable(g: Graph, skip_oracle: bool) -> list[str]:
    connected = is_connected(g)
    methods = ["brandes"]
    if connected and not g.directed:
        methods.append("algebraic")
    if connected:
        methods += ["parallel-pairwise", "parallel-wavefront"]
    if not skip_oracle:
        methods.append("oracle")
    return methods


def cmd_verify(args, report: RunReport) -> int:
    g = _load(args.graph)
    cfg = parallel.SampleConfig(c=args.sample_c, seed=args.seed)
    results: dict[str, list[float]] = {}
    shared_apsp = None
    for method in _applicable(g, args.skip_oracle):
        if method.startswith("parallel") and args.debug_corrupt_lambda:
            if shared_apsp is None:
                shared_apsp = _corrupted(parallel.parallel_forward(g, cfg, args.threads))
            if method == "parallel-pairwise":
                results[method] = parallel.pairwise_bc(shared_apsp, g.directed, True, args.threads)
            else:
                dep = parallel.wavefront_dependencies(g, shared_apsp, args.threads)
                results[method] = algebraic.bc_from_dependencies(dep, g.directed)
            continue
        results[method] = run_method(g, method, threads=args.threads, seed=args.seed,
                                     sample_c=args.sample_c)
    names = list(results)
    worst, ok = 0.0, True
    lines = []
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            dev, good = _deviation(results[a], results[b])
            worst, ok = max(worst, dev), ok and good
            lines.append(f"{a}\t{b}\t{dev:.3e}\t{'ok' if good else 'MISMATCH'}")
    verdict = "PASS" if ok else "FAIL"
    _write("method_a\tmethod_b\tmax_abs_dev\tstatus\n" + "\n".join(lines) + "\n"
           + f"{verdict}\tmax deviation {worst:.3e}\n", args.out)
    report.method = ",".join(names)
    report.output = args.out or "-"
    return EXIT_OK if ok else EXIT_MISMATCH


def _corrupted(apsp: algebraic.ApspResult) -> algebraic.ApspResult:
    counts = apsp.counts.copy()
    d = np.where(np.isfinite(apsp.dist), apsp.dist, -1)
    i, j = np.unravel_index(int(np.argmax(d)), d.shape)
    counts[i, j] += 1
    return algebraic.ApspResult(apsp.dist, counts, apsp.diameter)


def cmd_gen(args, report: RunReport) -> int:
    report.method = f"gen:{args.family}"
    try:
        g = GenSpec(args.family, tuple(args.params), args.seed, args.max_weight).build()
    except ValueError as e:
        raise CliError(EXIT_PARSE, str(e)) from None
    _write(to_edge_list(g), args.out)
    report.output = args.out or "-"
    return EXIT_OK


def _parse_corpus_item(item: str, seed: int) -> tuple[str, Graph]:
    """``family:p1:p2[:wM]`` builds a generator graph; anything else is an edge-list path."""
    if Path(item).exists():
        return item, _load(item)
    family, *rest = item.split(":")
    max_weight = 1
    if rest and rest[-1].startswith("w"):
        max_weight = int(rest.pop()[1:])
    try:
        return item, GenSpec(family, tuple(rest), seed, max_weight).build()
    except (ValueError, TypeError) as e:
        raise CliError(EXIT_PARSE, f"bad corpus item {item!r}: {e}") from None


def cmd_bench(args, report: RunReport) -> int:
    methods = args.methods.split(",")
    threads = [int(t) for t in args.threads.split(",")]
    report.method = args.methods
    rows = ["graph\tn\tm\tmethod\tthreads\twall_ms\trelaxations\tproducts\tfwd_iters\trounds\tchecksum"]
    for item in args.corpus:
        name, g = _parse_corpus_item(item, args.seed)
        for method in methods:
            for t in threads:
                counters = WorkCounters()
                t0 = time.perf_counter()
                bc = run_method(g, method, threads=t, seed=args.seed, sample_c=args.sample_c,
                                counters=counters)
                ms = (time.perf_counter() - t0) * 1e3
                rows.append(f"{name}\t{g.n}\t{g.m}\t{method}\t{t}\t{ms:.1f}\t{counters.relaxations}"
                            f"\t{counters.products}\t{counters.forward_iterations}\t{counters.rounds}"
                            f"\t{checksum(bc)}")
    _write("\n".join(rows) + "\n", args.out)
    report.output = args.out or "-"
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="betweenness", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--threads", type=int, default=default_workers())
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--sample-c", type=float, default=3.0)
        sp.add_argument("--out")

    c = sub.add_parser("compute", help="betweenness table for one graph")
    c.add_argument("graph")
    c.add_argument("--method", choices=METHODS, default="brandes")
    c.add_argument("--no-normalize", action="store_true",
                   help="do not halve undirected scores")
    common(c)
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", help="cross-check every applicable method")
    v.add_argument("graph")
    v.add_argument("--skip-oracle", action="store_true")
    v.add_argument("--debug-corrupt-lambda", action="store_true",
                   help="fault injection: perturb one path count before the parallel backward passes")
    common(v)
    v.set_defaults(func=cmd_verify)

    gp = sub.add_parser("gen", help="write a generated graph as an edge list")
    gp.add_argument("family")
    gp.add_argument("params", nargs="*")
    gp.add_argument("--seed", type=int, default=0)
    gp.add_argument("--max-weight", type=int, default=1)
    gp.add_argument("--out")
    gp.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="time methods over a corpus")
    b.add_argument("corpus", nargs="+", help="edge-list files or family:p1[:p2][:wM]")
    b.add_argument("--methods", default="brandes,algebraic,parallel-pairwise,parallel-wavefront")
    b.add_argument("--threads", default="1", help="comma-separated pool widths")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--sample-c", type=float, default=3.0)
    b.add_argument("--out")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    threads = getattr(args, "threads", 1)
    if isinstance(threads, str):
        threads = max(int(t) for t in threads.split(","))
    report = RunReport(command=args.command, threads=threads)
    t0 = time.perf_counter()
    try:
        code = args.func(args, report)
    except CliError as e:
        code, report.error = e.code, str(e)
    except GraphFormatError as e:
        code, report.error = EXIT_PARSE, str(e)
    except (UnsupportedGraphError, DisconnectedGraphError, InconsistentApspError) as e:
        code, report.error, report.infeasible = EXIT_INCOMPATIBLE, str(e), True
    except CountOverflowError as e:
        code, report.error, report.overflow = EXIT_OVERFLOW, str(e), True
    except OracleCapError as e:
        code, report.error = EXIT_ORACLE_CAP, str(e)
    except SamplingExhaustedError as e:
        code, report.error = EXIT_SAMPLING, str(e)
    report.wall_ms = round((time.perf_counter() - t0) * 1e3, 3)
    report.exit_code = code
    report.emit()
    if report.error:
        print(f"error: {report.error}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
