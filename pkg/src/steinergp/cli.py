"""``steinergp`` command line: compute, verify, generate.

Exit codes: 0 success, 1 usage or domain error, 2 search truncated by the
budget (the printed value is then a lower bound).
"""

from __future__ import annotations

import argparse
import fcntl
import json
import os
import sys
import time
import warnings
from pathlib import Path

from . import __version__
from .edgelist import EdgeListError, dumps, graph_hash, read, write, write_sidecar
from .families import FAMILY_HELP, cartesian_grid, counterexample_gk, make_family
from .graph import Graph, GraphError
from .harness import SUITES, SuiteConfig, UnknownSuite, run_suite
from .search import Budget, SearchError, gp, sgp, sgp_interval, sjc, somega
from .steiner import INF, ResourceError, steiner_distance

CACHE_ENV = "STEINERGP_CACHE_DIR"
CACHE_FILE = "results.jsonl"
CLI_MAX_VERTICES = 64
SCHEMA_PATH = Path(__file__).with_name("result.schema.json")

OPERATIONS = ("sgp", "somega", "sjc", "gp", "sgp-interval", "steiner")
_NEEDS_K = {"sgp", "somega", "sjc", "sgp-interval"}


class UsageError(ValueError):
    pass


def load_schema() -> dict:
    return json.loads(SCHEMA_PATH.read_text())


# -------------------------------------------------------------------- cache


def cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "steinergp"


class ResultCache:
    """Append-only JSON-lines store keyed on (graph hash, operation, params)."""

    def __init__(self, directory: Path | None = None):
        self.path = (directory or cache_dir()) / CACHE_FILE

    @staticmethod
    def key(record: dict) -> tuple:
        return record["graph"]["hash"], record["operation"], json.dumps(record["params"], sort_keys=True)

    def lookup(self, graph_hash_: str, operation: str, params: dict) -> dict | None:
        if not self.path.exists():
            return None
        want = (graph_hash_, operation, json.dumps(params, sort_keys=True))
        found = None
        with open(self.path, encoding="utf-8") as fh:
            fcntl.flock(fh, fcntl.LOCK_SH)
            try:
                for lineno, line in enumerate(fh, start=1):
                    if not line.strip():
                        continue
                    try:
                        record = json.loads(line)
                        hit = self.key(record) == want
                    except (json.JSONDecodeError, KeyError, TypeError):
                        warnings.warn(f"{self.path}:{lineno}: skipping corrupt cache line", stacklevel=2)
                        continue
                    if hit:
                        found = record
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)
        return found

    def append(self, record: dict) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        line = json.dumps(record, sort_keys=True, default=_plain) + "\n"
        with open(self.path, "a", encoding="utf-8") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX)
            try:
                fh.write(line)
                fh.flush()
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)


def _plain(x):
    if x is INF:
        return "inf"
    raise TypeError(f"not JSON serializable: {x!r}")


# ------------------------------------------------------------------ compute


def _parse_terminals(text: str, g: Graph) -> list[int]:
    out = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if token.lstrip("-").isdigit():
            out.append(int(token))
        elif g.labels is not None and token in g.labels:
            out.append(g.vertex(token))
        else:
            raise UsageError(f"unknown terminal {token!r}")
    if not out:
        raise UsageError("--terminals is empty")
    return out


def _load_graph(args) -> Graph:
    if (args.graph is None) == (args.family is None):
        raise UsageError("give exactly one of a graph file or --family")
    if args.family is not None:
        return make_family(args.family)
    try:
        return read(args.graph)
    except OSError as exc:
        raise UsageError(f"cannot read {args.graph}: {exc.strerror or exc}") from None


def _validate_flags(args) -> None:
    if args.what != "steiner" and args.terminals is not None:
        raise UsageError("--terminals only applies to --what steiner")
    if args.what == "steiner" and args.terminals is None:
        raise UsageError("--what steiner needs --terminals")
    if args.what in _NEEDS_K and args.k is None:
        raise UsageError(f"--what {args.what} needs --k")
    if args.what not in _NEEDS_K and args.k is not None:
        raise UsageError(f"--k does not apply to --what {args.what}")
    if args.what == "sgp-interval" and args.l is None:
        raise UsageError("--what sgp-interval needs --l")
    if args.what != "sgp-interval" and args.l is not None:
        raise UsageError("--l only applies to --what sgp-interval")


def compute_record(g: Graph, what: str, k=None, l=None, terminals=None, budget: Budget | None = None) -> dict:
    """Run one operation and build the JSON result record (without cache fields)."""
    budget = budget or Budget(max_vertices=CLI_MAX_VERTICES)
    params: dict = {}
    if what == "steiner":
        params["terminals"] = sorted(set(terminals))
        t0 = time.perf_counter()
        value = steiner_distance(g, terminals)
        value = "inf" if value is INF else value
        witness: tuple = ()
        stats = {"nodes": 0, "ms": round((time.perf_counter() - t0) * 1000, 3), "truncated": False}
        kind = "Exact"
    else:
        if k is not None:
            if not 2 <= k <= max(2, g.n):
                raise SearchError(f"k must lie in [2, {max(2, g.n)}], got {k}")
            params["k"] = k
        if l is not None:
            params["l"] = l
        if what == "sgp":
            res = sgp(g, k, budget)
        elif what == "somega":
            res = somega(g, k, budget)
        elif what == "sjc":
            res = sjc(g, k, budget)
        elif what == "gp":
            res = gp(g, budget)
        else:
            res = sgp_interval(g, k, l, budget)
        value, witness, kind = res.value, res.witness, res.kind
        stats = {"nodes": res.stats.nodes, "ms": round(res.stats.elapsed_ms, 3), "truncated": res.stats.truncated}
    record = {
        "operation": what,
        "graph": {"n": g.n, "m": g.m, "hash": graph_hash(g)},
        "params": params,
        "value": value,
        "kind": kind,
        "witness": list(witness),
        "stats": stats,
    }
    if g.labels is not None:
        record["witness_labels"] = [g.labels[v] for v in witness]
    return record


def format_human(record: dict) -> str:
    params = " ".join(f"{k}={v}" for k, v in record["params"].items())
    lines = [f"{record['operation']} {params}".rstrip(), f"value: {record['value']} ({record['kind']})"]
    if record["witness"]:
        shown = record.get("witness_labels") or record["witness"]
        lines.append("witness: " + " ".join(str(x) for x in shown))
    stats = record["stats"]
    lines.append(f"nodes: {stats['nodes']}  ms: {stats['ms']}  truncated: {str(stats['truncated']).lower()}")
    if stats["truncated"]:
        lines.append("search truncated by budget: value is a lower bound")
    if record.get("cache_hit"):
        lines.append("(cached)")
    return "\n".join(lines)


def cmd_compute(args) -> int:
    _validate_flags(args)
    g = _load_graph(args)
    terminals = _parse_terminals(args.terminals, g) if args.terminals is not None else None
    budget = Budget(args.budget_nodes, args.budget_secs, args.max_vertices)
    cache = None if args.no_cache else ResultCache()
    params = {}
    if terminals is not None:
        params["terminals"] = sorted(set(terminals))
    if args.k is not None:
        params["k"] = args.k
    if args.l is not None:
        params["l"] = args.l
    record = cache.lookup(graph_hash(g), args.what, params) if cache else None
    if record is not None:
        record["cache_hit"] = True
        if g.labels is not None:
            record["witness_labels"] = [g.labels[v] for v in record["witness"]]
    else:
        record = compute_record(g, args.what, args.k, args.l, terminals, budget)
        record["cache_hit"] = False
        record["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
        record["version"] = __version__
        if cache and not record["stats"]["truncated"]:
            cache.append({key: v for key, v in record.items() if key not in ("cache_hit", "witness_labels")})
    print(json.dumps(record, sort_keys=True) if args.json else format_human(record))
    return 2 if record["stats"]["truncated"] else 0


# ------------------------------------------------------------ verify/generate


def cmd_verify(args) -> int:
    config = SuiteConfig(max_n=args.max_n, seed=args.seed, k=args.k, count=args.count)
    report = run_suite(args.suite, config)
    text = report.to_json() if args.json else report.to_text()
    print(text)
    if args.report:
        Path(args.report).write_text(report.to_json() + "\n")
    return 0 if report.passed else 1


def cmd_generate(args) -> int:
    chosen = [x is not None for x in (args.family, args.counterexample, args.grid)]
    if sum(chosen) != 1:
        raise UsageError("give exactly one of --family, --counterexample, --grid")
    if args.family is not None:
        g = make_family(args.family)
    elif args.counterexample is not None:
        g = counterexample_gk(args.counterexample)
    else:
        g = cartesian_grid(args.grid)[0]
    if args.out is None:
        sys.stdout.write(dumps(g))
    else:
        write(g, args.out)
        side = write_sidecar(g, args.out)
        print(f"wrote {args.out} ({g.n} vertices, {g.m} edges) and {side}", file=sys.stderr)
    return 0


# -------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steinergp",
        description="Steiner general position invariants of finite graphs.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=FAMILY_HELP,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="compute one invariant", epilog=FAMILY_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    c.add_argument("graph", nargs="?", help="edge-list file ('n m' header, then 'u v' lines)")
    c.add_argument("--family", help="family spec instead of a file, e.g. cycle:10")
    c.add_argument("--what", choices=OPERATIONS, required=True)
    c.add_argument("--k", type=int)
    c.add_argument("--l", type=int)
    c.add_argument("--terminals", help="comma-separated vertex ids or labels (steiner only)")
    c.add_argument("--budget-nodes", type=int)
    c.add_argument("--budget-secs", type=float)
    c.add_argument("--max-vertices", type=int, default=CLI_MAX_VERTICES)
    c.add_argument("--json", action="store_true", help="print the result record as JSON")
    c.add_argument("--no-cache", action="store_true", help=f"bypass the results cache (${CACHE_ENV})")
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, help="one of: " + ", ".join(SUITES))
    v.add_argument("--max-n", type=int)
    v.add_argument("--seed", type=int, default=SuiteConfig.seed)
    v.add_argument("--k", type=int, help="restrict the grid suite to one k")
    v.add_argument("--count", type=int, help="number of random instances for seeded suites")
    v.add_argument("--json", action="store_true")
    v.add_argument("--report", help="also write the JSON report here")
    v.set_defaults(func=cmd_verify)

    gen = sub.add_parser("generate", help="write a family graph as an edge list", epilog=FAMILY_HELP,
                         formatter_class=argparse.RawDescriptionHelpFormatter)
    gen.add_argument("--family")
    gen.add_argument("--counterexample", type=int, metavar="K")
    gen.add_argument("--grid", type=int, metavar="RADIUS")
    gen.add_argument("--out", help="output path; a JSON sidecar is written next to it (stdout if omitted)")
    gen.set_defaults(func=cmd_generate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        return args.func(args)
    except EdgeListError as exc:
        print(f"error: malformed edge list: {exc}", file=sys.stderr)
    except (UsageError, UnknownSuite, GraphError, SearchError, ResourceError, ValueError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) else exc
        print(f"error: {message}", file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())
