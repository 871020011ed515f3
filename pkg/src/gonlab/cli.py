"""``gonlab`` command line.

Every subcommand prints one JSON document (or CSV with ``--format csv``).
Exit status: 0 success, 1 usage or contract error, 2 budget exhausted or
verdict otherwise unknown.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
import warnings

from . import __version__
from .cache import ResultsCache
from .constructions import antipodal_divisor, universal_divisor, verify_translation
from .divisor import Divisor, parse_divisor
from .errors import BudgetExceeded, ContractError, GuardExceeded, SearchInconsistency
from .graph import CirculantSpec, Multigraph, parse_graph
from .reduction import RankTable, has_positive_rank, is_winnable, q_reduce, rank
from .scramble import Scramble, egg_cut_number, harary4_path_decomposition, hitting_number, path_decomposition, tcd_tally
from .search import SearchBudget, gonality, gonality_table, resolve_workers

EXIT_OK, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2


def output_schema() -> dict:
    """The JSON Schema every document printed by :func:`run` satisfies."""
    from importlib.resources import files

    return json.loads(files("gonlab").joinpath("schemas/output.schema.json").read_text())


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _graph(spec: str) -> Multigraph:
    return parse_graph(spec)


def _circulant_spec(spec: str) -> CirculantSpec:
    G = parse_graph(spec)
    if G.circulant is None:
        raise ContractError(f"{spec!r} is not a circulant graph spec")
    return G.circulant


def _range(text: str) -> list[int]:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return list(range(int(a), int(b) + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise ContractError(f"bad range {text!r}; use a..b or a,b,c") from None


def _budget(args) -> SearchBudget:
    return SearchBudget(time_ms=args.budget_ms, max_candidates=args.max_candidates)


def _cache(args):
    if not getattr(args, "cache", None):
        return None
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        c = ResultsCache(args.cache)
    for w in caught:
        print(f"gonlab: warning: {w.message}", file=args.err)
    return c


# -- subcommands -------------------------------------------------------
# Each returns (exit code, document, csv rows or None).

def cmd_gon(args):
    G = _graph(args.graph)
    cache = _cache(args)
    try:
        rep = gonality(
            G,
            lower_hint=args.min,
            upper_hint=args.max,
            workers=args.workers,
            budget=_budget(args),
            cache=cache,
            symmetric=args.symmetric,
        )
    except BudgetExceeded as exc:
        doc = {
            "command": "gon",
            "graph": G.key,
            "status": "unknown",
            "reason": str(exc),
            "degrees_excluded": [{"degree": d, "classes": c} for d, c in (exc.partial or [])],
        }
        return EXIT_UNKNOWN, doc, None
    doc = {"command": "gon", **rep.to_dict(), "cached_degrees": rep.from_cache}
    rows = [{"degree": d, "positive_rank": False, "classes": c, "witness": ""} for d, c in rep.degrees_excluded]
    rows.append({"degree": rep.gonality, "positive_rank": True, "classes": "", "witness": rep.witness.to_sparse()})
    return EXIT_OK, doc, rows


def cmd_rank(args):
    G = _graph(args.graph)
    D = parse_divisor(args.divisor, G.n)
    r = rank(G, D, max_rank=args.max_rank)
    doc = {"command": "rank", "graph": G.key, "divisor": D.to_sparse(), "degree": D.degree, "rank": r, "status": "ok"}
    return EXIT_OK, doc, None


def cmd_reduce(args):
    G = _graph(args.graph)
    D = parse_divisor(args.divisor, G.n)
    q = args.q - 1
    if not 0 <= q < G.n:
        raise ContractError(f"sink v{args.q} out of range 1..{G.n}")
    R, script = q_reduce(G, D, q, witness=True)
    doc = {
        "command": "reduce",
        "graph": G.key,
        "q": args.q,
        "divisor": D.to_sparse(),
        "reduced": R.to_sparse(),
        "winnable": R[q] >= 0,
        "status": "ok",
    }
    if args.witness:
        doc["script"] = script.to_list()
    return EXIT_OK, doc, None


def cmd_construct(args):
    spec = _circulant_spec(args.spec)
    G = parse_graph(args.spec)
    if args.antipodal:
        D = antipodal_divisor(spec.n, spec.J)
        kind = "antipodal"
    else:
        D = universal_divisor(spec)
        kind = "universal"
    certs = {}
    if args.verify in ("translation", "both"):
        certs["translation"] = verify_translation(spec, antipodal=args.antipodal).to_dict()
        if not args.log:
            certs["translation"].pop("log")
    if args.verify in ("rank", "both"):
        certs["rank"] = {"valid": has_positive_rank(G, D), "method": "reduction"}
    doc = {
        "command": "construct",
        "graph": spec.key,
        "construction": kind,
        "divisor": D.to_sparse(),
        "degree": D.degree,
        "certificates": certs,
        "status": "ok" if all(c["valid"] for c in certs.values()) else "failed",
    }
    return EXIT_OK, doc, None


def cmd_table(args):
    fam = args.family
    if not fam.startswith("harary:"):
        raise ContractError(f"unknown family {fam!r}; expected harary:<k>")
    try:
        k = int(fam.split(":", 1)[1])
    except ValueError:
        raise ContractError(f"unknown family {fam!r}; expected harary:<k>") from None
    ns = _range(args.n)
    if min(ns) <= k:
        raise ContractError(f"harary:{k} needs n > {k}")
    table = gonality_table(k, ns, workers=args.workers, budget=_budget(args), cache=_cache(args))
    rows = []
    for n, rep, err in table.rows:
        if rep is None:
            rows.append({"n": n, "status": "unknown", "gonality": None, "witness": None, "reason": err})
        else:
            rows.append({"n": n, "status": "ok", "gonality": rep.gonality, "witness": rep.witness.to_sparse(), "reason": None})
    viol = table.monotone_violations()
    doc = {
        "command": "table",
        "family": f"harary:{k}",
        "rows": rows,
        "monotone": not viol,
        "monotone_violations": [list(p) for p in viol],
        "status": "ok" if all(r["status"] == "ok" for r in rows) else "unknown",
    }
    code = EXIT_OK if doc["status"] == "ok" else EXIT_UNKNOWN
    return code, doc, rows


def cmd_scw(args):
    G = _graph(args.graph)
    if args.construct == "path3":
        dec = harary4_path_decomposition(G.n)
    else:
        try:
            assign = [int(x) - 1 for x in args.assignment.split(",")]
        except (AttributeError, ValueError):
            raise ContractError("--assignment must list one 1-based path node per vertex") from None
        dec = path_decomposition(max(assign) + 1, assign)
    tally = tcd_tally(G, dec)
    doc = {"command": "scw", "graph": G.key, **tally.to_dict(), "status": "ok"}
    rows = [{"kind": "link", "item": f"{a}-{b}", "value": c} for (a, b), c in
            ((tuple(x["nodes"]), x["edges"]) for x in doc["links"])]
    rows += [{"kind": "node", "item": str(x["node"]), "value": x["value"]} for x in doc["nodes"]]
    rows.append({"kind": "width", "item": "", "value": tally.width})
    return EXIT_OK, doc, rows


def _eggs(text: str, n: int):
    eggs = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            eggs.append([int(x) - 1 for x in chunk.split(",")])
        except ValueError:
            raise ContractError(f"bad egg {chunk!r}; use 1-based vertex lists like 1,2;3,4") from None
    return eggs


def cmd_scramble(args):
    G = _graph(args.graph)
    S = Scramble(G, _eggs(args.eggs, G.n))
    h = hitting_number(S)
    e = egg_cut_number(S, vertex_cuts=args.vertex_cuts)
    doc = {
        "command": "scramble",
        "graph": G.key,
        "eggs": len(S),
        "hitting_number": h,
        "egg_cut_number": None if math.isinf(e) else int(e),
        "cut_kind": "vertex" if args.vertex_cuts else "edge",
        "order": int(min(h, e)),
        "status": "ok",
    }
    return EXIT_OK, doc, None


def cmd_verify(args):
    """Random cross-checks of the reduction engine against the rank table."""
    G = _graph(args.graph)
    rng = random.Random(args.seed)
    table = RankTable(G)
    g = G.genus
    Kd = table.canonical()
    checks = {"rank_definition": 0, "riemann_roch": 0, "reduce_idempotent": 0, "winnable_q_independent": 0}
    for _ in range(args.trials):
        d = rng.randint(-1, args.max_degree)
        chips = [0] * G.n
        # a spread of positive and negative entries summing to d
        for _ in range(rng.randint(0, 2 * G.n)):
            chips[rng.randrange(G.n)] += rng.choice((1, 1, -1))
        chips[rng.randrange(G.n)] += d - sum(chips)
        D = Divisor(chips)
        r = table.rank(D)
        if rank(G, D, max_rank=max(args.max_degree, 0) + 1) != r:
            checks["rank_definition"] += 1
        if 2 * g - 2 - d <= table.max_degree and r - table.rank(Kd - D) != d - g + 1:
            checks["riemann_roch"] += 1
        q = rng.randrange(G.n)
        R = q_reduce(G, D, q)
        if q_reduce(G, R, q) != R:
            checks["reduce_idempotent"] += 1
        if is_winnable(G, D, q) != is_winnable(G, D, rng.randrange(G.n)):
            checks["winnable_q_independent"] += 1
    total = sum(checks.values())
    doc = {
        "command": "verify",
        "graph": G.key,
        "seed": args.seed,
        "trials": args.trials,
        "checks": checks,
        "violations": total,
        "status": "ok" if total == 0 else "failed",
    }
    return (EXIT_OK if total == 0 else EXIT_USAGE), doc, None


# -- wiring ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")

    search = _Parser(add_help=False)
    search.add_argument("--workers", type=int, default=None, help="default: $GONLAB_WORKERS or CPU count")
    search.add_argument("--budget-ms", type=float, default=None, help="wall-clock budget for the whole run")
    search.add_argument("--max-candidates", type=int, default=10**9, help="candidate budget per degree")
    search.add_argument("--cache", default=None, help="JSONL results cache")

    p = _Parser(prog="gonlab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"gonlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("gon", parents=[common, search], help="exact gonality")
    s.add_argument("--graph", required=True)
    s.add_argument("--min", type=int, default=None)
    s.add_argument("--max", type=int, default=None)
    s.add_argument("--symmetric", action="store_true", help="rotation filter (circulants only)")
    s.set_defaults(func=cmd_gon)

    s = sub.add_parser("rank", parents=[common], help="rank of a divisor")
    s.add_argument("--graph", required=True)
    s.add_argument("--divisor", required=True)
    s.add_argument("--max-rank", type=int, default=4)
    s.set_defaults(func=cmd_rank)

    s = sub.add_parser("reduce", parents=[common], help="q-reduced form of a divisor")
    s.add_argument("--graph", required=True)
    s.add_argument("--divisor", required=True)
    s.add_argument("--q", type=int, default=1, help="1-based sink vertex")
    s.add_argument("--witness", action="store_true", help="include the firing script")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("construct", parents=[common], help="explicit positive-rank divisor on a circulant")
    s.add_argument("--spec", required=True)
    s.add_argument("--antipodal", action="store_true")
    s.add_argument("--verify", choices=("translation", "rank", "both"), default="both")
    s.add_argument("--log", action="store_true", help="include every firing step")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("table", parents=[common, search], help="gonality across a Harary family")
    s.add_argument("--family", required=True, help="harary:<k>")
    s.add_argument("--n", required=True, help="a..b or a,b,c")
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("scw", parents=[common], help="tree-cut decomposition width")
    s.add_argument("--graph", required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--construct", choices=("path3",))
    g.add_argument("--assignment", help="1-based path node for each vertex, comma separated")
    s.set_defaults(func=cmd_scw)

    s = sub.add_parser("scramble", parents=[common], help="order of a given scramble")
    s.add_argument("--graph", required=True)
    s.add_argument("--eggs", required=True, help="e.g. 1,2;3,4")
    s.add_argument("--vertex-cuts", action="store_true")
    s.set_defaults(func=cmd_scramble)

    s = sub.add_parser("verify", parents=[common], help="seeded random consistency checks")
    s.add_argument("--graph", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=200)
    s.add_argument("--max-degree", type=int, default=3)
    s.set_defaults(func=cmd_verify)
    return p


def _to_csv(doc: dict, rows) -> str:
    if rows is None:
        rows = [{k: (json.dumps(v) if isinstance(v, (list, dict)) else v) for k, v in doc.items()}]
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return buf.getvalue()


def run(argv=None, out=None, err=None) -> int:
    """Run one command; returns the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        args.err = err
        if getattr(args, "workers", None) is not None and args.workers < 1:
            raise ContractError("--workers must be >= 1")
        if hasattr(args, "workers"):
            args.workers = resolve_workers(args.workers)
        code, doc, rows = args.func(args)
    except UsageError as exc:
        print(exc, file=err)
        return EXIT_USAGE
    except ContractError as exc:
        print(f"gonlab: error: {exc}", file=err)
        return EXIT_USAGE
    except (BudgetExceeded, GuardExceeded, SearchInconsistency) as exc:
        doc = {"command": args.command, "status": "unknown", "reason": f"{type(exc).__name__}: {exc}"}
        code, rows = EXIT_UNKNOWN, None
    if args.format == "csv":
        out.write(_to_csv(doc, rows))
    else:
        out.write(json.dumps(doc, indent=2) + "\n")
    return code


def main() -> None:
    sys.exit(run())
