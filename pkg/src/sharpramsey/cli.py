"""Command-line interface: one subcommand per operation, JSON/CSV/text output.

Exit status: 0 when a verdict or value was computed (including False
verdicts), 2 when a search budget ran out, 1 on usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import random
import sys
import time
from fractions import Fraction

from . import analysis, colouring, counting, janson, sampling, structure
from .graph import FormatError, Graph, parse_graph_spec, read_graph
from .hypergraph import (UniformHypergraph, degree_profile, format_hypergraph,
                         p_H, parse_family_spec, read_hypergraph)
from .search import Budget, Decision

EXIT_OK, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- loading ----------------------------------------------------------------------

def load_graph(arg: str) -> Graph:
    """A graph file path if one exists, otherwise an atlas spec."""
    if os.path.exists(arg):
        try:
            return read_graph(arg)
        except FormatError as exc:
            raise UsageError(f"{arg}: {exc}") from None
    try:
        return parse_graph_spec(arg)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def load_hypergraph(args) -> tuple[UniformHypergraph, str]:
    if args.family:
        try:
            return parse_family_spec(args.family), args.family
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    try:
        return read_hypergraph(args.hypergraph), args.hypergraph
    except FormatError as exc:
        raise UsageError(f"{args.hypergraph}: {exc}") from None
    except OSError as exc:
        raise UsageError(str(exc)) from None


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def budget_of(args) -> Budget:
    return Budget(max_nodes=args.max_nodes, timeout_ms=args.timeout_ms)


# -- output -----------------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k) if not isinstance(k, (str, int)) else k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        seq = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in seq]
    if isinstance(x, float) and not math.isfinite(x):
        return None
    if hasattr(x, "item"):
        return x.item()
    return x


def render(obj, fmt: str) -> str:
    obj = _jsonable(obj)
    if fmt == "json":
        return json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        rows = obj if isinstance(obj, list) else [obj]
        keys = sorted({k for r in rows for k in r})
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(keys)
        for r in rows:
            w.writerow([v if not isinstance(v, (dict, list)) else json.dumps(v, sort_keys=True)
                        for v in (r.get(k) for k in keys)])
        return buf.getvalue()
    lines = []
    for k in sorted(obj) if isinstance(obj, dict) else []:
        v = obj[k]
        lines.append(f"{k}: {v if not isinstance(v, (dict, list)) else json.dumps(v, sort_keys=True)}")
    return "\n".join(lines) + "\n"


def verdict_record(prop: str, instance: str, d: Decision, witness, started: float) -> dict:
    return {"property": prop, "instance": instance,
            "verdict": "inconclusive" if d.verdict is None else d.verdict,
            "witness": witness, "nodes_expanded": d.nodes_expanded,
            "wall_ms": round((time.perf_counter() - started) * 1000, 3)}


def _exit_for(d: Decision) -> int:
    return EXIT_INCONCLUSIVE if d.verdict is None else EXIT_OK


# -- subcommands --------------------------------------------------------------------

def cmd_build(args):
    H, _ = load_hypergraph(args)
    if args.format == "text":
        return format_hypergraph(H), EXIT_OK
    out = {"s": H.s, "n": H.n, "m": H.e, "edges": [list(e) for e in H.edges]}
    if H.labels is not None and args.format == "json":
        out["labels"] = list(H.labels)
    return out, EXIT_OK


def cmd_profile(args):
    H, name = load_hypergraph(args)
    if H.e == 0:
        raise UsageError("profile needs a hypergraph with at least one edge")
    out = degree_profile(H).as_dict()
    out["instance"] = name
    return out, EXIT_OK


def cmd_analyze_graph(args):
    G = load_graph(args.graph)
    rs = parse_int_list(args.rs)
    rep = analysis.graph_report(G, rs=rs, budget=budget_of(args))
    out = rep.as_dict()
    out["instance"] = args.graph
    # a disconnected pattern has no rainbow verdict by design, not for lack of budget
    undecided = [rep.collapsible, rep.semi_collapsible]
    if G.is_connected():
        undecided += list(rep.rsc.values())
    return out, EXIT_INCONCLUSIVE if None in undecided else EXIT_OK


def cmd_arrow(args):
    G, H = load_graph(args.g), load_graph(args.h)
    t = time.perf_counter()
    d = colouring.arrow_check(G, H, args.r, budget=budget_of(args))
    wit = None if not isinstance(d.witness, dict) else \
        [[u, v, c] for (u, v), c in sorted(d.witness.items())]
    return verdict_record("arrow", f"{args.g} -> ({args.h})_{args.r}", d, wit, t), _exit_for(d)


def cmd_colour(args):
    H, name = load_hypergraph(args)
    t = time.perf_counter()
    d = colouring.proper_colouring(H, args.r, budget=budget_of(args))
    rec = verdict_record(f"{args.r}-colourable", name, d, d.witness, t)
    if args.min_mono:
        mm = colouring.min_monochromatic_edges(H, args.r, budget=budget_of(args))
        rec["min_monochromatic_edges"] = mm.value
        rec["min_monochromatic_exact"] = mm.exact
    return rec, _exit_for(d)


def cmd_choosable(args):
    t = time.perf_counter()
    if args.g or args.h:
        if not (args.g and args.h) or args.family or args.hypergraph:
            raise UsageError("give --g and --h together, or a single hypergraph source")
        G, H = load_graph(args.g), load_graph(args.h)
        d = colouring.is_2_choosable_wrt(G, H, universe=args.r or 4, budget=budget_of(args),
                                         max_vertices=args.max_vertices)
        wit = None if d.witness is None else \
            [[u, v, list(L)] for (u, v), L in sorted(d.witness.items())]
        return verdict_record("2-choosable-wrt", f"{args.g} wrt {args.h}", d, wit, t), _exit_for(d)
    if not (args.family or args.hypergraph):
        raise UsageError("one of --family, --hypergraph or --g/--h is required")
    H, name = load_hypergraph(args)
    d = colouring.is_2_choosable(H, args.r or 4, max_vertices=args.max_vertices,
                                 budget=budget_of(args))
    wit = None if d.witness is None else [list(L) for L in d.witness]
    return verdict_record("2-choosable", name, d, wit, t), _exit_for(d)


def cmd_list_ramsey(args):
    t = time.perf_counter()
    Y = parse_int_list(args.set)
    if args.kind == "schur":
        d = colouring.is_list_schur(Y, args.n, universe=args.universe, budget=budget_of(args),
                                    max_vertices=args.max_vertices)
        prop = "list-schur"
    else:
        if args.k is None:
            raise UsageError("--k is required for vdw")
        d = colouring.is_list_vdw(Y, args.n, args.k, universe=args.universe,
                                  budget=budget_of(args), max_vertices=args.max_vertices)
        prop = f"list-{args.k}-vdw"
    wit = None if d.witness is None else [[y, list(L)] for y, L in sorted(d.witness.items())]
    return verdict_record(prop, f"Y={sorted(set(Y))} in Z_{args.n}", d, wit, t), _exit_for(d)


def _vertex_set(args, H) -> list[int]:
    if args.set is None:
        return list(range(H.n))
    S = parse_int_list(args.set)
    if any(not 0 <= v < H.n for v in S):
        raise UsageError("vertex set out of range")
    return S


def cmd_reveal(args):
    H, _ = load_hypergraph(args)
    S = _vertex_set(args, H)
    try:
        tr = structure.reveal_layers(H, S)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "text":
        return tr.to_jsonl(), EXIT_OK
    return {"d": tr.d, "degenerate": structure.count_degenerate(tr),
            "layers": [sorted(L) for L in tr.layers],
            "steps": [st.as_dict() for st in tr.steps]}, EXIT_OK


def cmd_clots(args):
    H, name = load_hypergraph(args)
    if H.s < 3:
        raise UsageError("clots need uniformity at least 3")
    S = _vertex_set(args, H)
    clots = structure.find_clots(H, S)
    return {"instance": name, "count": len(clots), "clots": [c.as_dict() for c in clots]}, EXIT_OK


def cmd_obstruction(args):
    if args.sweep:
        if args.seed is None:
            raise UsageError("--seed is required for --sweep")
        rng = random.Random(args.seed)
        hs = []
        for _ in range(args.instances):
            n = rng.randint(5, 9)
            hs.append(structure.random_bounded_codegree(n, rng.randint(n, 3 * n), 3, 3, rng))
        res = structure.obstruction_sweep(hs, max_size=args.max_size, r=args.universe)
        return {"instances": res.instances, "minimal_sets": res.minimal_sets,
                "by_degenerate": res.by_degenerate, "by_clot_only": res.by_clot_only,
                "violations": [{"edges": [list(e) for e in H.edges], "set": list(S)}
                               for H, S in res.violations]}, \
            EXIT_OK
    if not (args.family or args.hypergraph):
        raise UsageError("a hypergraph source is required unless --sweep is given")
    H, name = load_hypergraph(args)
    S = _vertex_set(args, H)
    rep = structure.check_obstruction(H, S, args.universe, budget=budget_of(args))
    out = rep.as_dict()
    out["instance"] = name
    code = EXIT_INCONCLUSIVE if rep.reason.startswith("inconclusive") else EXIT_OK
    return out, code


def cmd_count(args):
    what = args.what
    if what in ("prestars", "preconstellations"):
        if args.sets is None or args.n is None:
            raise UsageError("--sets and --n are required")
        Y = [parse_int_list(part) for part in args.sets.split(";")]
        out = {"N": args.n, "t": len(Y), "prestars": counting.count_prestars(Y, args.n)}
        if what == "preconstellations":
            out["preconstellations"] = counting.count_preconstellations(Y, args.n)
            out["bound"] = counting.preconstellation_bound(Y, args.n)
        return out, EXIT_OK
    if not (args.family or args.hypergraph):
        raise UsageError("a hypergraph source is required")
    H, name = load_hypergraph(args)
    out = {"instance": name, "r": args.r}
    if what == "stars":
        out["stars"] = counting.count_stars(H, args.r)
    elif what == "constellations":
        out["constellations"] = counting.count_constellations(H, args.r)
    else:
        if args.colouring is None:
            raise UsageError("--colouring is required for rainbow counts")
        psi = parse_int_list(args.colouring)
        if len(psi) != H.n:
            raise UsageError(f"--colouring needs {H.n} entries (0 = uncoloured)")
        out.update(counting.count_rainbow(H, args.r, psi).as_dict())
    return out, EXIT_OK


def cmd_sample(args):
    H, name = load_hypergraph(args)
    try:
        cfg = sampling.SampleConfig(args.p, args.trials, args.seed, args.property,
                                    args.r, args.k, args.max_nodes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = sampling.monte_carlo(H, cfg, workers=args.workers)
    out = res.as_dict()
    out.update({"instance": name, "property": args.property, "seed": args.seed})
    return out, EXIT_INCONCLUSIVE if res.decided == 0 else EXIT_OK


def _curve_settings(args) -> dict:
    conf = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                conf = sampling.read_config(fh.read())
        except (OSError, ValueError) as exc:
            raise UsageError(f"{args.config}: {exc}") from None
    def pick(key, cli, cast):
        if cli is not None:
            return cli
        if key in conf:
            try:
                return cast(conf[key])
            except ValueError:
                raise UsageError(f"bad value for {key}: {conf[key]!r}") from None
        return None
    out = {
        "family": pick("family", args.family, str),
        "size": pick("size", args.size, int),
        "r": pick("r", args.r, int) or 2,
        "k": pick("k", args.k, int) or 3,
        "pattern": pick("pattern", args.pattern, str) or "complete:3",
        "grid": pick("grid", args.grid, str),
        "trials": pick("trials", args.trials, int),
        "seed": pick("seed", args.seed, int),
    }
    for key in ("family", "size", "grid", "trials", "seed"):
        if out[key] is None:
            raise UsageError(f"--{key} is required (flag or config file)")
    return out


def cmd_curve(args):
    st = _curve_settings(args)
    try:
        fam = sampling.make_family(st["family"], st["size"], st["r"], st["k"], st["pattern"])
        grid = sampling.parse_grid(st["grid"])
        curve = sampling.threshold_curve(fam, st["size"], grid, st["trials"], st["seed"],
                                         workers=args.workers, max_nodes=args.max_nodes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    code = EXIT_INCONCLUSIVE if sum(curve.inconclusive) else EXIT_OK
    if args.format == "csv":
        return curve.to_csv(), code
    summary = curve.summary()
    summary.update({"family": st["family"], "r": st["r"], "seed": st["seed"]})
    if args.format == "json":
        rows = []
        for p, s, d, (lo, hi), f in zip(curve.grid, curve.successes, curve.decided,
                                         curve.intervals(), curve.fitted):
            rows.append({"p": p, "successes": s, "trials": d,
                         "freq": s / d if d else None, "wilson_lo": lo, "wilson_hi": hi,
                         "fitted": f})
        summary["rows"] = rows
    return summary, code


def cmd_janson(args):
    if args.sets:
        sets = [parse_int_list(part) for part in args.sets.split(";")]
        name = "sets"
    elif args.family or args.hypergraph:
        H, name = load_hypergraph(args)
        sets = [list(e) for e in H.edges]
    else:
        raise UsageError("give --sets or a hypergraph source")
    if args.p is not None:
        p = args.p
    elif args.p_scale is not None and (args.family or args.hypergraph):
        p = args.p_scale * p_H(H)
    else:
        raise UsageError("--p (or --p-scale with a hypergraph) is required")
    if not 0 <= p <= 1:
        raise UsageError("p must lie in [0, 1]")
    mu = janson.expectation(sets, p)
    t = args.t if args.t is not None else args.t_fraction * mu
    try:
        inp = janson.JansonInput(sets, p, t)
        bound = janson.janson_bound(inp)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = {"instance": name, "p": p, "t": t, "mu": mu,
           "pseudo_variance": janson.pseudo_variance(sets, p), "bound": bound}
    if args.trials:
        if args.seed is None:
            raise UsageError("--seed is required with --trials")
        out["monte_carlo"] = janson.lower_tail_monte_carlo(inp, args.trials, args.seed).as_dict()
        if args.c is not None:
            n = inp.ground
            out["coarseness"] = janson.local_coarseness_check(
                sets, n, p, args.c, args.trials, args.seed).as_dict()
    return out, EXIT_OK


# -- parser -------------------------------------------------------------------------

def _common(p, seed_required=False, fmt="json"):
    p.add_argument("--format", choices=["json", "csv", "text"], default=fmt)
    p.add_argument("--output", "-o", help="write here instead of standard output")
    p.add_argument("--max-nodes", type=int, default=None)
    p.add_argument("--timeout-ms", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int, required=seed_required, default=None)


def _hyper_source(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--family", help="schur:N, schur0:N, kap:k,N, copies:<graph>@n or fano")
    g.add_argument("--hypergraph", help="hypergraph file ('s n m' header)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="sharpramsey", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("build", help="build a family hypergraph")
    _hyper_source(p)
    _common(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("profile", help="degree profile and p_H")
    _hyper_source(p)
    _common(p)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("analyze-graph", help="densities, collapsibility, rainbow criterion")
    p.add_argument("--graph", required=True, help="atlas spec or graph file")
    p.add_argument("--rs", default="2,3", help="colour counts for the rainbow criterion")
    _common(p)
    p.set_defaults(func=cmd_analyze_graph)

    p = sub.add_parser("arrow", help="decide G -> (H)_r")
    p.add_argument("--g", required=True)
    p.add_argument("--h", required=True)
    p.add_argument("--r", type=int, default=2)
    _common(p)
    p.set_defaults(func=cmd_arrow)

    p = sub.add_parser("colour", help="proper r-colouring of a hypergraph")
    _hyper_source(p)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--min-mono", action="store_true",
                   help="also report the fewest monochromatic edges")
    _common(p)
    p.set_defaults(func=cmd_colour)

    p = sub.add_parser("choosable", help="2-choosability of a hypergraph or of G w.r.t. H")
    _hyper_source(p, required=False)
    p.add_argument("--g")
    p.add_argument("--h")
    p.add_argument("--r", type=int, default=None, help="colour universe (default 4)")
    p.add_argument("--max-vertices", type=int, default=16)
    _common(p)
    p.set_defaults(func=cmd_choosable)

    p = sub.add_parser("list-ramsey", help="list-Schur / list-van der Waerden")
    p.add_argument("--kind", choices=["schur", "vdw"], required=True)
    p.add_argument("--set", required=True, help="comma-separated residues")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--universe", type=int, default=4)
    p.add_argument("--max-vertices", type=int, default=16)
    _common(p)
    p.set_defaults(func=cmd_list_ramsey)

    p = sub.add_parser("reveal", help="layer-revealing trace (text = JSON lines)")
    _hyper_source(p)
    p.add_argument("--set", help="comma-separated vertices (default all)")
    _common(p)
    p.set_defaults(func=cmd_reveal)

    p = sub.add_parser("clots", help="find clots")
    _hyper_source(p)
    p.add_argument("--set")
    _common(p)
    p.set_defaults(func=cmd_clots)

    p = sub.add_parser("obstruction", help="degenerate-or-clot check, or a random sweep")
    _hyper_source(p, required=False)
    p.add_argument("--set")
    p.add_argument("--sweep", action="store_true")
    p.add_argument("--instances", type=int, default=100)
    p.add_argument("--max-size", type=int, default=8)
    p.add_argument("--universe", type=int, default=4)
    _common(p)
    p.set_defaults(func=cmd_obstruction)

    p = sub.add_parser("count", help="stars, constellations, rainbow, prestars")
    _hyper_source(p, required=False)
    p.add_argument("--what", required=True,
                   choices=["stars", "constellations", "rainbow", "prestars", "preconstellations"])
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--colouring", help="comma-separated colours, 0 = uncoloured")
    p.add_argument("--sets", help="residue sets separated by ';'")
    p.add_argument("--n", type=int)
    _common(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("sample", help="Monte Carlo frequency of a property")
    _hyper_source(p)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--property", default="non-r-colourable", choices=sampling.PROPERTIES)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--k", type=int, default=8)
    _common(p, seed_required=True)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("curve", help="threshold curve (CSV by default)")
    p.add_argument("--family", choices=["copies", "kap", "schur"])
    p.add_argument("--size", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--pattern", help="graph for the copies family (default complete:3)")
    p.add_argument("--grid", help="'a,b,c' or 'start:stop:count'")
    p.add_argument("--trials", type=int)
    p.add_argument("--config", help="key = value experiment file")
    _common(p, fmt="csv")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("janson", help="pseudo-variance, Janson bound, optional Monte Carlo")
    _hyper_source(p, required=False)
    p.add_argument("--sets", help="sets separated by ';', elements by ','")
    p.add_argument("--p", type=float)
    p.add_argument("--p-scale", type=float, help="p as a multiple of p_H")
    p.add_argument("--t", type=float)
    p.add_argument("--t-fraction", type=float, default=0.5, help="t as a fraction of mu")
    p.add_argument("--trials", type=int, default=0)
    p.add_argument("--c", type=float, help="also check local coarseness at c*p")
    _common(p)
    p.set_defaults(func=cmd_janson)
    return ap


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        argv = list(sys.argv[1:] if argv is None else argv)
        args = ap.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        if args.workers < 1:
            raise UsageError("--workers must be positive")
        result, code = args.func(args)
    except UsageError as exc:
        print(f"sharpramsey: error: {exc}", file=stderr)
        return EXIT_USAGE
    text = result if isinstance(result, str) else render(result, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
