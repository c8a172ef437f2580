"""Command-line interface.

Exit codes: 0 decided/verified, 1 property refuted or unresolved instances,
2 usage error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from contextlib import contextmanager

from . import __version__
from .certificates import (
    CertificateDocument,
    CertificateSchemaError,
    check_certificate,
    decomposition_certificate,
    dicolouring_certificate,
    dicritical_certificate,
    refusal_certificate,
)
from .constructions import (
    acyclic_c5_no_p4,
    backward_blowup,
    complete_bipartite,
    cycle_graph,
    d25,
    directed_cycle,
    directed_path,
    grotzsch,
    paley_tournament,
    transitive_tournament,
)
from .enumeration import UnsupportedOrder, enumerate_triangle_free
from .experiments import dsparse_batch, tournament_scan
from .formats import FormatError, decode_any, encode_digraph6, encode_graph6
from .graphs import DEFAULT_BUDGET, BudgetExceeded, Digraph, UndirectedGraph, acyclic_number, underlying_graph
from .orders import (
    SizeLimitError,
    backedge_degrees,
    dichromatic_via_orders,
    halve_degree_order,
    max_directed_linear_forest,
    min_orientation_linear_forest,
)
from .pipeline import (
    cut_decomposition_search,
    extremal_scan,
    graph6_source,
    internal_source,
    exception_census,
    sweep,
    verify_small_deletion,
)
from .solver import Verdict, dichromatic_number, is_k_dicolourable, is_k_dicritical
from .sparse import acyclic_number_demo, chi_bound_check, verify_lll_constants

log = logging.getLogger("dichro")

EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
THREADS_ENV = "DICHRO_THREADS"


class UsageError(Exception):
    pass


def named_instance(name: str) -> UndirectedGraph | Digraph:
    """Built-in instances: d25, paley:Q, cycle:L (directed), path:N, tt:N,
    c5a, c5b, grotzsch, c:N (undirected cycle), k44."""
    key, _, arg = name.partition(":")
    key = key.lower()
    try:
        if key == "d25":
            return d25()
        if key == "paley":
            return paley_tournament(int(arg))
        if key == "p7":
            return paley_tournament(7)
        if key == "p11":
            return paley_tournament(11)
        if key == "cycle":
            return directed_cycle(int(arg))
        if key == "path":
            return directed_path(int(arg))
        if key == "tt":
            return transitive_tournament(int(arg))
        if key == "c5a":
            return acyclic_c5_no_p4()[0]
        if key == "c5b":
            return acyclic_c5_no_p4()[1]
        if key == "grotzsch":
            return grotzsch()
        if key == "c":
            return cycle_graph(int(arg))
        if key == "k44":
            return complete_bipartite(4, 4)
    except ValueError as exc:
        raise UsageError(f"bad instance {name!r}: {exc}") from exc
    raise UsageError(f"unknown instance {name!r}")


def load_instances(args) -> list[UndirectedGraph | Digraph]:
    if getattr(args, "graph", None):
        return [named_instance(args.graph)]
    path = getattr(args, "input", None)
    if not path:
        raise UsageError("give --graph NAME or --input FILE")
    try:
        fh = sys.stdin if path == "-" else open(path, encoding="ascii")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    out = []
    with fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                out.append(decode_any(line))
            except FormatError as exc:
                raise UsageError(f"{path}:{lineno}: {exc}") from exc
    if not out:
        raise UsageError(f"{path}: no instances")
    return out


def as_digraph(x) -> Digraph:
    if isinstance(x, Digraph):
        return x
    raise UsageError("this command needs a digraph (digraph6 input)")


def as_graph(x) -> UndirectedGraph:
    if isinstance(x, UndirectedGraph):
        return x
    return underlying_graph(x)


def thread_count(flag: int | None) -> int:
    if flag is not None:
        if flag < 1:
            raise UsageError("--threads must be positive")
        return flag
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            value = int(env)
        except ValueError as exc:
            raise UsageError(f"{THREADS_ENV} must be an integer") from exc
        if value >= 1:
            return value
    return os.cpu_count() or 1


@contextmanager
def output_stream(path: str | None):
    if not path or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


class Emitter:
    """Writes either JSON lines (--format json) or human-readable text."""

    def __init__(self, args, stream):
        self.json = getattr(args, "format", None) == "json"
        self.stream = stream

    def record(self, data: dict, text: str):
        if self.json:
            self.stream.write(json.dumps(data, sort_keys=True) + "\n")
        else:
            self.stream.write(text + "\n")


def _stats(outcome, timing: bool) -> dict:
    data = outcome.stats.as_dict()
    if not timing:
        data.pop("seconds", None)
    return data


# -- subcommands --------------------------------------------------------------------


def cmd_dichromatic(args) -> int:
    code = EXIT_OK
    with output_stream(args.output) as out:
        em = Emitter(args, out)
        for inst in load_instances(args):
            d = as_digraph(inst)
            if args.k is not None:
                outcome = is_k_dicolourable(d, args.k, args.budget)
                data = {"instance": encode_digraph6(d), "k": args.k, "verdict": outcome.verdict.value, "stats": _stats(outcome, args.timing)}
                if outcome.certificate is not None:
                    data["colouring"] = list(outcome.certificate.assignment)
                em.record(data, f"{args.k}-dicolourable: {outcome.verdict.value} (nodes {outcome.stats.nodes})")
                if outcome.verdict is Verdict.BUDGET_EXCEEDED:
                    code = max(code, EXIT_BUDGET)
                elif not outcome.dicolourable:
                    code = max(code, EXIT_REFUTED)
            else:
                res = dichromatic_number(d, args.budget)
                data = {"instance": encode_digraph6(d), "dichromatic_number": res.value, "colouring": list(res.certificate.assignment)}
                em.record(data, f"dichromatic number = {res.value}")
    return code


def cmd_acyclic(args) -> int:
    with output_stream(args.output) as out:
        em = Emitter(args, out)
        for inst in load_instances(args):
            d = as_digraph(inst)
            value, s = acyclic_number(d, args.budget)
            em.record({"instance": encode_digraph6(d), "acyclic_number": value, "set": sorted(s)}, f"acyclic number = {value}, set {sorted(s)}")
    return EXIT_OK


def cmd_dicritical(args) -> int:
    if args.k is None:
        raise UsageError("dicritical needs --k")
    code = EXIT_OK
    with output_stream(args.output) as out:
        em = Emitter(args, out)
        for inst in load_instances(args):
            d = as_digraph(inst)
            rep = is_k_dicritical(d, args.k, args.budget)
            data = {
                "instance": encode_digraph6(d),
                "k": args.k,
                "dichromatic_ok": rep.dichromatic_ok,
                "vertex_critical": rep.vertex_critical,
                "arc_critical": rep.arc_critical,
                "vertex_failures": rep.vertex_failures,
                "arc_failures": [list(a) for a in rep.arc_failures],
            }
            em.record(data, f"{args.k}-dicritical: {'yes' if rep.is_dicritical else 'no'} "
                      f"(vertex-critical {rep.vertex_critical}, arc-critical {rep.arc_critical})")
            if not rep.is_dicritical:
                code = EXIT_REFUTED
    return code


def cmd_blowup(args) -> int:
    if args.m is None:
        raise UsageError("blowup needs --m")
    code = EXIT_OK
    with output_stream(args.output) as out:
        for inst in load_instances(args):
            d = as_digraph(inst)
            try:
                b = backward_blowup(d, args.m)
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
            if args.k is None:
                out.write(encode_digraph6(b) + "\n")
                continue
            outcome = is_k_dicolourable(b, args.k, args.budget)
            data = {"instance": encode_digraph6(b), "m": args.m, "k": args.k, "verdict": outcome.verdict.value, "stats": _stats(outcome, args.timing)}
            if outcome.certificate is not None:
                data["colouring"] = list(outcome.certificate.assignment)
            Emitter(args, out).record(data, f"{args.m}-backward-blowup ({b.n} vertices) {args.k}-dicolourable: {outcome.verdict.value}")
            if outcome.verdict is Verdict.BUDGET_EXCEEDED:
                code = max(code, EXIT_BUDGET)
            elif not outcome.dicolourable:
                code = max(code, EXIT_REFUTED)
    return code


def cmd_verify_d25(args) -> int:
    d = d25()
    rep = is_k_dicritical(d, 3, args.budget)
    value = 3 if rep.dichromatic_ok else None
    docs = []
    if rep.k_certificate is not None:
        docs.append(dicolouring_certificate(d, rep.k_certificate, args.seed))
    docs.append(refusal_certificate(d, 2, rep.refusal_stats, args.seed))
    if rep.is_dicritical:
        docs.append(dicritical_certificate(d, rep, args.seed))
    with output_stream(args.output) as out:
        if args.format == "json":
            for doc in docs:
                out.write(doc.to_json() + "\n")
        else:
            shown = "3" if value else "not 3"
            out.write(f"χ⃗ = {shown}, 3-dicritical: {'yes' if rep.is_dicritical else 'no'}\n")
            out.write(f"vertex deletions 2-dicolourable: {d.n - len(rep.vertex_failures)}/{d.n}\n")
            out.write(f"arc deletions 2-dicolourable: {d.m - len(rep.arc_failures)}/{d.m}\n")
            if rep.refusal_stats:
                out.write(f"2-dicolouring refuted after {rep.refusal_stats.nodes} search nodes\n")
    return EXIT_OK if rep.is_dicritical else EXIT_REFUTED


def cmd_order(args) -> int:
    with output_stream(args.output) as out:
        em = Emitter(args, out)
        for inst in load_instances(args):
            d = as_digraph(inst)
            if args.exact:
                try:
                    value, order = dichromatic_via_orders(d)
                except SizeLimitError as exc:
                    raise UsageError(str(exc)) from exc
                em.record({"instance": encode_digraph6(d), "min_backedge_chromatic": value, "order": order},
                          f"min chromatic number of backedge graph = {value}, order {order}")
            else:
                order = halve_degree_order(d)
                degrees = backedge_degrees(d, order)
                em.record({"instance": encode_digraph6(d), "order": order, "backedge_degrees": degrees},
                          f"order {order}; max backedge degree {max(degrees, default=0)}")
    return EXIT_OK


def cmd_linforest(args) -> int:
    with output_stream(args.output) as out:
        em = Emitter(args, out)
        for inst in load_instances(args):
            if isinstance(inst, UndirectedGraph):
                value, d = min_orientation_linear_forest(inst, args.budget)
                em.record({"instance": encode_graph6(inst), "min_over_orientations": value, "orientation": encode_digraph6(d)},
                          f"min over orientations of the max linear forest = {value}")
            else:
                value, forest = max_directed_linear_forest(inst, args.budget)
                em.record({"instance": encode_digraph6(inst), "max_linear_forest": value, "arcs": [list(a) for a in forest.arcs]},
                          f"max directed linear forest = {value} arcs, paths {forest.paths(inst.n)}")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    if args.n is None:
        raise UsageError("enumerate needs --n")
    try:
        graphs = enumerate_triangle_free(args.n, args.min_deg, args.max_deg)
        with output_stream(args.output) as out:
            for g in graphs:
                out.write(encode_graph6(g) + "\n")
    except UnsupportedOrder as exc:
        raise UsageError(str(exc)) from exc
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.input:
        if args.input != "-" and not os.path.exists(args.input):
            raise UsageError(f"cannot read {args.input}")
        source = graph6_source(args.input if args.input != "-" else "/dev/stdin")
    elif args.n_max is not None:
        if args.n_max > 12:
            raise UsageError("internal enumeration reaches n <= 12; pass graph6 files with --input beyond that")
        source = internal_source(args.n_max, args.n_min)
    else:
        raise UsageError("sweep needs --n-max or --input")
    summary, records = sweep(source, args.checkpoint, thread_count(args.threads), args.timing)
    with output_stream(args.output) as out:
        if args.format == "json":
            for r in records:
                out.write(r.to_json() + "\n")
            out.write(json.dumps({"summary": summary.as_dict()}, sort_keys=True) + "\n")
        else:
            out.write(f"instances: {summary.total}\n")
            out.write(f"verdicts: {summary.by_verdict}\n")
            out.write(f"passing all filters: {summary.survivors} {summary.survivor_buckets}\n")
            out.write(f"passing relevance filters: {summary.relevant} {summary.relevant_buckets}\n")
            for g6 in summary.unresolved:
                out.write(f"unresolved: {g6}\n")
    return EXIT_REFUTED if summary.unresolved else EXIT_OK


def cmd_decompose(args) -> int:
    code = EXIT_OK
    with output_stream(args.output) as out:
        for inst in load_instances(args):
            g = as_graph(inst)
            dec = cut_decomposition_search(g)
            if dec is None:
                code = EXIT_REFUTED
                out.write(json.dumps({"instance": encode_graph6(g), "decomposition": None}) + "\n")
            else:
                out.write(decomposition_certificate(g, dec).to_json() + "\n")
    return code


def cmd_experiment(args) -> int:
    name = args.name
    seed = args.seed
    if name == "tournaments":
        n = args.n or 8
        res = tournament_scan(n, args.samples if args.samples else None, seed)
        data = res.as_dict()
        text = f"min acyclic number over {res.tournaments} tournaments on {n} vertices = {res.min_acyclic_number}"
    elif name == "dsparse":
        res = dsparse_batch(args.samples or 100, seed=seed)
        data = res.as_dict()
        text = f"{res.successes}/{res.graphs} successes, mean trials {res.mean_trials:.3f}"
    elif name == "demo":
        res = acyclic_number_demo(seed=seed)
        data = res.as_dict()
        lines = [res.note]
        for r in res.rows:
            lines.append(f"n={r.n} acyclic number {r.acyclic_number}  (107/8)sqrt(n)ln n = {r.threshold_ln:.1f}  with log2 = {r.threshold_log2:.1f}")
        text = "\n".join(lines)
    elif name == "small-deletion":
        checked = verify_small_deletion(args.n or 7)
        data = {"checked": {str(k): v for k, v in checked.items()}, "holds": True}
        text = f"vertex/arc witness found for all {sum(checked.values())} digraphs"
    elif name == "exception-census":
        c = exception_census()
        data = {
            "graphs": c.graphs,
            "survivors": c.survivors,
            "exceptional_labelled": c.exceptional_labelled,
            "exceptional_up_to_isomorphism": c.exceptional_up_to_isomorphism,
            "by_exception": c.by_exception,
            "unmatched": c.unmatched,
        }
        text = (f"{c.graphs} graphs, {c.survivors} survivors, {c.exceptional_labelled} exceptional orientations "
                f"({c.exceptional_up_to_isomorphism} up to isomorphism)")
    elif name == "chi-bound":
        insts = load_instances(args)
        g = as_graph(insts[0])
        r = chi_bound_check(g, seed=seed, budget=args.budget)
        data = {"n": r.n, "chromatic": r.chromatic, "max_dichromatic": r.max_dichromatic, "bound": r.bound,
                "holds": r.holds, "exhaustive": r.exhaustive, "orientations": r.orientations_checked}
        text = f"chi = {r.chromatic} <= {r.bound}: {r.holds}"
    else:
        raise UsageError(f"unknown experiment {name!r}")
    data = {"experiment": name, "seed": seed, **data}
    with output_stream(args.output) as out:
        Emitter(args, out).record(data, text)
    return EXIT_OK


def cmd_constants(args) -> int:
    rep = verify_lll_constants(args.c0, args.c1, args.c2, args.eps)
    with output_stream(args.output) as out:
        text = (
            f"c1(c1-1-ln c1) = {rep.lhs1:.9f} > 1+c2 = {rep.rhs1:.9f}: {rep.first_holds} (margin {rep.margin1:.9f})\n"
            f"c2 = {rep.lhs2:.9f} > (1+eps)(c0 c1)^2 = {rep.rhs2:.9f}: {rep.second_holds} (margin {rep.margin2:.9f})"
        )
        Emitter(args, out).record(rep.as_dict(), text)
    return EXIT_OK if rep.holds else EXIT_REFUTED


def cmd_extremal(args) -> int:
    if args.n is None:
        raise UsageError("extremal needs --n")
    try:
        res = extremal_scan(args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    data = {
        "n": res.n,
        "min_acyclic_number": res.min_acyclic_number,
        "min_witness": encode_digraph6(res.min_witness),
        "max_dichromatic_number": res.max_dichromatic,
        "max_witness": encode_digraph6(res.max_witness),
        "digraphs": res.digraphs_scanned,
    }
    with output_stream(args.output) as out:
        Emitter(args, out).record(data, f"n={res.n}: min acyclic number {res.min_acyclic_number}, max dichromatic number {res.max_dichromatic}")
    return EXIT_OK


def cmd_verify(args) -> int:
    if not args.input:
        raise UsageError("verify needs --input")
    code = EXIT_OK
    try:
        fh = open(args.input, encoding="utf-8")
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    with fh, output_stream(args.output) as out:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rep = check_certificate(CertificateDocument.from_json(line))
            except CertificateSchemaError as exc:
                raise UsageError(f"{args.input}:{lineno}: {exc}") from exc
            out.write(f"line {lineno}: {'valid' if rep.valid else 'INVALID'}"
                      + (f" (failed: {rep.failures})" if rep.failures else "")
                      + (f" (unchecked: {rep.unchecked})" if rep.unchecked else "") + "\n")
            if not rep.valid:
                code = EXIT_REFUTED
    return code


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dichro", description="Dicolouring toolkit for oriented triangle-free graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="graph6/digraph6 file, one instance per line ('-' for stdin)")
    common.add_argument("--graph", "-g", help="built-in instance, e.g. d25, p7, paley:11, cycle:3, c5a, grotzsch")
    common.add_argument("--output", "-o", help="output path (default stdout)")
    common.add_argument("--format", choices=["g6", "d6", "json"], default=None)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=None, help=f"worker count (env {THREADS_ENV})")
    common.add_argument("--checkpoint", help="append-only checkpoint file")
    common.add_argument("--timing", action="store_true", help="include wall-clock times in records")
    common.add_argument("--k", type=int, default=None)

    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    add("dichromatic", cmd_dichromatic, "dichromatic number, or decide k-dicolourability with --k")
    add("acyclic", cmd_acyclic, "acyclic number with a maximum acyclic set")
    add("dicritical", cmd_dicritical, "check k-dicriticality (needs --k)")
    p = add("blowup", cmd_blowup, "backward-blowup; with --k also decide its k-dicolourability")
    p.add_argument("--m", type=int, default=None)
    add("verify-d25", cmd_verify_d25, "prove the 25-vertex example is 3-dicritical")
    p = add("order", cmd_order, "order halving backedge degrees, or --exact minimum over all orders")
    p.add_argument("--exact", action="store_true")
    add("linforest", cmd_linforest, "maximum directed linear forest (digraph) or min over orientations (graph)")
    p = add("enumerate", cmd_enumerate, "triangle-free graphs as graph6")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--min-deg", type=int, default=0)
    p.add_argument("--max-deg", type=int, default=None)
    p = add("sweep", cmd_sweep, "decomposition sweep over triangle-free graphs")
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--n-min", type=int, default=1)
    add("decompose", cmd_decompose, "find an (X, Y, Z) decomposition certificate")
    p = add("experiment", cmd_experiment, "seeded experiments: tournaments, dsparse, demo, small-deletion, exception-census, chi-bound")
    p.add_argument("name")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--samples", type=int, default=None)
    p = add("constants", cmd_constants, "check the local-lemma inequalities for the sparse-orientation constants")
    p.add_argument("--c0", type=float, default=0.513)
    p.add_argument("--c1", type=float, default=3.43)
    p.add_argument("--c2", type=float, default=3.1)
    p.add_argument("--eps", type=float, default=1e-4)
    p = add("extremal", cmd_extremal, "extremal acyclic and dichromatic numbers for n <= 7")
    p.add_argument("--n", type=int, default=None)
    add("verify", cmd_verify, "re-check a certificate file")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"dichro: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"dichro: budget exceeded after {exc.nodes} nodes", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
