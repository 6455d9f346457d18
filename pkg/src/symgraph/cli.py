"""Command-line front end.

Every subcommand prints one JSON object per run on stdout; diagnostics go to
stderr.  Exit codes: 0 success, 2 input error, 3 contract violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import generators, oracles
from .core import (
    ContractError,
    GraphFormatError,
    OpCounter,
    VertexSet,
    read_graph,
    read_vertex_set,
    write_graph,
)
from .diameter import diameter_2approx, diameter_approx, diameter_approx_with_x, diameter_exact
from .kernels import BACKEND
from .objectives import KINDS, ObjectiveQuery, solve
from .protocol import ALGORITHMS, simulate
from .reductions import DisjointnessInstance, generate
from .scc import scc_decomposition

FAMILIES = ("random", "strongly-connected", "path", "cycle", "complete", "edgeless")


class InputError(Exception):
    """Bad flag values or unreadable input; maps to exit code 2."""


def _emit(obj, out):
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def _report(args, result, counters, started, digest=None):
    return {
        "command": args.command,
        "input_digest": digest,
        "result": result,
        "counters": counters,
        "wall_ms": round((time.perf_counter() - started) * 1000, 3),
        "seed": args.seed,
    }


def _int_list(text):
    if text is None:
        return None
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def _instance(args):
    sx, sy = _int_list(args.sx), _int_list(args.sy)
    if args.k is None:
        raise InputError("--k is required")
    if (sx is None) != (sy is None):
        raise InputError("give both --sx and --sy, or neither")
    if sx is None:
        return DisjointnessInstance.random(args.k, args.seed, args.mode)
    return DisjointnessInstance.from_sets(args.k, sx, sy)


def _variant(args):
    out = {}
    if getattr(args, "add_loop_v0", False):
        out["add_loop_v0"] = True
    if getattr(args, "replace_top_loop", False):
        out["replace_top_loop_with_back_edge"] = True
    return out


def _load_graph(path):
    try:
        return read_graph(path)
    except GraphFormatError as exc:
        exc.filename = path
        raise


def _load_set(path, n, ctr=None):
    try:
        return read_vertex_set(path, n, ctr)
    except GraphFormatError as exc:
        exc.filename = path
        raise


METHODS = {"safe": ("fixpoint", "via_scc"), "buchi": ("via_scc", "per_target")}


def _family_graph(family, n, p, seed):
    if n is None:
        raise InputError("--n is required for graph families")
    if family == "random":
        return generators.random_digraph(n, p, seed)
    if family == "strongly-connected":
        return generators.random_strongly_connected(n, p, seed)
    return getattr(generators, family)(n)


# subcommands -------------------------------------------------------------------

def cmd_gen(args, out):
    started = time.perf_counter()
    if (args.reduction is None) == (args.family is None):
        raise InputError("give exactly one of --reduction or --family")
    meta = {"seed": args.seed}
    if args.reduction is not None:
        inst = _instance(args)
        G, part = generate(args.reduction, inst, args.ell, **_variant(args))
        meta.update({
            "reduction": args.reduction,
            "k": inst.k,
            "ell": args.ell,
            "disjoint": inst.disjoint,
            "sx": sorted(inst.sx),
            "sy": sorted(inst.sy),
            "possible_edges": [
                {"u": e.u, "v": e.v, "index": e.index, "rule": e.rule, "party": e.party}
                for e in part.possible
            ],
            **_variant(args),
        })
    else:
        G = _family_graph(args.family, args.n, args.p, args.seed)
        meta.update({"family": args.family, "n": args.n, "p": args.p})
    write_graph(G, args.out)
    sidecar = args.sidecar or args.out + ".json"
    with open(sidecar, "w", encoding="utf-8") as fh:
        json.dump(meta, fh, sort_keys=True, indent=1)
        fh.write("\n")
    result = {"n": G.n, "m": G.m, "graph": args.out, "sidecar": sidecar}
    if "disjoint" in meta:
        result["disjoint"] = meta["disjoint"]
    _emit(_report(args, result, None, started, G.digest()), out)


def cmd_scc(args, out):
    G = _load_graph(args.graph)
    started = time.perf_counter()
    rep = scc_decomposition(G, OpCounter())
    comps = [c.to_list() for c in rep.components]
    result = {"count": len(comps), "components": comps}
    _emit(_report(args, result, rep.counters, started, G.digest()), out)


def cmd_diameter(args, out):
    G = _load_graph(args.graph)
    started = time.perf_counter()
    ctr = OpCounter()
    if args.mode == "exact":
        est = diameter_exact(G, ctr)
    elif args.mode == "2approx":
        est = diameter_2approx(G, ctr)
    elif args.x is not None:
        est = diameter_approx_with_x(G, args.x, ctr)
    else:
        if args.eps is None:
            raise InputError("--mode eps needs --eps or --x")
        try:
            eps = Fraction(args.eps)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"--eps must be a rational number, got {args.eps!r}") from None
        est = diameter_approx(G, eps, ctr, method=args.method)
    result = {"mode": est.mode, "value": est.value, "x_used": est.x_used}
    _emit(_report(args, result, est.counters, started, G.digest()), out)


def cmd_objective(args, out):
    if args.method is not None and args.method not in METHODS.get(args.kind, ()):
        raise InputError(f"method {args.method!r} does not apply to {args.kind}")
    G = _load_graph(args.graph)
    started = time.perf_counter()
    ctr = OpCounter()
    T = _load_set(args.target, G.n, ctr)
    win = solve(G, ObjectiveQuery(args.kind, T), ctr, args.method)
    result = {"kind": args.kind, "method": args.method, "winning": win.to_list()}
    del T, win
    _emit(_report(args, result, ctr.snapshot(), started, G.digest()), out)


def cmd_protocol(args, out):
    started = time.perf_counter()
    inst = _instance(args)
    target = _int_list(args.target_set)
    tr = simulate(args.reduction, inst, args.algorithm, ell=args.ell, target=target,
                  **_variant(args))
    result = {**tr.to_dict(), "disjoint": inst.disjoint, "answer": tr.answer}
    G, _ = generate(args.reduction, inst, args.ell, **_variant(args))
    _emit(_report(args, result, None, started, G.digest()), out)


def _bench_one(job):
    family, n, seed, algorithm, p = job
    if family == "reduction1":
        k = n
        ell = max(1, int(k ** 0.5))
        while k % ell:
            ell -= 1
        inst = DisjointnessInstance.random(k, seed, "disjoint")
        G, _ = generate(1, inst, ell)
    else:
        G = _family_graph(family, n, p, seed)
    ctr = OpCounter()
    started = time.perf_counter()
    if algorithm == "scc":
        value = len(scc_decomposition(G, ctr).components)
    elif algorithm == "diameter_exact":
        value = diameter_exact(G, ctr).value
    elif algorithm == "diameter_eps":
        value = diameter_approx(G, Fraction(1, 2), ctr).value
    else:
        value = solve(G, ObjectiveQuery(algorithm, VertexSet(G.n, [0], ctr)), ctr).to_list()
        value = len(value)
    return {
        "command": "bench",
        "family": family,
        "n": G.n,
        "m": G.m,
        "seed": seed,
        "algorithm": algorithm,
        "backend": BACKEND,
        "input_digest": G.digest(),
        "result": value,
        "counters": ctr.snapshot(),
        "wall_ms": round((time.perf_counter() - started) * 1000, 3),
    }


def cmd_bench(args, out):
    sizes = _int_list(args.sizes)
    if not sizes or any(s <= 0 for s in sizes):
        raise InputError("--sizes must list positive integers")
    jobs = [(args.family, n, args.seed + i, args.algorithm, args.p)
            for n in sizes for i in range(args.repeat)]
    try:
        threads = max(1, int(os.environ.get("SYMGRAPH_THREADS", "1")))
    except ValueError:
        raise InputError("SYMGRAPH_THREADS must be an integer") from None
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for rec in pool.map(_bench_one, jobs):
            _emit(rec, out)


def cmd_oracle(args, out):
    G = _load_graph(args.graph)
    started = time.perf_counter()
    eg = oracles.ExplicitGraph.from_graph(G)
    if args.what == "scc":
        parts = sorted(sorted(c) for c in oracles.tarjan_scc(eg))
        result = {"count": len(parts), "components": parts}
    elif args.what == "diameter":
        D, per = oracles.bfs_all_pairs_diameter(eg)
        result = {"value": D, "per_scc": sorted([sorted(c), d] for c, d in per.items())}
    else:
        if args.target is None:
            raise InputError("--target is required for objectives")
        T = _load_set(args.target, G.n).to_frozenset()
        result = {"kind": args.what, "winning": sorted(oracles.explicit_objective(eg, args.what, T))}
    _emit(_report(args, result, None, started, G.digest()), out)


# parser -------------------------------------------------------------------------

def _add_instance_flags(p):
    p.add_argument("--k", type=int, help="universe size")
    p.add_argument("--ell", type=int, help="number of blocks (reduction 1)")
    p.add_argument("--sx", help="Alice's set, comma-separated")
    p.add_argument("--sy", help="Bob's set, comma-separated")
    p.add_argument("--mode", choices=("uniform", "disjoint", "intersecting"), default="uniform",
                   help="random instance mode when --sx/--sy are absent")
    p.add_argument("--add-loop-v0", action="store_true")
    p.add_argument("--replace-top-loop", action="store_true",
                   help="reduction 3: back edge v_k -> v_0 instead of the loop at v_k")


def build_parser():
    ap = argparse.ArgumentParser(prog="symgraph", description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0, help="64-bit seed (default 0)")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("gen", help="generate a graph file and JSON sidecar")
    p.add_argument("--reduction", type=int, choices=(1, 2, 3, 4))
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float, default=0.1)
    p.add_argument("--out", required=True)
    p.add_argument("--sidecar")
    _add_instance_flags(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("scc", help="SCC decomposition")
    p.add_argument("graph")
    p.set_defaults(func=cmd_scc)

    p = sub.add_parser("diameter", help="exact or approximate diameter")
    p.add_argument("graph")
    p.add_argument("--mode", choices=("exact", "2approx", "eps"), default="exact")
    p.add_argument("--eps")
    p.add_argument("--x", type=int)
    p.add_argument("--method", choices=("auto", "doubling"), default="auto")
    p.set_defaults(func=cmd_diameter)

    p = sub.add_parser("objective", help="winning set of an objective")
    p.add_argument("graph")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--target", required=True, help="vertex-set file")
    p.add_argument("--method", choices=("fixpoint", "via_scc", "per_target"))
    p.set_defaults(func=cmd_objective)

    p = sub.add_parser("protocol", help="communication cost of an algorithm on a reduction")
    p.add_argument("--reduction", type=int, choices=(1, 2, 3, 4), required=True)
    p.add_argument("--algorithm", choices=ALGORITHMS, required=True)
    p.add_argument("--target-set", help="comma-separated target vertices")
    _add_instance_flags(p)
    p.set_defaults(func=cmd_protocol)

    p = sub.add_parser("bench", help="sweep instance sizes, one JSON line per run")
    p.add_argument("--family", choices=FAMILIES + ("reduction1",), default="random")
    p.add_argument("--sizes", default="16,32,64")
    p.add_argument("--repeat", type=int, default=1)
    p.add_argument("--p", type=float, default=0.1)
    p.add_argument("--algorithm", default="scc",
                   choices=("scc", "diameter_exact", "diameter_eps") + KINDS)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("oracle", help=argparse.SUPPRESS)
    p.add_argument("graph")
    p.add_argument("--what", choices=("scc", "diameter") + KINDS, default="scc")
    p.add_argument("--target")
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    if not 0 <= args.seed < 2**64:
        print("error: --seed must fit in 64 bits", file=sys.stderr)
        return 2
    try:
        args.func(args, out)
    except GraphFormatError as exc:
        print(f"error: {getattr(exc, 'filename', '<input>')}: {exc}", file=sys.stderr)
        return 2
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ContractError as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
