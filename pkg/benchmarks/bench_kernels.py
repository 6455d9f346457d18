"""Compare the compiled and numpy kernel backends.

Times the raw image kernel on random bit matrices, then an end-to-end SCC
decomposition with each backend swapped in.  Prints one JSON line per
measurement, e.g.

    python3 benchmarks/bench_kernels.py --sizes 256,1024 --repeat 5
"""

import argparse
import json
import time

import numpy as np

from symgraph import generators, kernels
from symgraph.core import Graph, OpCounter, _nwords
from symgraph.scc import scc_decomposition


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_image(mod, n, density, repeat, rng):
    G = Graph.from_adjacency(rng.random((n, n)) < density)
    s = np.zeros(_nwords(n), dtype=np.uint64)
    members = rng.choice(n, size=max(1, n // 4), replace=False)
    for v in members:
        s[v >> 6] |= np.uint64(1) << np.uint64(v & 63)
    out = np.empty_like(s)
    calls = 50
    secs = best_of(lambda: [mod.image(G._succ, s, out) for _ in range(calls)], repeat)
    return secs / calls


def bench_scc(backend, n, repeat, seed):
    G = generators.random_digraph(n, 2.0 / n, seed)
    kernels.set_backend(backend)
    ctr = OpCounter()
    secs = best_of(lambda: scc_decomposition(G, ctr), repeat)
    return secs, ctr.snapshot()["one_step"] // repeat


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="128,512,2048")
    ap.add_argument("--density", type=float, default=0.05)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    backends = kernels.available_backends()
    original = kernels.BACKEND
    rng = np.random.default_rng(args.seed)
    try:
        for n in (int(s) for s in args.sizes.split(",")):
            row = {"n": n}
            for b in backends:
                row[f"image_us_{b}"] = round(1e6 * bench_image(kernels.load(b), n, args.density,
                                                                args.repeat, rng), 3)
                secs, ops = bench_scc(b, n, args.repeat, args.seed)
                row[f"scc_ms_{b}"] = round(1e3 * secs, 3)
                row["scc_one_step"] = ops
            if len(backends) == 2:
                row["image_speedup"] = round(row["image_us_python"] / row["image_us_cython"], 2)
                row["scc_speedup"] = round(row["scc_ms_python"] / row["scc_ms_cython"], 2)
            print(json.dumps(row))
    finally:
        kernels.set_backend(original)


if __name__ == "__main__":
    main()
