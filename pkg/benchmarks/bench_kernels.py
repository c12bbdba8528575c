"""Compare the compiled generator kernel against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--group SL3] [--repeat 5]

Two measurements per backend: the raw kernel on random blocks, and
end-to-end Hecke products / Bernstein elements built through a fresh algebra.
"""
from __future__ import annotations

import argparse
import random
import statistics
import time

import numpy as np

from heckeforge import kernels
from heckeforge.bernstein import theta
from heckeforge.hecke import HeckeAlgebra
from heckeforge.rootdata import preset


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times)


def raw_kernel(backend, rows=4000, width=12, seed=0):
    rng = np.random.default_rng(seed)
    ids = np.unique(rng.integers(0, 4 * rows, size=rows)).astype(np.int64)
    n = len(ids)
    coef = rng.integers(-50, 50, size=(n, width)).astype(np.int64)
    tgt = rng.permutation(4 * rows)[:n].astype(np.int64)
    up = rng.integers(0, 2, size=n).astype(np.uint8)
    scratch = np.full(4 * rows, -1, dtype=np.int64)

    def go():
        for mode in (kernels.MODE_T, kernels.MODE_NABLA):
            kernels.apply_generator(ids, coef, tgt, up, mode, scratch, backend)

    return go


def hecke_products(name, backend, pairs=60, seed=1):
    rd = preset(name)

    def go():
        H = HeckeAlgebra(rd, backend=backend)
        rng = random.Random(seed)
        els = H.G.elements_up_to_length(6)
        for _ in range(pairs):
            a = H.T(rng.choice(els)) + H.T(rng.choice(els))
            b = H.T(rng.choice(els)) + H.T(rng.choice(els))
            (a * b) * a
        for lam in [(3,) + (-2,) * (rd.rank - 1), (-2,) + (3,) * (rd.rank - 1)]:
            theta(H, lam)

    return go


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--group", default="SL3")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    backends = ["python"] + (["compiled"] if kernels.BACKEND == "compiled" else [])
    if len(backends) == 1:
        print("compiled extension not available; timing the fallback only")
    rows = []
    for label, make in [
        ("raw kernel", raw_kernel),
        (f"hecke products ({args.group})", lambda b: hecke_products(args.group, b)),
    ]:
        res = {b: _best(make(b), args.repeat) for b in backends}
        rows.append((label, res))

    print(f"{'benchmark':<28}{'backend':<10}{'best [ms]':>12}{'median [ms]':>14}")
    for label, res in rows:
        for b, (best, med) in res.items():
            print(f"{label:<28}{b:<10}{best * 1e3:>12.2f}{med * 1e3:>14.2f}")
        if "compiled" in res:
            print(f"{'':<28}{'speedup':<10}{res['python'][0] / res['compiled'][0]:>12.2f}x")


if __name__ == "__main__":
    main()
