"""Compare the compiled and pure-Python graph-sum kernels.

    python benchmarks/bench_kernels.py [--target V22] [--degree 2] [--repeat 3]
"""

import argparse
import time

from fanoinv import _kernel_py
from fanoinv.fixedloci import InsertionLift, TorusWeights
from fanoinv.graphs import iter_raw
from fanoinv.localize import TARGETS, build_tables

try:
    from fanoinv import _ckernel
except ImportError:
    _ckernel = None


def bench(fn, raws, tables, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(raws, tables)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--target", default="V22")
    ap.add_argument("--degree", type=int, default=2)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    t = TARGETS[args.target]
    w = TorusWeights.from_seed(t.n, 1)
    lift = InsertionLift.for_target(args.target, "sigma1sq")
    tables = build_tables(t, w, args.degree, lift)
    raws = list(iter_raw(t.r, t.n, args.degree, 1))
    print(f"{args.target} d={args.degree}: {len(raws)} graphs")
    py_time, py_out = bench(_kernel_py.sum_graphs, raws, tables, args.repeat)
    print(f"python  {py_time * 1e3:9.1f} ms  {py_time / len(raws) * 1e6:7.2f} us/graph")
    if _ckernel is None:
        print("cython  (extension not built)")
        return
    c_time, c_out = bench(_ckernel.sum_graphs, raws, tables, args.repeat)
    assert c_out == py_out, "kernels disagree"
    print(f"cython  {c_time * 1e3:9.1f} ms  {c_time / len(raws) * 1e6:7.2f} us/graph")
    print(f"speedup {py_time / c_time:.2f}x")


if __name__ == "__main__":
    main()
