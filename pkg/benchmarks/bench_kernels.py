"""Compare the compiled and pure-Python kernels on a large generated tree.

    python3 benchmarks/bench_kernels.py [--nodes 500] [--features 30] [--repeat 5]
"""

import argparse
import time

from dtxp import kernels
from dtxp.encode import encode_path, explain_horn
from dtxp.horn import HornFormula
from dtxp.oracle import gen_tree
from dtxp.traversal import explain_traversal


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--nodes", type=int, default=500)
    ap.add_argument("--features", type=int, default=30)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    tree = gen_tree(args.features, 4, depth=12, seed=args.seed, split_prob=0.95, max_nodes=args.nodes)
    paths = tree.paths
    deepest = max(paths, key=len)
    problem, _ = encode_path(tree, deepest)
    formula = HornFormula(problem.hard, problem.nvars)
    print(f"tree: {len(tree.nodes)} nodes, {tree.m} features, {len(paths)} paths, depth {tree.depth}")
    print(f"{'backend':>8}  {'traversal/path':>15}  {'all paths':>10}  {'horn/path':>10}  {'propagate':>10}")
    results = {}
    for name in sorted(kernels.BACKENDS):
        prev = kernels.use(name)
        try:
            one = best_of(lambda: explain_traversal(tree, deepest), args.repeat)
            every = best_of(lambda: [explain_traversal(tree, p) for p in paths], max(1, args.repeat // 2))
            horn = best_of(lambda: explain_horn(tree, deepest), args.repeat)
            prop = best_of(lambda: formula.solve(problem.soft), args.repeat)
        finally:
            kernels.use(prev)
        results[name] = (one, every, horn, prop)
        print(f"{name:>8}  {one * 1e3:>12.3f} ms  {every * 1e3:>7.1f} ms  {horn * 1e3:>7.2f} ms  {prop * 1e6:>7.1f} us")
    if len(results) == 2:
        py, cy = results["python"], results["cython"]
        print("speedup   " + "  ".join(f"{a / b:>6.1f}x" for a, b in zip(py, cy)))


if __name__ == "__main__":
    main()
