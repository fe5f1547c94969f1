"""Time the numba kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--q 9] [--batch 20000] [--n 4] [--repeat 3]

Each kernel is warmed up once (so JIT compilation is excluded), then timed as the
best of ``--repeat`` runs.  Outputs of the two backends are compared as well.
"""

from __future__ import annotations

import argparse
import time
from itertools import combinations

import numpy as np

from charsum import kernels
from charsum.ffield import field_for
from charsum.partitions import Partition
from charsum.symfunc import hall


def best_of(fn, repeat: int) -> float:
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def submodule_counts(lam: Partition, q: int, force: str):
    """Uncached submodule type counts for one backend."""
    n = lam.size
    tables = field_for(q).tables
    T = hall._module_shift(lam)
    tpow = [np.eye(n, dtype=np.int64)]
    for _ in range(lam[0]):
        tpow.append((tpow[-1] @ T) % 2)
    tpow = np.array(tpow)
    cands, code_id = hall._type_table(lam)
    counts = np.zeros((len(cands), len(cands)), dtype=np.int64)
    for dim in range(1, n + 1):
        for piv in combinations(range(n), dim):
            pset = set(piv)
            free = [(i, c) for i, pc in enumerate(piv) for c in range(pc + 1, n) if c not in pset]
            kernels.subspace_type_counts(piv, [r for r, _ in free], [c for _, c in free], q,
                                         tpow, tables, code_id, counts, force=force)
    return counts


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, default=9)
    ap.add_argument("--batch", type=int, default=20000)
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--lam", default="2,2,1", help="module type for submodule counting")
    ap.add_argument("--sub-q", type=int, default=3)
    args = ap.parse_args()

    if not kernels.numba_available():
        print("numba is not installed; only the numpy fallback can run")
    backends = ["numba", "numpy"] if kernels.numba_available() else ["numpy"]

    tables = field_for(args.q).tables
    rng = np.random.default_rng(0)
    A = rng.integers(0, args.q, size=(args.batch, args.n, args.n), dtype=np.int64)
    B = rng.integers(0, args.q, size=(args.batch, args.n, args.n), dtype=np.int64)
    lam = Partition(int(x) for x in args.lam.split(","))

    cases = {
        "matmul": lambda f: kernels.matmul_batch(A, B, tables, force=f),
        "rank": lambda f: kernels.rank_batch(A, tables, force=f),
        "det": lambda f: kernels.det_batch(A, tables, force=f),
        f"submodules {list(lam)} q={args.sub_q}": lambda f: submodule_counts(lam, args.sub_q, f),
    }
    print(f"q={args.q} batch={args.batch} n={args.n} repeat={args.repeat}")
    print(f"{'kernel':<28}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}  agree")
    for name, fn in cases.items():
        times = {b: best_of(lambda: fn(b), args.repeat) for b in backends}
        outs = [fn(b) for b in backends]
        agree = all(np.array_equal(outs[0], o) for o in outs[1:])
        speed = f"{times['numpy'] / times['numba']:9.1f}x" if len(backends) == 2 else f"{'-':>10}"
        print(f"{name:<28}" + "".join(f"{times[b]:11.4f}s" for b in backends) + f"{speed}  {agree}")


if __name__ == "__main__":
    main()
