#!/usr/bin/env python3
"""Compare the numba kernels with the pure-numpy fallback.

Both backends must agree exactly; timings are best of ``--repeat`` runs,
after one warm-up call so numba compilation is excluded.

    python3 benchmarks/bench_kernels.py --depth 3 --width 2
"""

import argparse
import time

import numpy as np

from ccsim._accel import NUMBA_AVAILABLE
from ccsim.kernels import relation_matrix
from ccsim.table import TermTable
from ccsim.terms import Alphabet

CASES = [
    ("cc_sim", Alphabet.of(r="a", l="b")),
    ("conf_sim", None),
    ("bisim", None),
    ("ready_sim", None),
]


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--depth", type=int, default=3)
    ap.add_argument("--width", type=int, default=2)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    table = TermTable(["a", "b"], args.depth, args.width)
    print(f"terms: {table.n}  pairs: {table.n * table.n}  numba available: {NUMBA_AVAILABLE}")
    print(f"{'relation':<12}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}")
    for kind, al in CASES:
        t_np, m_np = best_of(lambda: relation_matrix(table, kind, al, "numpy"), args.repeat)
        if NUMBA_AVAILABLE:
            relation_matrix(table, kind, al, "numba")  # compile
            t_nb, m_nb = best_of(lambda: relation_matrix(table, kind, al, "numba"), args.repeat)
            if not np.array_equal(m_np, m_nb):
                raise SystemExit(f"backends disagree on {kind}")
            print(f"{kind:<12}{t_np:>12.3f}{t_nb:>12.3f}{t_np / t_nb:>9.1f}x")
        else:
            print(f"{kind:<12}{t_np:>12.3f}{'-':>12}{'-':>10}")


if __name__ == "__main__":
    main()
