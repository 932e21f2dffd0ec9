"""Time the torsion G-set kernels with the numba and the numpy backends.

Usage: python3 benchmarks/bench_torsion.py [--level K] [--repeat R]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from torusq import _kernels, fixtures
from torusq.torus import classify, enumerate_group, normalize_translations


def run_once(table, cl, level: int, use_numba: bool) -> float:
    H = np.array([g.linear.tolist() for g in table.elements])
    T = np.array([[int(x * level) for x in g.translation] for g in table.elements])
    start = time.perf_counter()
    images = _kernels.torsion_images(H, T, level, use_numba=use_numba)
    labels = _kernels.orbit_labels(images, sorted(cl.Fprime), use_numba=use_numba)
    outside = [i for i in range(len(table)) if i not in cl.Fprime]
    _kernels.has_fixed_class(images, labels, outside, use_numba=use_numba)
    return time.perf_counter() - start


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--level", type=int, default=6)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = [False] + ([True] if _kernels.HAVE_NUMBA else [])
    print(f"{'fixture':<16}{'points':>10}  " + "  ".join(f"{'numba' if b else 'numpy':>9}" for b in backends))
    for name in ("hyperelliptic", "kummer", "eisenstein", "gauss"):
        table, _ = normalize_translations(enumerate_group(fixtures.load(name)))
        cl = classify(table)
        level = args.level
        if level ** table.rank > _kernels.MAX_POINTS:
            continue
        if _kernels.HAVE_NUMBA:
            run_once(table, cl, 2, True)  # compile outside the timing
        times = [min(run_once(table, cl, level, b) for _ in range(args.repeat)) for b in backends]
        print(f"{name:<16}{level ** table.rank:>10}  " + "  ".join(f"{t:>8.4f}s" for t in times))


if __name__ == "__main__":
    main()
