"""Per-gate timings of the statevector kernels at one register size.

    python scripts/bench_kernels.py --q 22
"""
import argparse
import time

import numpy as np

from qhamming.boolfn import random_function
from qhamming.simulator import (
    apply_cnot,
    apply_hadamard,
    apply_mct,
    apply_oracle,
    concurrence_vs_rest,
    from_amplitudes,
)


def timed(label, fn, reps):
    start = time.perf_counter()
    for _ in range(reps):
        fn()
    per = (time.perf_counter() - start) / reps
    print(f"{label:<28}{per * 1e3:10.3f} ms")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--q", type=int, default=20)
    parser.add_argument("--reps", type=int, default=5)
    args = parser.parse_args()
    q = args.q
    rng = np.random.default_rng(0)
    v = rng.normal(size=1 << q) + 1j * rng.normal(size=1 << q)
    s = from_amplitudes(v / np.linalg.norm(v))
    n = q - 3
    f = random_function(n, 1)
    print(f"q={q} ({1 << q} amplitudes)")
    timed("hadamard (middle qubit)", lambda: apply_hadamard(s, q // 2), args.reps)
    timed("cnot", lambda: apply_cnot(s, 0, q - 1), args.reps)
    timed("mct (3 controls)", lambda: apply_mct(s, [q - 4, q - 3, q - 2], q - 1), args.reps)
    timed(f"oracle n={n}, contiguous", lambda: apply_oracle(s, f, range(n), q - 1), args.reps)
    timed(f"oracle n={n}, scattered", lambda: apply_oracle(s, f, list(range(1, n + 1)), 0), args.reps)
    timed("concurrence_vs_rest", lambda: concurrence_vs_rest(s, q - 1), args.reps)


if __name__ == "__main__":
    main()
