"""Compare the simulated distance with brute force over every kappa-tuple at small n.

    python scripts/exhaustive_check.py --n 2 --kappa 3
"""
import argparse
import itertools
import time
from collections import Counter

from qhamming.boolfn import all_functions, classical_hamming_textbook, classical_joint_ones
from qhamming.circuit import run_proposed_algorithm


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--n", type=int, default=2)
    parser.add_argument("--kappa", type=int, default=2)
    args = parser.parse_args()

    fs = list(all_functions(args.n))
    N = 1 << args.n
    cases = Counter()
    mismatches = 0
    differs_from_textbook = 0
    start = time.perf_counter()
    for funcs in itertools.product(fs, repeat=args.kappa):
        r = run_proposed_algorithm(list(funcs), compare_classical=False)
        cases[r.case.value] += 1
        mismatches += r.H != N - classical_joint_ones(funcs)
        differs_from_textbook += r.H != classical_hamming_textbook(funcs)
    total = sum(cases.values())
    print(f"n={args.n} kappa={args.kappa}: {total} tuples in {time.perf_counter() - start:.2f}s")
    print(f"  cases: {dict(cases)}")
    print(f"  H != N - M_c (brute force): {mismatches}")
    print(f"  H != disagreement count:    {differs_from_textbook}")


if __name__ == "__main__":
    main()
