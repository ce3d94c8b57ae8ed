"""Spread of the shot estimate of C against shot count for one pair of functions.

    python scripts/sampled_convergence.py --f "x0&x1" --g "x0|x1" --n 2
"""
import argparse

import numpy as np

from qhamming.analysis import concurrence_from_count
from qhamming.boolfn import classical_joint_ones, parse_expression
from qhamming.circuit import run_proposed_algorithm
from qhamming.errors import InconsistencyError


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--f", default="x0&x1")
    parser.add_argument("--g", default="x0|x1")
    parser.add_argument("--n", type=int, default=2)
    parser.add_argument("--seeds", type=int, default=50)
    args = parser.parse_args()

    funcs = [parse_expression(args.f, args.n), parse_expression(args.g, args.n)]
    N = 1 << args.n
    M_c = classical_joint_ones(funcs)
    exact = concurrence_from_count(M_c, N)
    print(f"exact C = {exact:.6f}, M_c = {M_c}, H = {N - M_c}")
    print("shots,mean_C,std_C,H_correct,inconsistent")
    for shots in (10**2, 10**3, 10**4, 10**5):
        Cs, correct, inconsistent = [], 0, 0
        for seed in range(args.seeds):
            try:
                r = run_proposed_algorithm(funcs, mode="sampled", shots=shots, seed=seed,
                                           compare_classical=False)
            except InconsistencyError:
                inconsistent += 1
                continue
            Cs.append(r.C)
            correct += r.H == N - M_c
        print(f"{shots},{np.mean(Cs):.6f},{np.std(Cs):.6f},{correct}/{args.seeds},{inconsistent}")


if __name__ == "__main__":
    main()
