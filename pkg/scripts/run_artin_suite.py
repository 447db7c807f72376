"""Braid-relation residuals, oracle agreement and assembly time over a grid of fusion spaces.

    python scripts/run_artin_suite.py --max-anyons 12 --oracle-max 8
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from anyonbraid.basis import enumerate_basis
from anyonbraid.braid import all_generators, sigma
from anyonbraid.model import fibonacci_model, ising_model
from anyonbraid.verify import check_artin, oracle_sigma


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-anyons", type=int, default=12)
    ap.add_argument("--oracle-max", type=int, default=8, help="largest f*N compared against the oracle")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    fib, ising = fibonacci_model(), ising_model()
    cases = [(fib, 1), (ising, ising.charge("sigma")), (ising, ising.charge("psi"))]
    print(f"{'model':<10}{'anyon':<7}{'f':>3}{'N':>3}{'dim':>6}{'assembly s':>12}{'artin':>10}{'oracle':>10}")
    for model, a in cases:
        for N in range(2, args.max_anyons + 1):
            for f in range(1, args.max_anyons // N + 1):
                space = enumerate_basis(model, a, f, N)
                t0 = time.perf_counter()
                all_generators(space, args.threads)
                build = time.perf_counter() - t0
                artin = check_artin(space).max_residual
                oracle = "-"
                if f * N <= args.oracle_max:
                    dev = max(
                        np.abs(sigma(space, n).dense() - oracle_sigma(space, n).dense()).max()
                        for n in range(1, space.n_generators + 1)
                    )
                    oracle = f"{dev:.1e}"
                print(f"{model.name:<10}{model.label(a):<7}{f:>3}{N:>3}{space.dim:>6}{build:>12.4f}{artin:>10.1e}{oracle:>10}")


if __name__ == "__main__":
    main()
