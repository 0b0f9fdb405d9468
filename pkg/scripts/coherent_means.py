"""Mean position of coherent states under the dense quantum baker's map.

Exploratory only: there is no closed form to compare against.
"""

import argparse

from qbaker import oracle


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-qubits", type=int, default=4)
    ap.add_argument("--x", type=int, default=0)
    ap.add_argument("--v", type=int, default=0)
    ap.add_argument("--steps", type=int, default=16)
    args = ap.parse_args(argv)

    print("n,mean_q")
    for n in range(args.steps + 1):
        print(f"{n},{oracle.oracle_coherent_mean(args.x, args.v, n, args.n_qubits):.12f}")


if __name__ == "__main__":
    main()
