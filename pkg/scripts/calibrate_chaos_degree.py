"""Chaos degree of long extended-mode classical orbits.

For the doubling map the one-step conditional entropy is log 2, i.e. one
bit, once the window is long enough to populate every transition.
"""

import argparse

from qbaker import chaos
from qbaker.classical import ClassicalOrbitMode, classical_q_orbit
from qbaker.experiments import initial_string


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-qubits", type=int, default=100)
    ap.add_argument("--windows", default="1000,10000,100000")
    ap.add_argument("--bins", default="10,100")
    ap.add_argument("--seeds", type=int, default=3)
    args = ap.parse_args(argv)

    windows = [int(t) for t in args.windows.split(",")]
    print("seed,W,K,D_bits")
    for seed in range(args.seeds):
        xi = initial_string(seed, args.n_qubits)
        orbit = classical_q_orbit(xi, max(windows), ClassicalOrbitMode.extended(seed))
        for k in (int(t) for t in args.bins.split(",")):
            bins = chaos.orbit_bins(orbit, chaos.Partition(k))
            for w in windows:
                w = min(w, len(bins) - 1)
                print(f"{seed},{w},{k},{chaos.chaos_degree_at(bins, 0, w, k):.6f}")


if __name__ == "__main__":
    main()
