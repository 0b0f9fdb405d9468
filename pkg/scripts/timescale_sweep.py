"""|D_q - D_c| in the final window before n* as N grows.

The quantum and truncated classical orbits coincide up to n = N, so the
difference should drop to exactly zero once N exceeds the observation time.

    python3 scripts/timescale_sweep.py --n-star 1000 --n-list 50,100,200,400,800,1100
"""

import argparse
import csv
import sys

from qbaker import chaos, closedform
from qbaker.classical import ClassicalOrbitMode, classical_q_orbit
from qbaker.experiments import first_divergence, initial_string


def final_window(n_qubits, n_star, window, bins, seed):
    xi = initial_string(seed, n_qubits)
    part = chaos.Partition(bins)
    quantum = closedform.quantum_orbit(xi, n_star)
    classical = classical_q_orbit(xi, n_star, ClassicalOrbitMode.truncated())
    start = n_star - window
    d_q = chaos.chaos_degree_at(chaos.orbit_bins(quantum, part), start, window, bins)
    d_c = chaos.chaos_degree_at(chaos.orbit_bins(classical, part), start, window, bins)
    return d_q, d_c, first_divergence(quantum, classical)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-star", type=int, default=1000)
    ap.add_argument("--window", type=int, default=100)
    ap.add_argument("--bins", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--n-list", default="50,100,200,300,500,700,900,1000,1100,1500")
    ap.add_argument("--out", help="CSV path (default stdout)")
    args = ap.parse_args(argv)

    rows = []
    for n in (int(t) for t in args.n_list.split(",")):
        d_q, d_c, div = final_window(n, args.n_star, args.window, args.bins, args.seed)
        rows.append((n, d_q, d_c, abs(d_q - d_c), div))

    handle = open(args.out, "w", newline="") if args.out else sys.stdout
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(("N", "D_q", "D_c", "abs_diff", "first_divergence_n"))
    writer.writerows(rows)
    if args.out:
        handle.close()


if __name__ == "__main__":
    main()
