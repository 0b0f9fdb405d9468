"""Acceptance suite. Each criterion prints one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or directly with ``python3 tests/test_acceptance.py``.
"""

import math
import time

import numpy as np
import pytest

from qbaker import chaos, closedform, oracle
from qbaker.classical import ClassicalOrbitMode, classical_q_orbit
from qbaker.dyadic import HALF, initial_value
from qbaker.experiments import (
    ExperimentConfig,
    check_a_power_table,
    check_oracle_equivalence,
    check_power_elements,
    check_single_step_elements,
    check_unitarity,
    check_weyl,
    cmd_chaos,
    initial_string,
)

RESULTS: dict[int, str] = {}


def record(number, title, passed, detail):
    line = f"criterion {number} [{'PASS' if passed else 'FAIL'}] {title}: {detail}"
    RESULTS[number] = line
    print(line)
    return passed


def criterion_1():
    t0 = time.perf_counter()
    res = check_oracle_equivalence(range(2, 9), seed=0, samples=20)
    dt = time.perf_counter() - t0
    ok = res.passed and dt <= 120
    return record(1, "closed form vs dense oracle, N=2..8", ok,
                  f"max_err={res.max_error:.2e} time={dt:.1f}s {res.counterexample or ''}")


def criterion_2():
    parts = [check_single_step_elements(range(1, 9)),
             check_power_elements(range(1, 7)),
             check_a_power_table(40)]
    detail = "; ".join(f"{r.name} err={r.max_error:.1e}" for r in parts)
    return record(2, "matrix-element fidelity", all(r.passed for r in parts), detail)


def criterion_3():
    parts = [check_unitarity(range(1, 9)), check_weyl(range(1, 7))]
    detail = "; ".join(f"{r.name} err={r.max_error:.1e}" for r in parts)
    return record(3, "unitarity and Weyl relation", all(r.passed for r in parts), detail)


def criterion_4():
    t0 = time.perf_counter()
    bad = None
    for n in (100, 300, 500, 700):
        for seed in range(3):
            xi = initial_string(seed, n)
            r = closedform.quantum_orbit(xi, 8 * n + 2)
            if r[0] != initial_value(xi):
                bad = bad or f"r_0 N={n}"
            for m in (1, 3, 5, 7):
                if r[m * n] != HALF:
                    bad = bad or f"r_mN m={m} N={n}"
            for s in range(4 * n + 3):
                if r[s + 4 * n] != r[s]:
                    bad = bad or f"period N={n} n={s}"
                    break
    dt = time.perf_counter() - t0
    return record(4, "exact identities at N=100..700", bad is None and dt <= 10,
                  f"time={dt:.2f}s {bad or ''}")


def criterion_5():
    bad = []
    for n in (10, 100, 500):
        xi = initial_string(0, n)
        steps = 3 * n
        q = closedform.quantum_orbit(xi, steps)
        c = classical_q_orbit(xi, steps, ClassicalOrbitMode.truncated())
        if any(q[k] != c[k] for k in range(n + 1)):
            bad.append(f"orbits differ before N={n}")
        if all(q[k] == c[k] for k in range(n + 1, 2 * n)):
            bad.append(f"no divergence in (N, 2N) for N={n}")
        w = min(chaos.DEFAULT_WINDOW, n // 2)
        part = chaos.Partition(chaos.DEFAULT_BINS)
        dq = dict(chaos.chaos_degree_series(q, w, part))
        dc = dict(chaos.chaos_degree_series(c, w, part))
        inside = range(0, n - w)  # window [s, s + W] within [0, N]
        if any(dq[s] != dc[s] for s in inside):
            bad.append(f"D differs inside [0, N] for N={n}")
        if not any(abs(dq[s] - dc[s]) > 0 for s in dq if s > n):
            bad.append(f"D never differs beyond N for N={n}")
    return record(5, "logarithmic-timescale correspondence", not bad, "; ".join(bad) or "N=10,100,500")


def _final_window_difference(n, n_star=1000, w=100, k=100):
    xi = initial_string(0, n)
    part = chaos.Partition(k)
    qb = chaos.orbit_bins(closedform.quantum_orbit(xi, n_star), part)
    cb = chaos.orbit_bins(classical_q_orbit(xi, n_star, ClassicalOrbitMode.truncated()), part)
    start = n_star - w
    return abs(chaos.chaos_degree_at(qb, start, w, k) - chaos.chaos_degree_at(cb, start, w, k))


def criterion_6():
    d_big, d_small = _final_window_difference(1100), _final_window_difference(200)
    return record(6, "final-window difference vs N", d_big == 0 and d_small > 0,
                  f"|dD|(N=1100)={d_big!r} |dD|(N=200)={d_small:.4f}")


def criterion_7():
    values = []
    for seed in range(3):
        xi = initial_string(seed, 100)
        orbit = classical_q_orbit(xi, 100_000, ClassicalOrbitMode.extended(seed))
        bins = chaos.orbit_bins(orbit, chaos.Partition(100))
        values.append(chaos.chaos_degree_at(bins, 0, 100_000 - 1, 100))
    calibrated = all(0.9 <= v <= 1.1 for v in values)

    fixed = np.full(500, 37)
    cycle = np.tile(np.arange(7), 80)
    deterministic = (chaos.chaos_degree_at(fixed, 0, 400, 100) == 0.0
                     and chaos.chaos_degree_at(cycle, 0, 500, 100) == 0.0)

    rng = np.random.default_rng(7)
    bounded = True
    for _ in range(50):
        k = int(rng.integers(2, 60))
        bins = rng.integers(0, k, size=int(rng.integers(20, 400)))
        d = chaos.chaos_degree_at(bins, 0, len(bins) - 1, k)
        bounded &= -1e-12 <= d <= math.log2(k) + 1e-12
    ok = calibrated and deterministic and bounded
    return record(7, "chaos-degree calibration", ok,
                  f"D_c={[round(v, 4) for v in values]} deterministic_zero={deterministic} bounds={bounded}")


def criterion_8():
    rng = np.random.default_rng(8)
    worst = 0.0
    for _ in range(100):
        k = int(rng.integers(2, 30))
        density = rng.uniform(0.05, 1.0)
        counts = rng.integers(0, 20, size=(k, k)) * (rng.random((k, k)) < density)
        if counts.sum() == 0:
            counts[0, 0] = 1
        w = int(counts.sum())
        joint = chaos.JointDistribution(counts, 0, w)
        marginal = chaos.BinnedDistribution(counts.sum(axis=1), 0, w)
        a = chaos.chaos_degree_channel_form(joint, marginal)
        b = chaos.chaos_degree(joint, marginal)
        worst = max(worst, abs(a - b))
    return record(8, "channel form equals joint form", worst <= 1e-12, f"max_err={worst:.1e}")


def criterion_9(tmp_dir):
    t0 = time.perf_counter()
    orbit = closedform.quantum_orbit(initial_string(0, 700), 1000)
    orbit.floats()
    t_orbit = time.perf_counter() - t0
    t0 = time.perf_counter()
    cmd_chaos(ExperimentConfig(out_dir=str(tmp_dir)))
    t_sweep = time.perf_counter() - t0
    return record(9, "performance", t_orbit < 5 and t_sweep < 60,
                  f"orbit N=700 {t_orbit:.2f}s, chaos sweep {t_sweep:.2f}s")


def test_criterion_1_oracle_equivalence():
    assert criterion_1(), RESULTS[1]


def test_criterion_2_matrix_elements():
    assert criterion_2(), RESULTS[2]


def test_criterion_3_structural_unitarity():
    assert criterion_3(), RESULTS[3]


def test_criterion_4_exact_identities_at_scale():
    assert criterion_4(), RESULTS[4]


def test_criterion_5_quantum_classical_correspondence():
    assert criterion_5(), RESULTS[5]


def test_criterion_6_final_window_trend():
    assert criterion_6(), RESULTS[6]


def test_criterion_7_chaos_degree_calibration():
    assert criterion_7(), RESULTS[7]


def test_criterion_8_chaos_degree_identity():
    assert criterion_8(), RESULTS[8]


def test_criterion_9_performance(tmp_path):
    assert criterion_9(tmp_path), RESULTS[9]


@pytest.fixture(scope="module", autouse=True)
def _report(request):
    yield
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")
    if reporter is not None and RESULTS:
        reporter.write_line("")
        for k in sorted(RESULTS):
            reporter.write_line(RESULTS[k])


if __name__ == "__main__":
    import sys
    import tempfile

    with tempfile.TemporaryDirectory() as tmp:
        outcomes = [criterion_1(), criterion_2(), criterion_3(), criterion_4(), criterion_5(),
                    criterion_6(), criterion_7(), criterion_8(), criterion_9(tmp)]
    sys.exit(0 if all(outcomes) else 1)
