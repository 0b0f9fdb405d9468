"""Experiment pipeline: orbit export, chaos-degree sweeps and the oracle suite."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import chaos, closedform, oracle
from .classical import ClassicalOrbitMode, classical_q_orbit
from .dyadic import BitString, DyadicRational, RandomBitSource, initial_value, random_bitstring
from .orbit import OrbitSeries, orbit_to_csv, orbit_to_json, write_comment_header

MAX_VERIFY_QUBITS = oracle.MAX_ORACLE_QUBITS
VERIFY_SAMPLES_PER_N = 20

CHAOS_COLUMNS = ("n", "D", "W", "K", "base", "orbit_provenance")
DIFF_COLUMNS = ("N", "n_star", "window_start", "D_q", "D_c", "abs_diff")


class ConfigError(ValueError):
    """Invalid experiment configuration (CLI exit code 2)."""


@dataclass
class ExperimentConfig:
    n_qubits: int = 500
    seed: int = 0
    steps: int = 1000
    window: int = chaos.DEFAULT_WINDOW
    bins: int = chaos.DEFAULT_BINS
    log_base: float = chaos.DEFAULT_LOG_BASE
    classical_mode: str = "truncated"
    n_sweep: list[int] = field(default_factory=lambda: [100, 300, 500, 700])
    out_dir: str = "runs"
    format: str = "csv"
    gnuplot: bool = False

    def validate(self, needs_window: bool = True) -> "ExperimentConfig":
        """Raise :class:`ConfigError` on bad values.

        Orbit export has no window, so ``needs_window=False`` only asks steps >= 0.
        """
        if self.n_qubits < 1:
            raise ConfigError("n_qubits must be >= 1")
        if self.window < 1:
            raise ConfigError("window must be >= 1")
        if self.steps < 0:
            raise ConfigError("steps must be >= 0")
        if needs_window and self.steps < self.window:
            raise ConfigError(f"steps ({self.steps}) must be >= window ({self.window})")
        if self.bins < 2:
            raise ConfigError("bins must be >= 2")
        if not (self.log_base > 0 and self.log_base != 1):
            raise ConfigError(f"invalid log base {self.log_base}")
        if self.classical_mode not in ("truncated", "extended"):
            raise ConfigError(f"classical_mode must be truncated|extended, got {self.classical_mode!r}")
        if not self.n_sweep or any(n < 1 for n in self.n_sweep):
            raise ConfigError("n_sweep must be a nonempty list of positive qubit counts")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be csv|json, got {self.format!r}")
        return self

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def echo(self) -> dict:
        out = asdict(self)
        out["n_sweep"] = ",".join(map(str, self.n_sweep))
        return out

    def orbit_mode(self) -> ClassicalOrbitMode:
        if self.classical_mode == "extended":
            return ClassicalOrbitMode.extended(self.seed)
        return ClassicalOrbitMode.truncated()


@dataclass
class RunReport:
    command: str
    config: dict
    outputs: list[str] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    wall_time_s: float = 0.0

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)


def initial_string(seed: int, n: int) -> BitString:
    """The seeded random string xi for an N-qubit run."""
    return random_bitstring(n, RandomBitSource(seed, stream=(n, 0)))


def first_divergence(a: Sequence[DyadicRational], b: Sequence[DyadicRational]) -> int | None:
    for n in range(min(len(a), len(b))):
        if a[n] != b[n]:
            return n
    return None


def _write_orbit(orbit: OrbitSeries, path: Path, cfg: ExperimentConfig) -> Path:
    if cfg.format == "json":
        path = path.with_suffix(".json")
        payload = {"config": cfg.echo(), **orbit_to_json(orbit)}
        path.write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")
    else:
        with path.open("w", newline="") as fh:
            orbit_to_csv(orbit, fh, cfg.echo())
    return path


def _write_table(path: Path, columns: Sequence[str], rows: list[tuple],
                 cfg: ExperimentConfig, meta: dict | None = None) -> Path:
    if cfg.format == "json":
        path = path.with_suffix(".json")
        payload = {"config": cfg.echo(), **(meta or {}),
                   "rows": [dict(zip(columns, r)) for r in rows]}
        path.write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")
        return path
    with path.open("w", newline="") as fh:
        write_comment_header(fh, {**cfg.echo(), **(meta or {})})
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")
    return path


def _fmt(v) -> str:
    return repr(v) if isinstance(v, float) else str(v)


def _finish(report: RunReport, out_dir: Path, t0: float) -> RunReport:
    report.wall_time_s = time.perf_counter() - t0
    path = out_dir / f"{report.command}_report.json"
    report.outputs.append(str(path))
    path.write_text(report.to_json() + "\n")
    return report


def cmd_orbits(cfg: ExperimentConfig) -> RunReport:
    """Quantum and classical orbit files for the seeded initial string."""
    cfg.validate(needs_window=False)
    t0 = time.perf_counter()
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    xi = initial_string(cfg.seed, cfg.n_qubits)
    quantum = closedform.quantum_orbit(xi, cfg.steps)
    classical = classical_q_orbit(xi, cfg.steps, cfg.orbit_mode())
    report = RunReport("orbits", cfg.echo())
    n = cfg.n_qubits
    report.outputs.append(str(_write_orbit(quantum, out / f"quantum_orbit_N{n}.csv", cfg)))
    report.outputs.append(str(_write_orbit(
        classical, out / f"classical_{cfg.classical_mode}_orbit_N{n}.csv", cfg)))
    report.summary = {
        "N": n,
        "xi": str(xi),
        "rows": len(quantum),
        "first_divergence_n": first_divergence(quantum.values, classical.values),
    }
    if cfg.gnuplot:
        report.outputs.append(str(_gnuplot_orbits(out, report.outputs[:2])))
    return _finish(report, out, t0)


@dataclass
class ChaosRun:
    n_qubits: int
    quantum: list[tuple[int, float]]
    classical: list[tuple[int, float]]

    def differences(self) -> list[float]:
        return [abs(q - c) for (_, q), (_, c) in zip(self.quantum, self.classical)]


def chaos_run(n: int, cfg: ExperimentConfig) -> ChaosRun:
    xi = initial_string(cfg.seed, n)
    part = chaos.Partition(cfg.bins)
    q_bins = chaos.orbit_bins(closedform.quantum_orbit(xi, cfg.steps), part)
    c_bins = chaos.orbit_bins(classical_q_orbit(xi, cfg.steps, cfg.orbit_mode()), part)
    return ChaosRun(
        n,
        chaos.chaos_degree_series(q_bins, cfg.window, part, cfg.log_base),
        chaos.chaos_degree_series(c_bins, cfg.window, part, cfg.log_base),
    )


def cmd_chaos(cfg: ExperimentConfig) -> RunReport:
    """D_q(n), D_c(n) per N in the sweep, plus |D_q - D_c| at the final window vs N."""
    cfg.validate()
    t0 = time.perf_counter()
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    report = RunReport("chaos", cfg.echo())
    diff_rows = []
    per_n = {}
    classical_tag = f"classical-{cfg.classical_mode}"
    for n in cfg.n_sweep:
        run = chaos_run(n, cfg)
        rows = [(i, d, cfg.window, cfg.bins, cfg.log_base, "quantum-closedform")
                for i, d in run.quantum]
        rows += [(i, d, cfg.window, cfg.bins, cfg.log_base, classical_tag)
                 for i, d in run.classical]
        path = _write_table(out / f"chaos_N{n}.csv", CHAOS_COLUMNS, rows, cfg, {"N": n})
        report.outputs.append(str(path))
        diffs = run.differences()
        start, d_q = run.quantum[-1]
        d_c = run.classical[-1][1]
        diff_rows.append((n, cfg.steps, start, d_q, d_c, abs(d_q - d_c)))
        inside = [d for (i, _), d in zip(run.quantum, diffs) if i + cfg.window <= n]
        per_n[str(n)] = {
            "max_abs_diff_inside_N": max(inside) if inside else None,
            "max_abs_diff": max(diffs),
            "first_window_differing": next(
                (i for (i, _), d in zip(run.quantum, diffs) if d != 0), None),
            "final_D_q": d_q,
            "final_D_c": d_c,
        }
    report.outputs.append(str(_write_table(out / "chaos_difference.csv", DIFF_COLUMNS,
                                           diff_rows, cfg)))
    report.summary = {"per_N": per_n}
    if cfg.gnuplot:
        report.outputs.append(str(_gnuplot_chaos(out, cfg)))
    return _finish(report, out, t0)


def _gnuplot_orbits(out: Path, paths: list[str]) -> Path:
    script = out / "orbits.gp"
    lines = ["set datafile separator ','", "set xlabel 'n'", "set ylabel 'q'",
             "plot " + ", ".join(f"'{Path(p).name}' every ::1 using 1:3 with points "
                                 f"pt 7 ps 0.3 title '{Path(p).stem}'" for p in paths)]
    script.write_text("\n".join(lines) + "\n")
    return script


def _gnuplot_chaos(out: Path, cfg: ExperimentConfig) -> Path:
    script = out / "chaos.gp"
    lines = ["set datafile separator ','", "set xlabel 'n'", "set ylabel 'D'"]
    plots = []
    for n in cfg.n_sweep:
        for tag in ("quantum-closedform", f"classical-{cfg.classical_mode}"):
            plots.append(f"'chaos_N{n}.csv' every ::1 using 1:(strcol(6) eq '{tag}' ? $2 : 1/0) "
                         f"with lines title 'N={n} {tag}'")
    lines.append("plot " + ", ".join(plots))
    script.write_text("\n".join(lines) + "\n")
    return script


# ---------------------------------------------------------------- verification


@dataclass
class CheckResult:
    name: str
    passed: bool
    max_error: float = 0.0
    counterexample: str | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        detail = f" max_err={self.max_error:.3e}" if self.max_error else ""
        if self.counterexample:
            detail += f" counterexample: {self.counterexample}"
        return f"[{status}] {self.name}{detail}"


MeanPositionFn = Callable[[BitString, int], DyadicRational]


def sample_strings(n: int, count: int, seed: int) -> list[BitString]:
    """All 2^N strings when there are at most ``count``, otherwise a seeded sample."""
    if (1 << n) <= count:
        return [BitString.from_int(j, n) for j in range(1 << n)]
    src = RandomBitSource(seed, stream=(n, 2))
    return [random_bitstring(n, src) for _ in range(count)]


def check_oracle_equivalence(n_values: Sequence[int], seed: int = 0,
                             samples: int = VERIFY_SAMPLES_PER_N,
                             mean_position: MeanPositionFn = closedform.mean_position,
                             tol: float = oracle.CROSS_MODULE_TOL) -> CheckResult:
    worst, bad = 0.0, None
    for n in n_values:
        steps = 4 * n + 2
        table = oracle.oracle_mean_positions(n, steps)
        for xi in sample_strings(n, samples, seed):
            for s in range(steps + 1):
                err = abs(float(mean_position(xi, s)) - table[s, xi.value])
                if err > worst:
                    worst = err
                if err > tol and bad is None:
                    bad = f"N={n} xi={xi} n={s} closed={float(mean_position(xi, s))!r} oracle={table[s, xi.value]!r}"
    return CheckResult(f"closed form vs dense oracle, N in {list(n_values)}",
                       bad is None, worst, bad)


def check_single_step_elements(n_values: Sequence[int]) -> CheckResult:
    worst, bad = 0.0, None
    for n in n_values:
        err = oracle.max_abs(oracle.baker_unitary(n) - closedform.t_power_matrix(n, 1))
        worst = max(worst, err)
        if err > oracle.STRUCTURAL_TOL and bad is None:
            bad = f"N={n}"
    return CheckResult("dense T vs single-step element formula", bad is None, worst, bad)


def check_power_elements(n_values: Sequence[int]) -> CheckResult:
    worst, bad = 0.0, None
    for n in n_values:
        t = oracle.baker_unitary(n)
        power = np.eye(1 << n, dtype=complex)
        for s in range(3 * n + 1):
            err = oracle.max_abs(power - closedform.t_power_matrix(n, s))
            worst = max(worst, err)
            if err > oracle.CROSS_MODULE_TOL and bad is None:
                bad = f"N={n} n={s}"
            power = power @ t
    return CheckResult("dense T^n vs n-step element formula", bad is None, worst, bad)


def check_a_power_table(max_power: int = 40) -> CheckResult:
    a = np.array([[1, 1j], [1j, 1]])
    power = np.eye(2, dtype=complex)
    bad = None
    for s in range(max_power + 1):
        sq = np.abs(power) ** 2
        if (round(sq[0, 0]) != closedform.a_power_abs_sq(s, True)
                or round(sq[0, 1]) != closedform.a_power_abs_sq(s, False)):
            bad = bad or f"n={s}"
        power = power @ a
    return CheckResult(f"|A^n|^2 integer table, n <= {max_power}", bad is None, 0.0, bad)


def check_unitarity(n_values: Sequence[int]) -> CheckResult:
    worst, bad = 0.0, None
    for n in n_values:
        for label, u in (("T", oracle.baker_unitary(n)), ("F", oracle.qft(n))):
            err = oracle.unitarity_residual(u)
            worst = max(worst, err)
            if err > oracle.STRUCTURAL_TOL and bad is None:
                bad = f"{label} at N={n}"
    return CheckResult("unitarity of T and F_N", bad is None, worst, bad)


def check_weyl(n_values: Sequence[int]) -> CheckResult:
    worst, bad = 0.0, None
    for n in n_values:
        u, v = oracle.weyl_pair(n)
        err = oracle.max_abs(u @ v - oracle.weyl_phase(n) * v @ u)
        worst = max(worst, err)
        if err > oracle.STRUCTURAL_TOL and bad is None:
            bad = f"N={n}"
    return CheckResult("Weyl commutation U V = eps V U", bad is None, worst, bad)


def check_exact_identities(n_values: Sequence[int], seed: int = 0,
                           mean_position: MeanPositionFn = closedform.mean_position,
                           samples: int = 5) -> CheckResult:
    half = DyadicRational(1, 1)
    for n in n_values:
        for xi in sample_strings(n, samples, seed):
            r0 = mean_position(xi, 0)
            if r0 != initial_value(xi):
                return CheckResult("exact identities", False, 0.0, f"r_0 N={n} xi={xi}")
            for m in (1, 3, 5):
                if mean_position(xi, m * n) != half:
                    return CheckResult("exact identities", False, 0.0, f"r_mN m={m} N={n} xi={xi}")
            for s in range(0, 4 * n + 3):
                if mean_position(xi, s + 4 * n) != mean_position(xi, s):
                    return CheckResult("exact identities", False, 0.0,
                                       f"period 4N N={n} xi={xi} n={s}")
    return CheckResult("exact identities (r_0, r_mN odd m, period 4N)", True)


def check_summation_route(n_values: Sequence[int], seed: int = 0,
                          mean_position: MeanPositionFn = closedform.mean_position,
                          samples: int = 6) -> CheckResult:
    for n in n_values:
        for xi in sample_strings(n, samples, seed):
            for s in range(4 * n + 3):
                if mean_position(xi, s).to_fraction() != closedform.mean_position_from_sum(xi, s):
                    return CheckResult("case formulas vs exact 2^N summation", False, 0.0,
                                       f"N={n} xi={xi} n={s}")
    return CheckResult("case formulas vs exact 2^N summation", True)


def run_verification(max_n: int, seed: int = 0,
                     mean_position: MeanPositionFn = closedform.mean_position) -> list[CheckResult]:
    if not 2 <= max_n <= MAX_VERIFY_QUBITS:
        raise ConfigError(f"max_N must be in [2, {MAX_VERIFY_QUBITS}], got {max_n}")
    ns = range(2, max_n + 1)
    return [
        check_oracle_equivalence(ns, seed, mean_position=mean_position),
        check_single_step_elements(range(1, min(max_n, 8) + 1)),
        check_power_elements(range(1, min(max_n, 6) + 1)),
        check_a_power_table(),
        check_unitarity(range(1, min(max_n, 8) + 1)),
        check_weyl(range(1, min(max_n, 6) + 1)),
        check_exact_identities(ns, seed, mean_position=mean_position),
        check_summation_route(range(1, min(max_n, 6) + 1), seed, mean_position=mean_position),
    ]


def format_results(results: Sequence[CheckResult]) -> str:
    return "\n".join(r.line() for r in results)
