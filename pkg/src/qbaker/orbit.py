"""Time series of exact orbit values and their CSV/JSON serialization."""

from __future__ import annotations

import csv
import io
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Mapping

from .dyadic import DyadicRational

QUANTUM = "quantum-closedform"
CLASSICAL_TRUNCATED = "classical-truncated"
CLASSICAL_EXTENDED = "classical-extended"
ORACLE = "oracle"
PROVENANCES = (QUANTUM, CLASSICAL_TRUNCATED, CLASSICAL_EXTENDED, ORACLE)

ORBIT_COLUMNS = ("n", "value_exact", "value_float", "provenance")


class DigitStreamValues(Sequence):
    """q_n = 0.s_{n+1} s_{n+2} ... s_L for a finite binary digit stream s.

    Values are produced on demand, so an orbit over a 10^5-digit stream
    costs O(L) memory instead of O(L^2).
    """

    def __init__(self, stream_value: int, stream_length: int, count: int):
        self._x = stream_value
        self._length = stream_length
        self._count = count

    def __len__(self) -> int:
        return self._count

    def _at(self, n: int) -> DyadicRational:
        rest = self._length - n
        if rest <= 0:
            return DyadicRational(0)
        return DyadicRational(self._x & ((1 << rest) - 1), rest)

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return [self._at(i) for i in range(*idx.indices(self._count))]
        if idx < 0:
            idx += self._count
        if not 0 <= idx < self._count:
            raise IndexError(idx)
        return self._at(idx)


@dataclass(frozen=True)
class OrbitSeries:
    """Exact values indexed by n = 0, 1, ..., len-1, plus where they came from."""

    values: Sequence[DyadicRational]
    provenance: str
    meta: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n):
        return self.values[n]

    def __iter__(self):
        return iter(self.values)

    def floats(self) -> list[float]:
        return [float(v) for v in self.values]

    def rows(self):
        for n, v in enumerate(self.values):
            yield n, str(v), repr(float(v)), self.provenance


def write_comment_header(handle, meta: Mapping[str, object]) -> None:
    for key in sorted(meta):
        handle.write(f"# {key}={meta[key]}\n")


def orbit_to_csv(orbit: OrbitSeries, handle, meta: Mapping[str, object] | None = None) -> None:
    write_comment_header(handle, {**orbit.meta, **(meta or {})})
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(ORBIT_COLUMNS)
    writer.writerows(orbit.rows())


def orbit_to_csv_string(orbit: OrbitSeries, meta: Mapping[str, object] | None = None) -> str:
    buf = io.StringIO()
    orbit_to_csv(orbit, buf, meta)
    return buf.getvalue()


def orbit_from_csv(handle) -> OrbitSeries:
    """Read back an orbit CSV (comment header lines become ``meta``)."""
    meta: dict[str, object] = {}
    body = []
    for line in handle:
        if line.startswith("#"):
            key, _, val = line[1:].strip().partition("=")
            meta[key] = val
        else:
            body.append(line)
    reader = csv.DictReader(body)
    values, provenance = [], None
    for i, row in enumerate(reader):
        if int(row["n"]) != i:
            raise ValueError(f"orbit CSV rows out of order at n={row['n']}")
        values.append(DyadicRational.parse(row["value_exact"]))
        provenance = row["provenance"]
    if provenance is None:
        raise ValueError("empty orbit CSV")
    return OrbitSeries(values, provenance, meta)


def orbit_to_json(orbit: OrbitSeries) -> dict:
    return {
        "provenance": orbit.provenance,
        "meta": dict(orbit.meta),
        "values": [{"n": n, "exact": s, "float": float(f)}
                   for n, s, f, _ in orbit.rows()],
    }
