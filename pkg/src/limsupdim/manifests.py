"""Run manifests and table output.

A RunManifest records everything needed to reproduce a run bit-for-bit:
seed, space and schedule descriptors, truncation window, operation name and
parameters, and the emitted statistics.  Wall-clock time lives in a separate
metadata field so reproducibility checks can compare the rest byte-wise.
Manifests are serialized as JSON lines; tables as RFC-4180 CSV with floats
printed to 17 significant digits.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

MANIFEST_VERSION = 1


def fmt17(x) -> str:
    """Canonical text form: 17 significant digits for floats, str otherwise."""
    if isinstance(x, bool):
        return str(x)
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def csv_body(header: Iterable[str], rows: Iterable[Iterable]) -> str:
    """Render a table to CSV text (RFC-4180-style quoting, CRLF endings)."""
    buf = io.StringIO()
    writer = csv.writer(buf, quoting=csv.QUOTE_MINIMAL)
    writer.writerow(list(header))
    for row in rows:
        writer.writerow([fmt17(v) for v in row])
    return buf.getvalue()


def write_csv(path: str | Path, header: Iterable[str], rows: Iterable[Iterable]) -> str:
    body = csv_body(header, rows)
    Path(path).write_text(body, encoding="utf-8")
    return body


@dataclass
class RunManifest:
    """Reproducibility record of one operation run."""

    operation: str
    seed: int | None
    space: dict | None
    schedule: dict | None
    params: dict
    window: list[int] | None
    statistics: dict
    metadata: dict = field(default_factory=dict)
    version: int = MANIFEST_VERSION

    def to_json(self) -> str:
        payload = {
            "version": self.version,
            "operation": self.operation,
            "seed": self.seed,
            "space": self.space,
            "schedule": self.schedule,
            "params": self.params,
            "window": self.window,
            "statistics": self.statistics,
            "metadata": self.metadata,
        }
        return json.dumps(payload, sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> "RunManifest":
        data = json.loads(line)
        known = {"version", "operation", "seed", "space", "schedule", "params",
                 "window", "statistics", "metadata"}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown manifest keys: {sorted(unknown)}")
        return cls(
            operation=data["operation"],
            seed=data.get("seed"),
            space=data.get("space"),
            schedule=data.get("schedule"),
            params=data.get("params", {}),
            window=data.get("window"),
            statistics=data.get("statistics", {}),
            metadata=data.get("metadata", {}),
            version=data.get("version", MANIFEST_VERSION),
        )


def append_manifest(path: str | Path, manifest: RunManifest) -> None:
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(manifest.to_json() + "\n")


def read_manifests(path: str | Path) -> list[RunManifest]:
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.strip():
            out.append(RunManifest.from_json(line))
    return out
