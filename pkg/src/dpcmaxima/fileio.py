"""EMX1 instance files, their JSON sidecars, and the run-report CSV."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Dict, Iterable, List, Optional

import numpy as np

from .core import PointSet

MAGIC = "EMX1"

REPORT_COLUMNS = [
    "instance_id",
    "family",
    "n",
    "d",
    "h",
    "algorithm",
    "wall_time_ns",
    "dominance_queries",
    "iterations",
    "points_pruned_total",
    "duplicates_removed",
    "entropy_known",
    "theoretical_cost",
    "seed",
]


class InstanceFormatError(ValueError):
    pass


def format_instance(points: PointSet) -> str:
    lines = [f"{MAGIC} {points.d} {points.n}"]
    # repr() is the shortest string that round-trips a float64
    lines.extend(" ".join(repr(float(c)) for c in row) for row in points.coords.tolist())
    return "\n".join(lines) + "\n"


def write_instance(points: PointSet, path) -> None:
    Path(path).write_text(format_instance(points), encoding="utf-8")


def parse_instance(text: str) -> PointSet:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise InstanceFormatError("empty instance file")
    head = lines[0].split(" ")
    if len(head) != 3 or head[0] != MAGIC:
        raise InstanceFormatError(f"bad header {lines[0]!r}, expected '{MAGIC} <d> <n>'")
    try:
        d, n = int(head[1]), int(head[2])
    except ValueError:
        raise InstanceFormatError(f"bad header {lines[0]!r}") from None
    if d < 2 or n < 0:
        raise InstanceFormatError(f"bad header values d={d} n={n}")
    body = lines[1:]
    if len(body) != n:
        raise InstanceFormatError(f"header says n={n} but body has {len(body)} lines")
    rows = []
    for lineno, line in enumerate(body, start=2):
        fields = line.split(" ")
        if len(fields) != d:
            raise InstanceFormatError(f"line {lineno}: expected {d} coordinates, got {len(fields)}")
        try:
            row = [float(f) for f in fields]
        except ValueError:
            raise InstanceFormatError(f"line {lineno}: unparseable coordinate") from None
        if not all(math.isfinite(c) for c in row):
            raise InstanceFormatError(f"line {lineno}: non-finite coordinate")
        rows.append(row)
    return PointSet(np.asarray(rows, dtype=np.float64).reshape(n, d), d=d)


def read_instance(path) -> PointSet:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InstanceFormatError(f"cannot read {path}: {exc}") from None
    return parse_instance(text)


def sidecar_path(path) -> Path:
    return Path(str(path) + ".json")


def write_sidecar(path, meta: Dict) -> None:
    sidecar_path(path).write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def read_sidecar(path) -> Optional[Dict]:
    p = sidecar_path(path)
    if not p.exists():
        return None
    return json.loads(p.read_text(encoding="utf-8"))


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def append_rows(path, rows: Iterable[Dict]) -> None:
    """Append report rows, writing the header first when the file is new."""
    path = Path(path)
    fresh = not path.exists() or path.stat().st_size == 0
    with path.open("a", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        if fresh:
            writer.writerow(REPORT_COLUMNS)
        for row in rows:
            writer.writerow([_cell(row.get(c)) for c in REPORT_COLUMNS])


def read_rows(path) -> List[Dict[str, str]]:
    with Path(path).open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != REPORT_COLUMNS:
            raise ValueError(f"unexpected report columns: {reader.fieldnames}")
        return list(reader)
