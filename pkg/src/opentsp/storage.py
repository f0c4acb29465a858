"""Scenario files (JSON) and metadata-prefixed results CSV."""

from __future__ import annotations

import csv
import io
import json
import math
import os
from dataclasses import dataclass, field
from typing import Any, Union

from . import __version__
from .experiments import TrialRecord, TrialStats
from .geometry import Instance, Point
from .noise import RNG_ALGORITHM

FORMAT_VERSION = 1
TRIAL_COLUMNS = ["trial_index", "greedy_length", "optimal_length", "excess_ratio_pct"]
SWEEP_COLUMNS = ["sweep_key", "mean", "q1", "median", "q3", "min", "max", "trials"]


class ScenarioError(ValueError):
    """A scenario document is malformed or semantically invalid."""


class ResultsFormatError(ValueError):
    pass


# -- scenarios ---------------------------------------------------------------

def _coord_pair(value, where: str) -> Point:
    if not isinstance(value, list) or len(value) != 2:
        raise ScenarioError(f"{where}: expected [x, y], got {value!r}")
    for v in value:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ScenarioError(f"{where}: coordinate {v!r} is not a number")
        if not math.isfinite(v):
            raise ScenarioError(f"{where}: non-finite coordinate {v!r}")
    return Point(float(value[0]), float(value[1]))


def parse_scenario(text: Union[str, bytes]) -> Instance:
    """Parse ``{"format_version": 1, "start": [x, y], "collectibles": [[x, y], ...]}``."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ScenarioError(f"scenario is not valid UTF-8: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ScenarioError("scenario must be a JSON object")
    missing = [k for k in ("format_version", "start", "collectibles") if k not in doc]
    if missing:
        raise ScenarioError("missing field(s): " + ", ".join(missing))
    if doc["format_version"] != FORMAT_VERSION:
        raise ScenarioError(f"format_version: unsupported version {doc['format_version']!r}")
    start = _coord_pair(doc["start"], "start")
    if not isinstance(doc["collectibles"], list):
        raise ScenarioError("collectibles: expected a list")
    points = tuple(_coord_pair(c, f"collectibles[{i}]") for i, c in enumerate(doc["collectibles"]))
    return Instance(start, points)


def dump_scenario(instance: Instance) -> str:
    doc = {
        "format_version": FORMAT_VERSION,
        "start": [instance.start.x, instance.start.y],
        "collectibles": [[c.x, c.y] for c in instance.collectibles],
    }
    return json.dumps(doc) + "\n"


def load_scenario(path) -> Instance:
    with open(path, "rb") as f:
        return parse_scenario(f.read())


# -- results tables ------------------------------------------------------------

@dataclass
class ResultsTable:
    """Metadata plus either per-trial records or per-sweep statistics.

    For sweep tables ``rows`` holds ``(sweep_key, TrialStats)`` pairs and
    ``metadata["sweep"]`` names the key (``"n"`` or ``"sigma"``).
    """

    rows: list
    metadata: dict[str, Any] = field(default_factory=dict)

    @property
    def kind(self) -> str:
        return "trials" if self.rows and isinstance(self.rows[0], TrialRecord) else "sweep"


def make_metadata(master_seed: int, config: dict, **extra) -> dict[str, Any]:
    meta = {
        "tool": f"opentsp {__version__}",
        "master_seed": int(master_seed),
        "rng": RNG_ALGORITHM,
        "config": config,
    }
    meta.update(extra)
    return meta


def _fmt(x) -> str:
    if isinstance(x, int) and not isinstance(x, bool):
        return str(x)
    return f"{x:.9g}"


def serialize_results(table: ResultsTable) -> str:
    if not table.rows:
        raise ValueError("refusing to write an empty results table")
    out = io.StringIO()
    for key, value in table.metadata.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True, separators=(",", ":"))
        out.write(f"# {key}: {value}\n")
    writer = csv.writer(out, lineterminator="\n")
    if table.kind == "trials":
        writer.writerow(TRIAL_COLUMNS)
        for r in table.rows:
            writer.writerow([r.trial_index, _fmt(r.greedy_length), _fmt(r.optimal_length), _fmt(r.excess_ratio)])
    else:
        writer.writerow(SWEEP_COLUMNS)
        for key, s in table.rows:
            writer.writerow(
                [_fmt(key)] + [_fmt(v) for v in (s.mean, s.q1, s.median, s.q3, s.min, s.max)] + [s.trials]
            )
    return out.getvalue()


def write_results_csv(table: ResultsTable, destination) -> int:
    """Write ``table`` to a path or text stream; returns bytes written."""
    text = serialize_results(table)
    data = text.encode("utf-8")
    if isinstance(destination, (str, os.PathLike)):
        with open(destination, "wb") as f:
            f.write(data)
    else:
        destination.write(text)
    return len(data)


def _parse_meta_value(key: str, raw: str):
    if key == "master_seed":
        return int(raw)
    if raw[:1] in "{[":
        try:
            return json.loads(raw)
        except json.JSONDecodeError:
            pass
    return raw


def parse_results(text: str) -> ResultsTable:
    meta: dict[str, Any] = {}
    lines = text.split("\n")
    i = 0
    while i < len(lines) and lines[i].startswith("#"):
        key, sep, raw = lines[i][1:].strip().partition(": ")
        if not sep:
            raise ResultsFormatError(f"line {i + 1}: malformed metadata line")
        meta[key] = _parse_meta_value(key, raw)
        i += 1
    reader = csv.reader(l for l in lines[i:] if l)
    try:
        header = next(reader)
    except StopIteration:
        raise ResultsFormatError("missing header row") from None
    rows: list = []
    if header == TRIAL_COLUMNS:
        for rec in reader:
            rows.append(TrialRecord(int(rec[0]), float(rec[1]), float(rec[2]), float(rec[3])))
    elif header == SWEEP_COLUMNS:
        as_int = meta.get("sweep") == "n"
        for rec in reader:
            key = int(rec[0]) if as_int else float(rec[0])
            stats = TrialStats(*(float(v) for v in rec[1:7]), int(rec[7]))
            rows.append((key, stats))
    else:
        raise ResultsFormatError(f"unrecognised header {header!r}")
    return ResultsTable(rows, meta)


def read_results_csv(path) -> ResultsTable:
    with open(path, encoding="utf-8", newline="") as f:
        return parse_results(f.read())
