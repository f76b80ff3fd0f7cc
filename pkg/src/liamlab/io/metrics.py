"""JSON Lines metrics stream: one flushed, line-atomic record per append.

Records keep their insertion key order (so identical runs produce
byte-identical files). Non-finite floats cannot be emitted as bare JSON;
they are serialized as the string tokens "NaN" / "Infinity" / "-Infinity"
and the affected keys are listed in a ``nonfinite_fields`` entry.
"""

from __future__ import annotations

import json
import math
import threading


def _sanitize(value, path: str, flagged: list[str]):
    if isinstance(value, float) and not math.isfinite(value):
        flagged.append(path)
        if math.isnan(value):
            return "NaN"
        return "Infinity" if value > 0 else "-Infinity"
    if isinstance(value, dict):
        return {k: _sanitize(v, f"{path}.{k}" if path else str(k), flagged) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_sanitize(v, f"{path}[{i}]", flagged) for i, v in enumerate(value)]
    return value


def encode_record(record: dict) -> str:
    flagged: list[str] = []
    clean = {k: _sanitize(v, str(k), flagged) for k, v in record.items()}
    if flagged:
        clean["nonfinite_fields"] = flagged
    return json.dumps(clean, allow_nan=False)


class MetricsWriter:
    """Single-file JSON Lines writer; appends are line-atomic across threads."""

    def __init__(self, path):
        self.path = path
        self._fh = open(path, "a", encoding="utf-8")
        self._lock = threading.Lock()

    def append(self, record: dict) -> None:
        line = encode_record(record) + "\n"
        with self._lock:
            self._fh.write(line)
            self._fh.flush()

    def close(self) -> None:
        with self._lock:
            self._fh.close()

    def __enter__(self) -> "MetricsWriter":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def append_metrics(stream, record: dict) -> None:
    """Append one record to an open MetricsWriter or file-like stream."""
    if isinstance(stream, MetricsWriter):
        stream.append(record)
    else:
        stream.write(encode_record(record) + "\n")
        stream.flush()


def read_metrics(path) -> list[dict]:
    records = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                records.append(json.loads(line))
    return records
