"""Count reports and the flat JSON result cache."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__

CSV_FIELDS = ("configuration", "mode", "method", "conventions", "count", "elapsed_ms", "version")


@dataclass
class CountReport:
    configuration: str
    mode: str
    method: str
    count: str
    conventions: dict = field(default_factory=dict)
    elapsed_ms: float = 0.0
    version: str = __version__

    def __post_init__(self):
        if not self.count.isdigit():
            raise ValueError(f"count must be a nonnegative decimal integer, got {self.count!r}")

    def cache_key(self) -> str:
        return request_key(self.configuration, self.mode, self.method, self.conventions, self.version)

    def to_dict(self) -> dict:
        return asdict(self)


def request_key(configuration: str, mode: str, method: str, conventions: dict,
                version: str = __version__) -> str:
    conv = ",".join(f"{k}={conventions[k]}" for k in sorted(conventions))
    return f"{configuration}|{mode}|{method}|{conv}|{version}"


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


def to_csv(reports: list[CountReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for r in reports:
        conv = ";".join(f"{k}={r.conventions[k]}" for k in sorted(r.conventions))
        writer.writerow([r.configuration, r.mode, r.method, conv, r.count, f"{r.elapsed_ms:.3f}", r.version])
    return buf.getvalue()


class Cache:
    """Final counts keyed by the full request (configuration, mode, method,
    conventions, version); nothing is reused across any mismatch."""

    def __init__(self, path):
        self.path = Path(path)
        self.data: dict[str, str] = {}
        if self.path.exists():
            self.data = json.loads(self.path.read_text(encoding="utf-8") or "{}")

    def get(self, key: str) -> str | None:
        return self.data.get(key)

    def put(self, key: str, count: str) -> None:
        self.data[key] = count
        self.path.write_text(json.dumps(self.data, indent=2, sort_keys=True) + "\n", encoding="utf-8")
