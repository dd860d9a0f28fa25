"""Append-only JSON-lines catalog of verified records."""

from __future__ import annotations

import csv
import fcntl
import io
import json
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable

from .errors import CorruptCatalog, VerificationFailed
from .systems import SolutionRecord, verify_record

try:
    from importlib.metadata import PackageNotFoundError, version as _dist_version

    VERSION = _dist_version("artifact")
except PackageNotFoundError:  # running from a source checkout
    VERSION = "0.1.0"

CSV_FIELDS = (
    "tag", "n", "x", "z", "k", "unknowns", "triangle1", "triangle2", "verified", "created", "version",
)


@dataclass(frozen=True)
class CatalogEntry:
    record: SolutionRecord
    verified: bool
    created: str
    version: str = VERSION

    @classmethod
    def new(cls, record: SolutionRecord) -> "CatalogEntry":
        return cls(
            record,
            verify_record(record),
            datetime.now(timezone.utc).isoformat(timespec="seconds"),
        )

    def to_json(self) -> dict:
        data = self.record.to_json()
        data.update(verified=self.verified, created=self.created, version=self.version)
        return data

    @classmethod
    def from_json(cls, data: dict) -> "CatalogEntry":
        verified = data["verified"]
        if not isinstance(verified, bool):
            raise ValueError("verified must be a boolean")
        datetime.fromisoformat(data["created"])
        return cls(SolutionRecord.from_json(data), verified, data["created"], str(data["version"]))


class Catalog:
    def __init__(self, path: str | Path):
        self.path = Path(path)

    def append(self, records: Iterable[SolutionRecord]) -> list[CatalogEntry]:
        """Verify and append; records failing verification are not written."""
        entries = [CatalogEntry.new(r) for r in records]
        bad = [e for e in entries if not e.verified]
        if bad:
            raise VerificationFailed(f"{len(bad)} record(s) failed verification and were not written")
        if not entries:
            return []
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX)
            try:
                for e in entries:
                    fh.write(json.dumps(e.to_json(), separators=(",", ":")) + "\n")
                fh.flush()
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)
        return entries

    def read(self) -> list[CatalogEntry]:
        if not self.path.exists():
            return []
        entries = []
        with open(self.path, encoding="utf-8") as fh:
            fcntl.flock(fh, fcntl.LOCK_SH)
            try:
                lines = fh.readlines()
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)
        for lineno, line in enumerate(lines, 1):
            if not line.strip():
                continue
            try:
                entries.append(CatalogEntry.from_json(json.loads(line)))
            except (ValueError, KeyError, TypeError) as exc:
                raise CorruptCatalog(f"{self.path}:{lineno}: {exc}") from exc
        return entries

    def records(self) -> list[SolutionRecord]:
        return [e.record for e in self.read()]

    def verify(self) -> list[tuple[int, CatalogEntry, bool]]:
        return [(i, e, verify_record(e.record)) for i, e in enumerate(self.read(), 1)]


def summary_line(index: int, entry: CatalogEntry) -> str:
    rec = entry.record
    values = ", ".join(f"{s}={rec.unknowns[s]}" for s in rec.tag.symbols)
    return f"{index}: {rec.tag.value} N={rec.n} {values}" + ("" if entry.verified else " [unverified]")


def export_csv(entries: Iterable[CatalogEntry]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for e in entries:
        d = e.to_json()
        writer.writerow([
            d["tag"], d["n"], d["x"], d["z"], d["k"],
            ";".join(f"{s}={v}" for s, v in d["unknowns"].items()),
            " ".join(d["triangle1"]), " ".join(d["triangle2"]),
            "true" if d["verified"] else "false", d["created"], d["version"],
        ])
    return buf.getvalue()
