"""Runtime knobs, loadable from a JSON file."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from .arith import DEFAULT_RHO_BUDGET
from .solutions import DEFAULT_MULTIPLE_BOUND

DEFAULT_CATALOG = "catalog.jsonl"


@dataclass(frozen=True)
class Config:
    factor_budget: int = DEFAULT_RHO_BUDGET
    multiple_bound: int = DEFAULT_MULTIPLE_BOUND
    oracle_pq: int = 20
    oracle_side: int = 2000
    catalog: str = DEFAULT_CATALOG

    def __post_init__(self):
        for name in ("factor_budget", "multiple_bound", "oracle_pq", "oracle_side"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise ValueError(f"config {name} must be a positive integer, got {value!r}")
        if not isinstance(self.catalog, str) or not self.catalog:
            raise ValueError("config catalog must be a non-empty path")

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_mapping(cls, data: dict) -> "Config":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
        return cls(**data)


def load_config(path: str | Path | None = None) -> Config:
    if path is None:
        return Config()
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("config file must hold a JSON object")
    return Config.from_mapping(data)
