"""Runtime configuration: tolerances, resource caps, output format.

A config travels with a request rather than living in module globals, so
concurrent callers with different settings never interfere.  The
environment variable ``VK_CONFIG`` may name a JSON file with the same
field names; explicit flags override it.
"""

from __future__ import annotations

import dataclasses
import json
import os

from .errors import SchemaError

_FORMATS = ("json", "csv")


@dataclasses.dataclass(frozen=True)
class Config:
    tolerance: float = 1e-6
    torus_cap: int = 10**7
    weyl_cap: int = 2 * 10**6
    rootspace_cap: int = 2 * 10**4
    weight_cap: int = 10**6
    format: str = "json"
    parallelism: int = 1

    def __post_init__(self):
        if not (0.0 < self.tolerance < 1e-2):
            raise SchemaError(f"tolerance must lie in (0, 1e-2), got {self.tolerance}")
        for name in ("torus_cap", "weyl_cap", "rootspace_cap", "weight_cap"):
            if getattr(self, name) <= 0:
                raise SchemaError(f"{name} must be positive")
        if self.format not in _FORMATS:
            raise SchemaError(f"format must be one of {_FORMATS}, got {self.format!r}")
        if self.parallelism < 1:
            raise SchemaError("parallelism must be >= 1")

    def replace(self, **kwargs) -> "Config":
        return dataclasses.replace(self, **kwargs)


DEFAULT = Config()


def from_file(path: str) -> Config:
    """Load a Config from a JSON file; unknown keys are rejected."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read config file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise SchemaError("config file must contain a JSON object")
    known = {f.name for f in dataclasses.fields(Config)}
    unknown = set(data) - known
    if unknown:
        raise SchemaError(f"unknown config keys: {sorted(unknown)}")
    return Config(**data)


def from_env(overrides: dict | None = None) -> Config:
    """Config from VK_CONFIG (if set) with explicit overrides on top."""
    base = from_file(os.environ["VK_CONFIG"]) if os.environ.get("VK_CONFIG") else DEFAULT
    if overrides:
        base = base.replace(**{k: v for k, v in overrides.items() if v is not None})
    return base
