"""Job files for the command-line front end.

A job is a JSON document::

    {
      "dimension": 3,
      "points": [[0, 0, 0], [1, 0, 0]],
      "parametrization": {"type": "diagonal", "alpha": [-1, -1]},
      "options": {}
    }

Hermitian parameters are ``{"type": "hermitian", "real": [[...]], "imag": [[...]]}``;
relations are ``{"type": "relation", "projector": {...}, "operator": {...}}``
with both matrices in the same real/imag form.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .config import Diagonal, ExtensionParameter, Hermitian, PointConfiguration, Relation, build_configuration
from .exceptions import PointIntError, PreconditionError

__all__ = ["ConfigError", "JobSpec", "load_job", "parse_grid", "dumps"]


class ConfigError(PointIntError, ValueError):
    """Malformed job file; ``field`` names the offending key path."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def _real_list(value, path, length=None):
    if not isinstance(value, list) or not all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in value
    ):
        raise ConfigError(path, "expected a list of numbers")
    if length is not None and len(value) != length:
        raise ConfigError(path, f"expected {length} numbers, got {len(value)}")
    if not all(math.isfinite(v) for v in value):
        raise ConfigError(path, "entries must be finite")
    return [float(v) for v in value]


def _real_matrix(value, path, m):
    if not isinstance(value, list) or len(value) != m:
        raise ConfigError(path, f"expected {m} rows")
    return [_real_list(row, f"{path}[{i}]", m) for i, row in enumerate(value)]


def _complex_matrix(value, path, m):
    if not isinstance(value, dict) or "real" not in value:
        raise ConfigError(path, 'expected an object with "real" (and optional "imag") arrays')
    re = _real_matrix(value["real"], f"{path}.real", m)
    im = _real_matrix(value["imag"], f"{path}.imag", m) if "imag" in value else [[0.0] * m for _ in range(m)]
    return {"real": re, "imag": im}


def _cmat(d):
    return np.array(d["real"]) + 1j * np.array(d["imag"])


def _normalize_param(p, m, path="parametrization"):
    if not isinstance(p, dict) or "type" not in p:
        raise ConfigError(path, 'expected an object with a "type" key')
    kind = p["type"]
    if kind == "diagonal":
        return {"type": "diagonal", "alpha": _real_list(p.get("alpha"), f"{path}.alpha", m)}
    if kind == "hermitian":
        return {"type": "hermitian", **_complex_matrix(p, path, m)}
    if kind == "relation":
        return {
            "type": "relation",
            "projector": _complex_matrix(p.get("projector"), f"{path}.projector", m),
            "operator": _complex_matrix(p.get("operator"), f"{path}.operator", m),
        }
    raise ConfigError(f"{path}.type", f"unknown parametrization {kind!r} (diagonal, hermitian, relation)")


@dataclass
class JobSpec:
    dimension: int | None = None
    points: list[list[float]] | None = None
    parametrization: dict[str, Any] | None = None
    options: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, doc) -> "JobSpec":
        if not isinstance(doc, dict):
            raise ConfigError("<root>", "job file must contain a JSON object")
        unknown = set(doc) - {"dimension", "points", "parametrization", "options"}
        if unknown:
            raise ConfigError(sorted(unknown)[0], "unknown top-level key")
        dim = doc.get("dimension")
        if dim is not None and dim not in (2, 3):
            raise ConfigError("dimension", f"must be 2 or 3, got {dim!r}")
        points = None
        if "points" in doc:
            if dim is None:
                raise ConfigError("dimension", "required when points are given")
            raw = doc["points"]
            if not isinstance(raw, list) or not raw:
                raise ConfigError("points", "expected a non-empty list of coordinate lists")
            points = [_real_list(p, f"points[{i}]", dim) for i, p in enumerate(raw)]
        param = None
        if "parametrization" in doc:
            if points is None:
                raise ConfigError("points", "required when a parametrization is given")
            param = _normalize_param(doc["parametrization"], len(points))
        options = doc.get("options", {})
        if not isinstance(options, dict):
            raise ConfigError("options", "expected an object")
        return cls(dim, points, param, dict(options))

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {}
        if self.dimension is not None:
            out["dimension"] = self.dimension
        if self.points is not None:
            out["points"] = self.points
        if self.parametrization is not None:
            out["parametrization"] = self.parametrization
        out["options"] = self.options
        return out

    def configuration(self) -> PointConfiguration:
        if self.points is None:
            raise ConfigError("points", "this command needs interaction centers")
        try:
            return build_configuration(self.dimension, self.points)
        except PreconditionError as exc:
            raise ConfigError("points", str(exc)) from None

    def extension(self) -> ExtensionParameter:
        p = self.parametrization
        if p is None:
            raise ConfigError("parametrization", "this command needs an extension parameter")
        try:
            if p["type"] == "diagonal":
                return Diagonal(p["alpha"])
            if p["type"] == "hermitian":
                return Hermitian(_cmat(p))
            return Relation(_cmat(p["projector"]), _cmat(p["operator"]))
        except PreconditionError as exc:
            raise ConfigError("parametrization", str(exc)) from None


def load_job(path) -> JobSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError("--config", f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return JobSpec.from_dict(doc)


def parse_grid(spec: str) -> np.ndarray:
    """``"start:stop:count"`` (linear) or ``"logstart:logstop:count:log"`` (base-10 log)."""
    parts = spec.split(":")
    try:
        if len(parts) == 3:
            a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
            grid = np.linspace(a, b, n)
        elif len(parts) == 4 and parts[3] == "log":
            a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
            grid = np.logspace(a, b, n)
        else:
            raise ValueError
    except ValueError:
        raise ConfigError("--grid", f"cannot parse grid {spec!r}") from None
    if n < 1:
        raise ConfigError("--grid", "count must be >= 1")
    return grid


def _fmt(x: float) -> str:
    # JSON has no nan/inf
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with floats written to 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")
