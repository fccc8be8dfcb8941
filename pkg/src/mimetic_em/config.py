"""Run configuration: JSON documents, strict key checking, built-in presets."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Any, Union

from .grids import StaggeredGrid1D
from .operators import check_order
from .maxwell1d import Scenario1D, Slab, Source
from .maxwell2d import PmlSpec, Pulse, Scenario2D

KINDS = ("yee1d", "mimetic1d", "mimetic2d", "ops-dump", "pml-oracle")


class ConfigError(ValueError):
    """Malformed or invalid run configuration."""


@dataclass(frozen=True)
class OpsDump:
    k: int = 2
    m: int = 4
    dx: float = 1.0
    n: int | None = None
    dy: float | None = None
    dump: str = "grad"

    def __post_init__(self) -> None:
        if self.dump not in ("grad", "div", "lap"):
            raise ValueError(f"dump must be grad, div or lap, got {self.dump!r}")
        if (self.n is None) != (self.dy is None):
            raise ValueError("n and dy must be given together")
        check_order(self.k)
        StaggeredGrid1D(self.m, self.dx)
        if self.n is not None:
            StaggeredGrid1D(self.n, self.dy)


Params = Union[Scenario1D, Scenario2D, OpsDump]


@dataclass(frozen=True)
class RunConfig:
    kind: str
    params: Params
    out: str = "out"
    margin: int | None = None  # pml-oracle only, defaults to 100 there

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ConfigError(f"kind: must be one of {', '.join(KINDS)}, got {self.kind!r}")
        if self.kind == "pml-oracle":
            if self.margin is None:
                object.__setattr__(self, "margin", 100)
        elif self.margin is not None:
            raise ConfigError(f"margin: only valid for pml-oracle, not {self.kind}")


_SPECS: dict[str, dict[str, Any]] = {
    "1d": {
        "m": int, "k": int, "dt": float, "steps": int, "eps0": float,
        "snapshot_every": int,
        "source": {"index": int, "frequency": float, "amplitude": float},
        "slab": {"start": int, "eps_r": float, "sigma": float},
    },
    "2d": {
        "mx": int, "my": int, "dx": float, "dy": float, "dt": float,
        "steps": int, "k": int, "snapshot_steps": list,
        "pulse": {"x": float, "y": float, "width": float},
        "pml": {"depth": int, "sigma_max": float, "p": float},
    },
    "ops": {"k": int, "m": int, "dx": float, "n": int, "dy": float, "dump": str},
}


def _family(kind: str) -> str:
    return {"yee1d": "1d", "mimetic1d": "1d", "mimetic2d": "2d",
            "pml-oracle": "2d", "ops-dump": "ops"}[kind]


def _coerce(path: str, value: Any, typ: Any) -> Any:
    if typ is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{path}: expected an integer, got {value!r}")
        return value
    if typ is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{path}: expected a number, got {value!r}")
        return float(value)
    if typ is str:
        if not isinstance(value, str):
            raise ConfigError(f"{path}: expected a string, got {value!r}")
        return value
    if typ is list:
        if not isinstance(value, list) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in value
        ):
            raise ConfigError(f"{path}: expected a list of integers, got {value!r}")
        return tuple(value)
    raise AssertionError(typ)


def _check_section(path: str, doc: dict, spec: dict) -> dict:
    unknown = sorted(set(doc) - set(spec))
    if unknown:
        where = f"{path}." if path else ""
        raise ConfigError(f"unknown key {where}{unknown[0]!r}")
    out = {}
    for key, value in doc.items():
        sub = spec[key]
        name = f"{path}.{key}" if path else key
        if isinstance(sub, dict):
            if value is None:
                out[key] = None
            elif not isinstance(value, dict):
                raise ConfigError(f"{name}: expected an object or null")
            else:
                out[key] = _check_section(name, value, sub)
        else:
            out[key] = _coerce(name, value, sub)
    return out


def config_from_dict(doc: dict) -> RunConfig:
    if not isinstance(doc, dict):
        raise ConfigError("config document must be an object")
    doc = dict(doc)
    kind = doc.pop("kind", None)
    if kind not in KINDS:
        raise ConfigError(f"kind: must be one of {', '.join(KINDS)}, got {kind!r}")
    out = doc.pop("out", "out")
    if not isinstance(out, str):
        raise ConfigError("out: expected a string")
    margin = None
    if kind == "pml-oracle":
        margin = _coerce("margin", doc.pop("margin", 100), int)
        if margin < 1:
            raise ConfigError("margin: must be >= 1")
    fam = _family(kind)
    vals = _check_section("", doc, _SPECS[fam])
    try:
        if fam == "1d":
            if "source" in vals:
                if vals["source"] is None:
                    raise ConfigError("source: must not be null")
                vals["source"] = Source(**vals["source"])
            if vals.get("slab") is not None:
                vals["slab"] = Slab(**vals["slab"])
            params: Params = Scenario1D(**vals)
        elif fam == "2d":
            if "pulse" in vals:
                if vals["pulse"] is None:
                    raise ConfigError("pulse: must not be null")
                vals["pulse"] = Pulse(**vals["pulse"])
            if vals.get("pml") is not None:
                vals["pml"] = PmlSpec(**vals["pml"])
            params = Scenario2D(**vals)
        else:
            params = OpsDump(**vals)
    except ConfigError:
        raise
    except (ValueError, NotImplementedError) as exc:
        raise ConfigError(f"invalid {kind} parameters: {exc}") from exc
    return RunConfig(kind=kind, params=params, out=out, margin=margin)


def parse_config(text: str) -> RunConfig:
    """Parse and validate a JSON config document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return config_from_dict(doc)


def config_to_dict(cfg: RunConfig) -> dict:
    doc: dict[str, Any] = {"kind": cfg.kind}
    params = asdict(cfg.params)
    if isinstance(cfg.params, Scenario2D):
        params["snapshot_steps"] = list(cfg.params.snapshot_steps)
    doc.update(params)
    doc["out"] = cfg.out
    if cfg.kind == "pml-oracle":
        doc["margin"] = cfg.margin
    return doc


def render_config(cfg: RunConfig) -> str:
    return json.dumps(config_to_dict(cfg), indent=2) + "\n"


PRESETS = {
    "sullivan-1d": lambda: RunConfig("mimetic1d", Scenario1D()),
    "sullivan-1d-yee": lambda: RunConfig("yee1d", Scenario1D()),
    "sullivan-2d-upml": lambda: RunConfig("mimetic2d", Scenario2D()),
    "sullivan-2d-pml-oracle": lambda: RunConfig("pml-oracle", Scenario2D()),
}


def preset(name: str) -> RunConfig:
    try:
        return PRESETS[name]()
    except KeyError:
        raise ConfigError(
            f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}"
        ) from None
