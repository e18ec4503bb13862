"""YAML system configuration files.

Grammar (keys not listed are rejected)::

    kind: sturmian | substitution | sft
    alphabet: "01"                     # optional for substitution (taken from the rule)
    alpha: {p: -1, q: 1, d: 2, r: 1}   # sturmian, alpha = (p + q*sqrt(d)) / r
    alpha: "sqrt(2)-1"                 # or any string QuadReal.parse accepts
    rule: {"0": "0011", "1": "0101"}   # substitution
    forbidden: ["00"]                  # sft
    k0: dyadic | sturmian              # K^0 presentation, optional
    points:                            # distinguished points, two are needed for sgn
      - {t: "1/3"}                     # sturmian parameter
      - {left: "1", right: "0", power: 1}   # substitution seed left.right
    bratteli:                          # optional diagram for the bratteli command
      top: [1, 1]
      levels: [[[2, 2], [2, 2]]]
      stationary: [[2, 2], [2, 2]]
    caps: {order: 720, span: 64, depth: 64}
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

import yaml

from .bratteli import BratteliDiagram
from .element import DEFAULT_ORDER_CAP
from .errors import ConfigError
from .quadreal import QuadReal
from .subshift import (SFTSystem, SturmianPoint, SturmianSystem, SubshiftSystem,
                       SubstitutionPoint, SubstitutionSystem)

_TOP_KEYS = {"kind", "alphabet", "alpha", "rule", "forbidden", "k0", "points", "bratteli", "caps", "name"}


@dataclass
class Caps:
    order: int = DEFAULT_ORDER_CAP
    span: int = 64
    depth: int = 64

    def __post_init__(self):
        for k in ("order", "span", "depth"):
            v = getattr(self, k)
            if not isinstance(v, int) or v <= 0:
                raise ConfigError(f"cap {k!r} must be a positive integer, got {v!r}")


@dataclass
class LoadedConfig:
    system: Optional[SubshiftSystem]
    diagram: Optional[BratteliDiagram]
    caps: Caps
    source: Optional[str] = None


def _alpha(v: Any) -> QuadReal:
    if isinstance(v, dict):
        extra = set(v) - {"p", "q", "d", "r"}
        if extra:
            raise ConfigError(f"unknown alpha keys {sorted(extra)}")
        try:
            return QuadReal.from_parts(int(v.get("p", 0)), int(v.get("q", 0)), int(v.get("d", 0)),
                                       int(v.get("r", 1)))
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad alpha {v!r}: {exc}") from exc
    try:
        return QuadReal.parse(str(v))
    except Exception as exc:
        raise ConfigError(f"bad alpha {v!r}: {exc}") from exc


def build_system(data: dict) -> SubshiftSystem:
    kind = data.get("kind")
    if kind == "sturmian":
        if "alpha" not in data:
            raise ConfigError("a sturmian system needs alpha")
        sys = SturmianSystem(_alpha(data["alpha"]), alphabet=str(data.get("alphabet", "01")))
        pts = []
        for p in data.get("points", []):
            if set(p) != {"t"}:
                raise ConfigError(f"a sturmian point is {{t: ...}}, got {p!r}")
            pts.append(SturmianPoint(sys, QuadReal.parse(str(p["t"]))))
    elif kind == "substitution":
        rule = data.get("rule")
        if not isinstance(rule, dict) or not rule:
            raise ConfigError("a substitution system needs a rule mapping")
        rule = {str(k): str(v) for k, v in rule.items()}
        sys = SubstitutionSystem(rule, alphabet=data.get("alphabet"))
        pts = []
        for p in data.get("points", []):
            extra = set(p) - {"left", "right", "power"}
            if extra or "right" not in p:
                raise ConfigError(f"a substitution point is {{left, right, power}}, got {p!r}")
            pts.append(SubstitutionPoint(sys, str(p.get("left", "")), str(p["right"]), int(p.get("power", 1))))
    elif kind == "sft":
        if "alphabet" not in data:
            raise ConfigError("an sft needs an alphabet")
        sys = SFTSystem(str(data["alphabet"]), [str(f) for f in data.get("forbidden", [])])
        if data.get("points"):
            raise ConfigError("distinguished points are not supported for sft systems")
        pts = []
    else:
        raise ConfigError(f"unknown system kind {kind!r}")
    if "k0" in data:
        sys.k0 = str(data["k0"])
    if "name" in data:
        sys.name = str(data["name"])
    if pts:
        sys.set_points(pts)
    return sys


def build_diagram(data: dict) -> BratteliDiagram:
    extra = set(data) - {"top", "levels", "stationary"}
    if extra:
        raise ConfigError(f"unknown bratteli keys {sorted(extra)}")
    return BratteliDiagram(data.get("levels", ()), data.get("stationary"), top=data.get("top"))


def load_config(data: Any, source: Optional[str] = None) -> LoadedConfig:
    if not isinstance(data, dict):
        raise ConfigError("the configuration must be a mapping")
    extra = set(data) - _TOP_KEYS
    if extra:
        raise ConfigError(f"unknown configuration keys {sorted(extra)}")
    caps = Caps(**(data.get("caps") or {}))
    system = build_system(data) if "kind" in data else None
    diagram = build_diagram(data["bratteli"]) if "bratteli" in data else None
    if system is None and diagram is None:
        raise ConfigError("the configuration defines neither a system nor a diagram")
    return LoadedConfig(system, diagram, caps, source)


def load_config_file(path: str | Path) -> LoadedConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return load_config(data, str(path))
