"""Run configuration: validation, TOML/JSON loading, grid specs."""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field, asdict
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .operators import InvalidConfig, TruncationConfig

ALL_SUITES = ("words", "podles", "commutant", "action", "noncompact",
              "quotient", "volume")

# dependency order: symbolic word machinery first, numeric operators next,
# everything built on ad_U afterwards
SUITE_ORDER = {name: i for i, name in enumerate(ALL_SUITES)}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    mu: float = 0.5
    c: float = 2.0
    theta: float = 0.25
    M: int = 32
    buffer: int = 2
    N_quotient: int = 2
    suites: list[str] = field(default_factory=lambda: list(ALL_SUITES))
    output_dir: str = "out"
    seed: int = 0

    def __post_init__(self):
        if not (0.0 < self.mu < 1.0):
            raise ConfigError(f"mu={self.mu} must lie in (0,1)")
        if self.c <= 0.0:
            raise ConfigError(f"c={self.c} must be positive")
        if self.M < 4:
            raise ConfigError(f"M={self.M} must be >= 4")
        if self.buffer < 2:
            raise ConfigError(f"buffer={self.buffer} must be >= 2")
        if self.N_quotient < 1:
            raise ConfigError(f"N_quotient={self.N_quotient} must be >= 1")
        unknown = set(self.suites) - set(ALL_SUITES)
        if unknown:
            raise ConfigError(f"unknown suites: {sorted(unknown)}")
        if not self.suites:
            raise ConfigError("no suites selected")
        self.suites = sorted(set(self.suites), key=SUITE_ORDER.__getitem__)

    def truncation(self) -> TruncationConfig:
        try:
            return TruncationConfig(M=self.M, mu=self.mu, c=self.c,
                                    buffer=self.buffer)
        except InvalidConfig as exc:
            raise ConfigError(str(exc)) from exc

    def to_jsonable(self) -> dict:
        return asdict(self)


def load_config_file(path: str | Path) -> dict:
    path = Path(path)
    raw = path.read_bytes()
    if path.suffix == ".json":
        return json.loads(raw)
    try:
        return tomllib.loads(raw.decode())
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc


def config_from_file(path: str | Path, **overrides) -> RunConfig:
    data = load_config_file(path)
    known = set(RunConfig.__dataclass_fields__)
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config keys in {path}: {sorted(unknown)}")
    data.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return RunConfig(**data)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


@dataclass
class GridSpec:
    mu: list[float]
    c: list[float]
    theta: list[float]
    M: list[int]

    def cells(self) -> list[dict]:
        out = []
        for mu in self.mu:
            for c in self.c:
                for theta in self.theta:
                    for M in self.M:
                        out.append({"mu": mu, "c": c, "theta": theta, "M": M})
        return out


def grid_from_file(path: str | Path) -> GridSpec:
    data = load_config_file(path)
    try:
        spec = GridSpec(
            mu=[float(x) for x in data["mu"]],
            c=[float(x) for x in data["c"]],
            theta=[float(x) for x in data["theta"]],
            M=[int(x) for x in data["M"]],
        )
    except KeyError as exc:
        raise ConfigError(f"grid file {path} missing key {exc}") from exc
    if not spec.cells():
        raise ConfigError("empty grid")
    return spec
