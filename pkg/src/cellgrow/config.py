"""JSON run configuration: which cell space, which generators, caps and thresholds."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .cellspace import CellSpace, GeneratingSet, induce_generating_set, make_cell_space, saturate_and_symmetrize
from .errors import CellGrowError, ConfigError
from .groups import GroupSpec

DEFAULT_CAPS = {"ball_size": 5_000_000, "distance": 64, "subgroup": 10_000}
DEFAULT_THRESHOLDS = {"residual": 0.05, "degree_factor": 1.5}
_TOP_KEYS = {"group", "stabiliser", "generators", "caps", "thresholds", "seed"}


@dataclass(frozen=True)
class Config:
    group: GroupSpec
    stabiliser: tuple = ()
    generator_mode: str = "from_group"  # or "cosets"
    generators: tuple = ()
    caps: dict = field(default_factory=lambda: dict(DEFAULT_CAPS))
    thresholds: dict = field(default_factory=lambda: dict(DEFAULT_THRESHOLDS))
    seed: int = 0

    @classmethod
    def from_dict(cls, data: dict) -> "Config":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(data) - _TOP_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        try:
            group = GroupSpec.from_dict(data["group"])
            group.build()
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad group description: {exc}") from exc

        gens = data.get("generators", {"from_group": None})
        if not isinstance(gens, dict) or len(gens) != 1:
            raise ConfigError("generators must be {from_group: [...]} or {cosets: [...]}")
        (mode, texts), = gens.items()
        if mode not in ("from_group", "cosets"):
            raise ConfigError(f"unknown generator mode {mode!r}")
        if texts is None:
            texts = [group.build().format(g) for g in group.build().generators()]

        caps = dict(DEFAULT_CAPS)
        caps.update(data.get("caps", {}))
        if set(caps) != set(DEFAULT_CAPS):
            raise ConfigError(f"unknown caps: {sorted(set(caps) - set(DEFAULT_CAPS))}")
        if not all(isinstance(v, int) and v > 0 for v in caps.values()):
            raise ConfigError("caps must be positive integers")

        thresholds = dict(DEFAULT_THRESHOLDS)
        thresholds.update(data.get("thresholds", {}))
        if set(thresholds) != set(DEFAULT_THRESHOLDS):
            raise ConfigError("unknown thresholds")

        seed = data.get("seed", 0)
        if not isinstance(seed, int):
            raise ConfigError("seed must be an integer")
        return cls(
            group=group,
            stabiliser=tuple(data.get("stabiliser", ())),
            generator_mode=mode,
            generators=tuple(texts),
            caps=caps,
            thresholds={k: float(v) for k, v in thresholds.items()},
            seed=seed,
        )

    def to_dict(self) -> dict:
        group = {"kind": self.group.kind}
        if self.group.kind in ("free-abelian", "free"):
            group["rank"] = self.group.rank
        if self.group.kind == "finite-permutation":
            group["degree"] = self.group.degree
            group["generators"] = list(self.group.generators)
        return {
            "group": group,
            "stabiliser": list(self.stabiliser),
            "generators": {self.generator_mode: list(self.generators)},
            "caps": dict(self.caps),
            "thresholds": dict(self.thresholds),
            "seed": self.seed,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def digest(self) -> str:
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode()).hexdigest()

    def build(self) -> tuple[CellSpace, GeneratingSet]:
        try:
            group = self.group.build()
            stab = [group.parse(t) for t in self.stabiliser]
            space = make_cell_space(group, stab, cap=self.caps["subgroup"])
            if self.generator_mode == "from_group":
                gens = induce_generating_set(space, [group.parse(t) for t in self.generators])
            else:
                gens = saturate_and_symmetrize(space, [space.parse_point(t) for t in self.generators])
        except (ValueError, CellGrowError) as exc:
            if isinstance(exc, ConfigError) or not isinstance(exc, ValueError):
                raise
            raise ConfigError(str(exc)) from exc
        return space, gens


def load_config(path) -> Config:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path}: {exc}") from exc
    return Config.from_dict(data)
