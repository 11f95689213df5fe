"""Session configuration: which dataset, which attributes, how to bin and
color them, which threshold.  The document is plain YAML so analysis
knowledge (ranges, thresholds, palettes) survives between sessions."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from pathlib import Path

import yaml


@dataclass
class AttributeOverride:
    """Per-attribute adjustments persisted with a session."""

    kind: str | None = None
    user_range: list[float] | None = None
    bin_count: int | None = None
    labels: list[str] | None = None
    colors: list[str] | None = None


@dataclass
class SessionConfig:
    dataset: str = ""
    # None = all continuous columns; an explicit empty list = no rangesets
    attributes: list[str] | None = None
    overrides: dict[str, AttributeOverride] = field(default_factory=dict)
    epsilon: float | str = "auto"
    mode: str = "edge-length"
    embedding_source: str = "compute"  # "compute" | "file"
    embedding_path: str | None = None
    colormap: str = "spectral5"
    quality_k: int = 10
    seed: int = 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["overrides"] = {
            name: {k: v for k, v in asdict(ov).items() if v is not None}
            for name, ov in self.overrides.items()
        }
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "SessionConfig":
        data = dict(data)
        overrides = {
            name: AttributeOverride(**ov)
            for name, ov in (data.pop("overrides", {}) or {}).items()
        }
        cfg = cls(**data)
        cfg.overrides = overrides
        return cfg


def load_config(path) -> SessionConfig:
    with open(Path(path), encoding="utf-8") as fh:
        data = yaml.safe_load(fh) or {}
    return SessionConfig.from_dict(data)


def save_config(config: SessionConfig, path) -> None:
    with open(Path(path), "w", encoding="utf-8") as fh:
        yaml.safe_dump(config.to_dict(), fh, sort_keys=True)
