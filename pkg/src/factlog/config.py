"""Key=value configuration shared by the CLI and serve mode."""

from __future__ import annotations

from dataclasses import dataclass

from .model import FactlogError


@dataclass
class PipelineConfig:
    threshold: float = 0.9
    hop_limit: int = 5
    infinite_penalty: float | None = None
    adapter_url: str | None = None
    fixture_mode: bool = True

    @classmethod
    def load(cls, path) -> "PipelineConfig":
        config = cls()
        with open(path, encoding="utf-8") as f:
            for lineno, raw in enumerate(f, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                key, sep, value = line.partition("=")
                if not sep:
                    raise FactlogError(f"line {lineno}: expected key=value")
                key = key.strip()
                value = value.strip()
                if key == "threshold":
                    config.threshold = float(value)
                elif key == "hop_limit":
                    config.hop_limit = int(value)
                elif key == "infinite_penalty":
                    config.infinite_penalty = float(value)
                elif key == "adapter_url":
                    config.adapter_url = value or None
                elif key == "fixture_mode":
                    config.fixture_mode = value.lower() in ("1", "true", "yes")
                else:
                    raise FactlogError(f"line {lineno}: unknown key {key!r}")
        return config
