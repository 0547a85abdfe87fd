"""Service configuration, loadable from a JSON file."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path


@dataclass
class ServiceConfig:
    data_root: Path
    listen: str = "127.0.0.1:8030"
    client_spec: str = "live"
    max_iters: int = 3
    shot_count: int = 4
    workers: int = 4
    max_inflight: int = 8
    extra: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.data_root = Path(self.data_root)
        if self.max_iters < 0:
            raise ValueError("max_iters must be >= 0")
        if not self.data_root.is_dir():
            raise ValueError(f"data root does not exist: {self.data_root}")

    @property
    def host(self) -> str:
        return self.listen.rsplit(":", 1)[0]

    @property
    def port(self) -> int:
        return int(self.listen.rsplit(":", 1)[1])

    @classmethod
    def from_file(cls, path: str | Path) -> "ServiceConfig":
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        known = {
            k: payload.pop(k)
            for k in (
                "data_root",
                "listen",
                "client_spec",
                "max_iters",
                "shot_count",
                "workers",
                "max_inflight",
            )
            if k in payload
        }
        return cls(**known, extra=payload)
