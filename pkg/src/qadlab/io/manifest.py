"""Run manifests: every output directory records the exact configuration,
package version, content hashes of the files it produced, and wall time."""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import asdict, is_dataclass
from pathlib import Path


def _jsonable(obj):
    if is_dataclass(obj) and not isinstance(obj, type):
        return {k: _jsonable(v) for k, v in asdict(obj).items()}
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "item"):
        return obj.item()
    if isinstance(obj, Path):
        return str(obj)
    return obj


def file_hash(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def config_hash(config) -> str:
    s = json.dumps(_jsonable(config), sort_keys=True)
    return hashlib.sha256(s.encode()).hexdigest()


class ManifestWriter:
    """Collects outputs produced by one subcommand run."""

    def __init__(self, out_dir, subcommand: str, config):
        self.out_dir = Path(out_dir)
        self.subcommand = subcommand
        self.config = _jsonable(config)
        self.outputs: dict[str, str] = {}
        self.extra: dict = {}
        self._t0 = time.monotonic()

    def add(self, path) -> None:
        path = Path(path)
        self.outputs[str(path.relative_to(self.out_dir))] = file_hash(path)

    def write(self) -> Path:
        from qadlab import __version__

        doc = {
            "subcommand": self.subcommand,
            "config": self.config,
            "config_hash": config_hash(self.config),
            "package_version": __version__,
            "outputs": self.outputs,
            "wall_time_s": round(time.monotonic() - self._t0, 3),
            **self.extra,
        }
        path = self.out_dir / "manifest.json"
        path.write_text(json.dumps(doc, indent=2, sort_keys=True))
        return path


def read_manifest(out_dir) -> dict:
    return json.loads((Path(out_dir) / "manifest.json").read_text())
