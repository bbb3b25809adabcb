"""Content-addressed cache for expensive intermediates (eigenbases, spectra,
evolution matrices).  Keys are SHA-256 hashes of the canonical JSON of the
producing configuration; values are .npz archives plus a JSON sidecar."""

from __future__ import annotations

import json
import os
from pathlib import Path

import numpy as np

from .manifest import config_hash

_ENV_VAR = "QAD_CACHE"


def cache_root() -> Path:
    root = os.environ.get(_ENV_VAR)
    if root:
        return Path(root)
    return Path.home() / ".cache" / "qadlab"


def _paths(kind: str, key: str) -> tuple[Path, Path]:
    d = cache_root() / kind
    return d / f"{key}.npz", d / f"{key}.json"


def lookup(kind: str, config) -> dict[str, np.ndarray] | None:
    """Return cached arrays for this config, or None."""
    key = config_hash(config)
    npz, meta = _paths(kind, key)
    if not (npz.exists() and meta.exists()):
        return None
    with np.load(npz, allow_pickle=False) as data:
        return {k: data[k] for k in data.files}


def store(kind: str, config, arrays: dict[str, np.ndarray]) -> str:
    """Store arrays under the config key; returns the key."""
    key = config_hash(config)
    npz, meta = _paths(kind, key)
    npz.parent.mkdir(parents=True, exist_ok=True)
    tmp = npz.with_suffix(".tmp.npz")
    np.savez(tmp, **arrays)
    os.replace(tmp, npz)
    meta.write_text(json.dumps({"kind": kind, "config": config_hash(config),
                                "files": sorted(arrays)}, indent=2))
    return key
