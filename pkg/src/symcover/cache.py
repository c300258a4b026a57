"""Content-addressed result cache for classify/stability runs.

The key hashes everything that determines the output bytes (canonical group
table, genus, moveset fingerprint, schema version, caps); there is no other
invalidation.  Writes are atomic (temp file + rename).
"""

from __future__ import annotations

import hashlib
import json
import os
import sys
import tempfile
from pathlib import Path

from .orbits import SCHEMA_VERSION

ENV_VAR = "SYMCOVER_CACHE"


def cache_root(override=None) -> Path:
    if override:
        return Path(override)
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "symcover"


def cache_key(group_hash: str, moveset_fingerprint: str, **params) -> str:
    payload = json.dumps(
        {
            "schema_version": SCHEMA_VERSION,
            "group": group_hash,
            "moveset": moveset_fingerprint,
            "params": params,
        },
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode()).hexdigest()


def lookup(root: Path, key: str):
    """Stored report bytes on hit, None on miss; a corrupt entry is ignored
    with a warning and will be overwritten."""
    path = root / f"{key}.json"
    if not path.exists():
        return None
    try:
        data = path.read_bytes()
        json.loads(data)
        return data
    except (OSError, ValueError):
        print(f"warning: corrupt cache entry {path}, recomputing", file=sys.stderr)
        return None


def store(root: Path, key: str, data: bytes) -> None:
    root.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=root, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, root / f"{key}.json")
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def purge(root: Path) -> int:
    if not root.exists():
        return 0
    n = 0
    for path in root.glob("*.json"):
        path.unlink()
        n += 1
    return n
