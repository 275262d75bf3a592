"""On-disk cache of per-(l, m) level data.

One JSON file per cell at ``DIR/<l as p_q>/<m>.json``.  Each file carries a
schema version and the sha256 of its canonical payload; anything that fails to
parse or to match is recomputed with a warning.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

from .algebra import HalfInt

SCHEMA_VERSION = 1
ENV_VAR = "CGA_CACHE_DIR"

log = logging.getLogger(__name__)


def canonical(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def content_hash(payload) -> str:
    return hashlib.sha256(canonical(payload).encode("utf-8")).hexdigest()


def default_dir() -> Path | None:
    v = os.environ.get(ENV_VAR)
    return Path(v) if v else None


class LevelCache:
    def __init__(self, root):
        self.root = Path(root)
        self.hits = 0
        self.misses = 0
        self.corrupted = 0

    def path(self, ell, m: int) -> Path:
        return self.root / HalfInt.parse(ell).slug / f"{m}.json"

    def load(self, ell, m: int):
        """The stored payload, or ``None`` when missing or invalid."""
        p = self.path(ell, m)
        if not p.exists():
            return None
        try:
            data = json.loads(p.read_text(encoding="utf-8"))
            ok = (
                isinstance(data, dict)
                and data.get("schema_version") == SCHEMA_VERSION
                and data.get("ell") == str(HalfInt.parse(ell))
                and data.get("level") == m
                and data.get("hash") == content_hash(data.get("payload"))
            )
        except (OSError, ValueError):
            ok = False
        if not ok:
            self.corrupted += 1
            log.warning("cache entry %s is corrupted or stale; recomputing", p)
            return None
        return data["payload"]

    def store(self, ell, m: int, payload) -> Path:
        p = self.path(ell, m)
        p.parent.mkdir(parents=True, exist_ok=True)
        data = {
            "schema_version": SCHEMA_VERSION,
            "ell": str(HalfInt.parse(ell)),
            "level": m,
            "hash": content_hash(payload),
            "payload": payload,
        }
        fd, tmp = tempfile.mkstemp(dir=p.parent, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(data, sort_keys=True, indent=1, ensure_ascii=False))
        os.replace(tmp, p)
        return p

    def get_or_compute(self, ell, m: int, compute):
        payload = self.load(ell, m)
        if payload is not None:
            self.hits += 1
            return payload
        self.misses += 1
        payload = json.loads(canonical(compute(ell, m)))
        self.store(ell, m, payload)
        return payload
