"""Flat content-addressed store for reports: one JSON file per distinct content."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .report import strip_timestamps


def content_hash(report: dict) -> str:
    canon = json.dumps(strip_timestamps(report), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def put(root, report: dict) -> str:
    digest = content_hash(report)
    path = Path(root) / digest[:2] / f"{digest}.json"
    if not path.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(report, sort_keys=True, indent=2))
        tmp.replace(path)
    return digest


def get(root, digest: str) -> dict:
    path = Path(root) / digest[:2] / f"{digest}.json"
    if not path.exists():
        raise KeyError(digest)
    return json.loads(path.read_text())
