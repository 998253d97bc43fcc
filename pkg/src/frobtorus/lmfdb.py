"""Client for LMFDB-style isogeny-class records, with an on-disk response cache.

Responses are cached per query under the SHA-256 of the canonical query
description.  Offline mode replays the cache and never touches the network.
The API lists Weil polynomial coefficients from the leading term down; records
are normalized to ascending order with weight 1.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from pathlib import Path

import requests

from .errors import CacheMiss, SchemaError
from .report import InputRecord

log = logging.getLogger(__name__)

BASE_URL_ENV = "FROBTORUS_LMFDB_URL"
CACHE_DIR_ENV = "FROBTORUS_CACHE_DIR"
DEFAULT_BASE_URL = "https://www.lmfdb.org/api"
COLLECTION = "av_fq_isog"
FIELDS = ("label", "g", "q", "poly")
PAGE_SIZE = 100


def base_url() -> str:
    return os.environ.get(BASE_URL_ENV, DEFAULT_BASE_URL).rstrip("/")


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_DIR_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "frobtorus" / "lmfdb"


def query_key(g: int, q: int, url: str | None = None) -> str:
    """Cache key; independent of the base URL unless one is passed."""
    desc = {"collection": COLLECTION, "g": g, "q": q, "fields": list(FIELDS)}
    if url:
        desc["url"] = url
    return hashlib.sha256(json.dumps(desc, sort_keys=True).encode()).hexdigest()


class LmfdbClient:
    def __init__(self, cache_dir=None, offline: bool = False, url: str | None = None, session=None, timeout: float = 30.0):
        self.cache_dir = Path(cache_dir) if cache_dir else default_cache_dir()
        self.offline = offline
        self.url = (url or base_url()).rstrip("/")
        self.session = session
        self.timeout = timeout

    def _cache_path(self, g: int, q: int) -> Path:
        return self.cache_dir / f"{query_key(g, q)}.json"

    def _download(self, g: int, q: int) -> list:
        session = self.session or requests.Session()
        rows, offset = [], 0
        while True:
            params = {
                "g": g,
                "q": q,
                "_format": "json",
                "_fields": ",".join(FIELDS),
                "_offset": offset,
            }
            resp = session.get(f"{self.url}/{COLLECTION}/", params=params, timeout=self.timeout)
            resp.raise_for_status()
            body = resp.json()
            if not isinstance(body, dict) or "data" not in body:
                raise SchemaError("data", body)
            page = body["data"]
            rows.extend(page)
            if len(page) < PAGE_SIZE or not body.get("next"):
                return rows
            offset += len(page)

    def raw(self, g: int, q: int) -> list:
        """Raw API rows for one (g, q); from cache when present."""
        path = self._cache_path(g, q)
        if path.exists():
            return json.loads(path.read_text())["data"]
        if self.offline:
            raise CacheMiss(f"no cached response for g={g}, q={q} in {self.cache_dir}; rerun without --offline to fetch")
        try:
            rows = self._download(g, q)
        except requests.RequestException as exc:
            raise CacheMiss(
                f"fetch of g={g}, q={q} failed ({exc}) and nothing is cached; retry when {self.url} is reachable"
            ) from exc
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps({"query": {"g": g, "q": q}, "data": rows}, sort_keys=True, indent=1))
        tmp.replace(path)
        log.info("cached %d rows for g=%d q=%d", len(rows), g, q)
        return rows

    def fetch(self, g_range, q_range) -> list[InputRecord]:
        out = []
        for g in _as_range(g_range):
            for q in _as_range(q_range):
                out.extend(normalize(row, g, q) for row in self.raw(g, q))
        return out


def _as_range(x):
    if isinstance(x, int):
        return [x]
    return list(x)


def normalize(row: dict, g: int | None = None, q: int | None = None) -> InputRecord:
    """API row -> InputRecord with ascending coefficients; SchemaError names the bad field."""
    if not isinstance(row, dict):
        raise SchemaError("record", row)
    for key in FIELDS:
        if key not in row:
            raise SchemaError(key, row)
    label, rg, rq, poly = row["label"], row["g"], row["q"], row["poly"]
    if not isinstance(label, str):
        raise SchemaError("label", row)
    if not isinstance(rg, int) or (g is not None and rg != g):
        raise SchemaError("g", row)
    if not isinstance(rq, int) or (q is not None and rq != q):
        raise SchemaError("q", row)
    if not isinstance(poly, list) or len(poly) != 2 * rg + 1 or any(not isinstance(c, int) for c in poly):
        raise SchemaError("poly", row)
    return InputRecord(id=label, q=rq, m=1, coeffs=tuple(reversed(poly)), label=label)


def fetch_lmfdb(g_range, q_range, cache_dir=None, offline: bool = False, session=None) -> list[InputRecord]:
    return LmfdbClient(cache_dir=cache_dir, offline=offline, session=session).fetch(g_range, q_range)
