"""Append-only JSON-lines result store.

One record per line: ``{"key": ..., "kind": "exact"|"heuristic", "payload": ..., "timestamp": ...}``.
Writes go through a file lock; unreadable lines are moved to ``<path>.quarantine``.
"""

from __future__ import annotations

import json
import os
import time
from pathlib import Path

from filelock import FileLock

ENGINE_VERSION = "1"
ENV_VAR = "TURANLAB_CACHE"


def default_path() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "turanlab" / "results.jsonl"


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def key_text(key: dict) -> str:
    return _dump({**key, "engine": key.get("engine", ENGINE_VERSION)})


class ResultCache:
    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path is not None else default_path()
        self.quarantine = self.path.with_name(self.path.name + ".quarantine")
        self.lock = FileLock(str(self.path) + ".lock")

    # records -------------------------------------------------------------

    def _read(self) -> tuple[list[dict], list[str]]:
        good: list[dict] = []
        bad: list[str] = []
        if not self.path.exists():
            return good, bad
        with open(self.path, encoding="utf-8") as fh:
            for line in fh:
                text = line.rstrip("\n")
                if not text:
                    continue
                try:
                    rec = json.loads(text)
                    if not isinstance(rec, dict) or not {"key", "kind", "payload"} <= rec.keys():
                        raise ValueError("missing fields")
                    if rec["kind"] not in ("exact", "heuristic"):
                        raise ValueError("bad kind")
                except ValueError:
                    bad.append(text)
                    continue
                good.append(rec)
        return good, bad

    def _quarantine(self, good: list[dict], bad: list[str]) -> None:
        with open(self.quarantine, "a", encoding="utf-8") as fh:
            for text in bad:
                fh.write(text + "\n")
        tmp = self.path.with_name(self.path.name + ".tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            for rec in good:
                fh.write(_dump(rec) + "\n")
        os.replace(tmp, self.path)

    def _load(self) -> list[dict]:
        with self.lock:
            good, bad = self._read()
            if bad:
                self._quarantine(good, bad)
        return good

    # public API ----------------------------------------------------------

    def get(self, key: dict) -> dict | None:
        """Best record for ``key``: exact beats heuristic; other engine versions are ignored."""
        kt = key_text(key)
        found = None
        for rec in self._load():
            if _dump(rec["key"]) != kt:
                continue
            if rec["kind"] == "exact":
                return rec
            if found is None:
                found = rec
        return found

    def put(self, key: dict, payload: dict, exact: bool) -> bool:
        """Store a record; returns False when an equivalent or stronger record already exists."""
        kt = key_text(key)
        kind = "exact" if exact else "heuristic"
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.lock:
            good, bad = self._read()
            if bad:
                self._quarantine(good, bad)
            same = [r for r in good if _dump(r["key"]) == kt]
            if any(r["kind"] == "exact" for r in same):
                # exact records are immutable
                return False
            if not exact and any(_dump(r["payload"]) == _dump(payload) for r in same):
                return False
            rec = {"key": json.loads(kt), "kind": kind, "payload": payload, "timestamp": time.time()}
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(_dump(rec) + "\n")
                fh.flush()
                os.fsync(fh.fileno())
        return True

    def records(self) -> list[dict]:
        return self._load()
