"""
On-disk result cache keyed by hashes of canonical request strings.

Entries are JSON files published atomically (write to a temp file in the
cache directory, then rename), so concurrent writers of the same key can
never leave a torn file behind. Corrupt entries read as misses and get
overwritten by the next put.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile


def canonical_request(command: str, params: dict, convention: str) -> str:
    payload = {"command": command, "convention": convention, "params": params}
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def cache_key(request: str) -> str:
    return hashlib.sha256(request.encode("utf-8")).hexdigest()


def _entry_path(cache_dir: str, key: str) -> str:
    return os.path.join(cache_dir, f"{key}.json")


def cache_get(cache_dir: str, key: str) -> dict | None:
    try:
        with open(_entry_path(cache_dir, key), "r", encoding="utf-8") as handle:
            payload = json.load(handle)
    except (OSError, json.JSONDecodeError):
        return None
    return payload if isinstance(payload, dict) else None


def cache_put(cache_dir: str, key: str, payload: dict) -> None:
    os.makedirs(cache_dir, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            json.dump(payload, handle)
        os.replace(tmp_path, _entry_path(cache_dir, key))
    except BaseException:
        try:
            os.unlink(tmp_path)
        except OSError:
            pass
        raise


def atomic_write_text(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        try:
            os.unlink(tmp_path)
        except OSError:
            pass
        raise
