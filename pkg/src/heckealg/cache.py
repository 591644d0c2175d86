"""Append-only JSONL store for computed scalar coefficients.

One record per line: {"version": "1", "key": "...", "value": "..."}.
Keys name the coefficient and its full argument tuple, e.g.

    c:p=2:n=2:M=[1]:N=[1]:L=[1,1]
    a:p=2:n=2:M=[2,1]:N=[1]
    b:p=2:n=2:B=[2]:A=[]

Values are decimal strings.  The file is only ever appended to, so
concurrent readers see a prefix; unreadable lines are skipped with a
warning rather than aborting the run.
"""

from __future__ import annotations

import json
import os
import sys

CACHE_ENV = "HECKE_CACHE_DIR"
CACHE_FILENAME = "hecke-cache.jsonl"
SCHEMA_VERSION = "1"

__all__ = ["CacheStore", "CACHE_ENV", "CACHE_FILENAME", "SCHEMA_VERSION"]


class CacheStore:
    """Reads and appends the coefficient cache under one directory."""

    def __init__(self, directory: str):
        self.directory = directory
        self.path = os.path.join(directory, CACHE_FILENAME)
        self.loaded: dict[str, int] = {}

    def load(self) -> dict[str, int]:
        """Parse the cache file into a key -> value dict.

        Also remembers what was read, so a later flush appends only the
        keys that are genuinely new.
        """
        out: dict[str, int] = {}
        if os.path.exists(self.path):
            with open(self.path, encoding="utf-8") as fh:
                for lineno, line in enumerate(fh, 1):
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        record = json.loads(line)
                        if not isinstance(record, dict):
                            raise ValueError("not an object")
                        version = record.get("version")
                        if version != SCHEMA_VERSION:
                            raise ValueError(f"unsupported version {version!r}")
                        key = record["key"]
                        if not isinstance(key, str):
                            raise ValueError("key is not a string")
                        value = int(record["value"])
                    except (ValueError, KeyError, TypeError) as exc:
                        print(
                            f"warning: {self.path}:{lineno}: skipping bad cache line ({exc})",
                            file=sys.stderr,
                        )
                        continue
                    out[key] = value
        self.loaded = dict(out)
        return dict(out)

    def flush(self, memo: dict[str, int]) -> int:
        """Append every memo entry not seen at load time; returns how many."""
        new = {k: v for k, v in memo.items() if k not in self.loaded}
        if not new:
            return 0
        os.makedirs(self.directory, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as fh:
            for key in sorted(new):
                fh.write(
                    json.dumps(
                        {"version": SCHEMA_VERSION, "key": key, "value": str(new[key])}
                    )
                    + "\n"
                )
        self.loaded.update(new)
        return len(new)
